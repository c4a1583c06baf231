// Copyright 2026 The BPSDM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BPSDM_SEQUENCE_H_
#define BPSDM_SEQUENCE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bpsdm/rng.h"
#include "bpsdm/tree.h"

namespace bpsdm {

enum class Role { kReceiver = 0, kSender = 1, kChance = 2 };

// One (owner, action) pair. Index 0 of every role's list is the empty
// sequence with owner = action = parent = -1. For the receiver the owner is
// an infoset index; for sender and chance it is a per-role node-info index.
struct Sequence {
  int owner = -1;
  int action = -1;
  int parent = 0;  // sequence index of the owner's own sequence
};

struct DecisionInfo {
  int node = -1;           // index into tree.nodes
  int infoset = -1;        // index into SequenceIndex::infosets
  int parent_sseq = 0;     // sigma_s of the node
  std::vector<int> ext_sseq;  // sender sequence per arc
};

struct ChanceInfo {
  int node = -1;
  int parent_cseq = 0;
  std::vector<int> ext_cseq;
};

struct InfosetInfo {
  std::string id;
  std::vector<int> members;   // DecisionInfo indices, preorder
  int parent_rseq = 0;        // sigma_r of the infoset
  int parent_infoset = -1;    // infoset owning parent_rseq, -1 at root level
  std::vector<std::string> actions;
  std::vector<int> ext_rseq;  // receiver sequence per action
  std::vector<std::vector<int>> child_infosets;  // C(I,a) per action
  // Z(I) with the member realizing h_I(z): (terminal index, DecisionInfo idx).
  std::vector<std::pair<int, int>> terminals;
};

struct TerminalInfo {
  int node = -1;
  double us = 0.0;
  double ur = 0.0;
  int rseq = 0;
  int sseq = 0;
  int cseq = 0;
  std::vector<int> r_chain;  // receiver sequences on the path, excluding 0
  std::vector<int> c_chain;  // chance sequences on the path, excluding 0
};

// All three sequence sets with every cross-reference the solvers need.
// Ordering is the preorder of the tree; immutable once built. Keeps a
// pointer to the tree, which must outlive the index.
struct SequenceIndex {
  const TreeInstance* tree = nullptr;

  std::vector<Sequence> seqs[3];  // indexed by Role
  std::vector<DecisionInfo> decisions;
  std::vector<ChanceInfo> chances;
  std::vector<InfosetInfo> infosets;
  std::vector<TerminalInfo> terminals;

  std::vector<int> decision_of_node;  // -1 where not applicable
  std::vector<int> chance_of_node;
  std::vector<int> terminal_of_node;
  // Sequence leading to each node, per role.
  std::vector<int> rseq_of_node;
  std::vector<int> sseq_of_node;
  std::vector<int> cseq_of_node;

  // Per receiver sequence: terminals z with sigma on the path of z (Z of
  // sigma), and terminals with sigma_r(z) = sigma exactly.
  std::vector<std::vector<int>> terminals_with_rseq;
  std::vector<std::vector<int>> terminals_last_rseq;

  size_t num_seqs(Role r) const { return seqs[static_cast<int>(r)].size(); }
  const Sequence& seq(Role r, int i) const {
    return seqs[static_cast<int>(r)][i];
  }
  size_t num_terminals() const { return terminals.size(); }

  // True iff a precedes (or equals) b in the receiver sequence order.
  bool r_precedes(int a, int b) const;

  // Infosets of the sub-forest rooted at `infoset`, preorder, root first.
  std::vector<int> subtree_infosets(int infoset) const;

  int infoset_index(const std::string& id) const;  // throws if unknown
  std::string seq_name(Role r, int i) const;       // "(owner,action)" or "@"
};

struct SeqVector {
  Role role = Role::kReceiver;
  std::vector<double> v;

  SeqVector() = default;
  SeqVector(Role r, size_t n, double fill = 0.0) : role(r), v(n, fill) {}
  double& operator[](size_t i) { return v[i]; }
  double operator[](size_t i) const { return v[i]; }
  size_t size() const { return v.size(); }
};

SequenceIndex build_index(const TreeInstance& tree);

// One flow equality x[parent] = sum x[children]; parent == -1 encodes the
// normalization x[children[0]] = 1.
struct FlowRow {
  int parent = -1;
  std::vector<int> children;
};

// Equalities defining X_r (receiver), Phi (sender) or X_c (chance),
// together with implicit bounds [0,1]. First row is the normalization.
std::vector<FlowRow> flow_constraints(const SequenceIndex& index, Role role);

// Constraints of X_{r,I}: the receiver flow rows plus the pin
// x[sigma_r(I)] = 1 (appended last).
std::vector<FlowRow> subproblem_polytope(const SequenceIndex& index,
                                         int infoset);

bool satisfies_flow(const std::vector<FlowRow>& rows,
                    std::span<const double> x, double tol = 1e-9);

// Draws an arc index at decision node h with probability
// phi[(h,a)] / phi[sigma_s(h)]. Throws kZeroMassAtNode when the conditional
// is undefined.
int sample_action(const SequenceIndex& index, const SeqVector& phi,
                  int decision, Rng& rng);

// Extends the episode's realized on-path recommendations to a full vertex of
// Phi: realized nodes keep their action, every other decision node samples
// from phi's conditionals top-down (first action where phi has no mass).
// The marginal law of the result equals vertex sampling from phi.
SeqVector complete_deterministic(const SequenceIndex& index,
                                 const SeqVector& phi,
                                 const std::map<int, int>& realized, Rng& rng);

// Chance sequences (h,a) with pi[sigma_s(h)] = 1; excludes the empty
// sequence. Throws kInvalidArgument unless pi is a vertex of Phi.
std::vector<int> sigma_down(const SequenceIndex& index, const SeqVector& pi);

// Vertex of X_c: one outcome per chance node, drawn independently from the
// tree's distributions. E[y[sigma]] equals the sequence-form prior.
SeqVector draw_chance_vertex(const SequenceIndex& index, Rng& rng);

// p[sigma] = 1 iff sigma lies on the root-terminal path; p[0] = 1.
SeqVector path_vector(const SequenceIndex& index, int terminal);

// Sequence-form products of the chance distributions (mu-star).
SeqVector true_prior(const SequenceIndex& index);

// Sequence-form vector of the uniform behavioral strategy for the role.
SeqVector uniform_sequence_strategy(const SequenceIndex& index, Role role);

}  // namespace bpsdm

#endif  // BPSDM_SEQUENCE_H_
