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

#include "bpsdm/sequence.h"

#include <cmath>
#include <unordered_map>

#include "bpsdm/errors.h"

namespace bpsdm {

namespace {

constexpr double kMassTol = 1e-12;

struct Builder {
  const TreeInstance& tree;
  SequenceIndex& ix;
  std::unordered_map<std::string, int> node_pos;
  std::unordered_map<std::string, int> infoset_pos;

  void dfs(int node, int rseq, int sseq, int cseq, std::vector<int>& r_chain,
           std::vector<int>& c_chain,
           std::vector<std::pair<int, int>>& path_decisions) {
    ix.rseq_of_node[node] = rseq;
    ix.sseq_of_node[node] = sseq;
    ix.cseq_of_node[node] = cseq;
    const Node& n = ix.tree->nodes[node];
    switch (n.kind) {
      case NodeKind::kTerminal: {
        int t = static_cast<int>(ix.terminals.size());
        TerminalInfo info;
        info.node = node;
        info.us = tree.us(n.id);
        info.ur = tree.ur(n.id);
        info.rseq = rseq;
        info.sseq = sseq;
        info.cseq = cseq;
        info.r_chain = r_chain;
        info.c_chain = c_chain;
        ix.terminal_of_node[node] = t;
        ix.terminals.push_back(std::move(info));
        for (const auto& [iidx, didx] : path_decisions) {
          ix.infosets[iidx].terminals.emplace_back(t, didx);
        }
        break;
      }
      case NodeKind::kDecision: {
        auto [it, fresh] =
            infoset_pos.emplace(n.infoset, static_cast<int>(ix.infosets.size()));
        int iidx = it->second;
        if (fresh) {
          InfosetInfo info;
          info.id = n.infoset;
          info.parent_rseq = rseq;
          info.parent_infoset =
              rseq == 0 ? -1 : ix.seqs[0][rseq].owner;
          info.child_infosets.resize(n.children.size());
          for (size_t k = 0; k < n.children.size(); ++k) {
            info.actions.push_back(n.children[k].label);
            int s = static_cast<int>(ix.seqs[0].size());
            ix.seqs[0].push_back({iidx, static_cast<int>(k), rseq});
            info.ext_rseq.push_back(s);
          }
          if (rseq != 0) {
            const Sequence& p = ix.seqs[0][rseq];
            ix.infosets[p.owner].child_infosets[p.action].push_back(iidx);
          }
          ix.infosets.push_back(std::move(info));
        }
        int didx = static_cast<int>(ix.decisions.size());
        DecisionInfo dinfo;
        dinfo.node = node;
        dinfo.infoset = iidx;
        dinfo.parent_sseq = sseq;
        for (size_t k = 0; k < n.children.size(); ++k) {
          int s = static_cast<int>(ix.seqs[1].size());
          ix.seqs[1].push_back({didx, static_cast<int>(k), sseq});
          dinfo.ext_sseq.push_back(s);
        }
        ix.decision_of_node[node] = didx;
        ix.decisions.push_back(std::move(dinfo));
        ix.infosets[iidx].members.push_back(didx);
        path_decisions.emplace_back(iidx, didx);
        for (size_t k = 0; k < n.children.size(); ++k) {
          r_chain.push_back(ix.infosets[iidx].ext_rseq[k]);
          dfs(node_pos.at(n.children[k].child),
              ix.infosets[iidx].ext_rseq[k],
              ix.decisions[didx].ext_sseq[k], cseq, r_chain, c_chain,
              path_decisions);
          r_chain.pop_back();
        }
        path_decisions.pop_back();
        break;
      }
      case NodeKind::kChance: {
        int cidx = static_cast<int>(ix.chances.size());
        ChanceInfo cinfo;
        cinfo.node = node;
        cinfo.parent_cseq = cseq;
        for (size_t k = 0; k < n.children.size(); ++k) {
          int s = static_cast<int>(ix.seqs[2].size());
          ix.seqs[2].push_back({cidx, static_cast<int>(k), cseq});
          cinfo.ext_cseq.push_back(s);
        }
        ix.chance_of_node[node] = cidx;
        ix.chances.push_back(std::move(cinfo));
        for (size_t k = 0; k < n.children.size(); ++k) {
          c_chain.push_back(ix.chances[cidx].ext_cseq[k]);
          dfs(node_pos.at(n.children[k].child), rseq, sseq,
              ix.chances[cidx].ext_cseq[k], r_chain, c_chain, path_decisions);
          c_chain.pop_back();
        }
        break;
      }
    }
  }
};

}  // namespace

SequenceIndex build_index(const TreeInstance& tree) {
  SequenceIndex ix;
  ix.tree = &tree;
  size_t n = tree.nodes.size();
  ix.decision_of_node.assign(n, -1);
  ix.chance_of_node.assign(n, -1);
  ix.terminal_of_node.assign(n, -1);
  ix.rseq_of_node.assign(n, 0);
  ix.sseq_of_node.assign(n, 0);
  ix.cseq_of_node.assign(n, 0);
  for (int r = 0; r < 3; ++r) ix.seqs[r].push_back(Sequence{});

  Builder b{tree, ix, {}, {}};
  for (size_t i = 0; i < n; ++i) b.node_pos[tree.nodes[i].id] = static_cast<int>(i);
  std::vector<int> r_chain, c_chain;
  std::vector<std::pair<int, int>> path_decisions;
  b.dfs(b.node_pos.at(tree.root), 0, 0, 0, r_chain, c_chain, path_decisions);

  ix.terminals_with_rseq.resize(ix.seqs[0].size());
  ix.terminals_last_rseq.resize(ix.seqs[0].size());
  for (size_t t = 0; t < ix.terminals.size(); ++t) {
    const TerminalInfo& info = ix.terminals[t];
    if (info.rseq != 0) {
      ix.terminals_last_rseq[info.rseq].push_back(static_cast<int>(t));
    }
    for (int s : info.r_chain) {
      ix.terminals_with_rseq[s].push_back(static_cast<int>(t));
    }
  }
  return ix;
}

bool SequenceIndex::r_precedes(int a, int b) const {
  while (b != 0) {
    if (b == a) return true;
    b = seqs[0][b].parent;
  }
  return a == 0;
}

std::vector<int> SequenceIndex::subtree_infosets(int infoset) const {
  std::vector<int> out = {infoset};
  for (size_t i = 0; i < out.size(); ++i) {
    for (const auto& children : infosets[out[i]].child_infosets) {
      out.insert(out.end(), children.begin(), children.end());
    }
  }
  return out;
}

int SequenceIndex::infoset_index(const std::string& id) const {
  for (size_t i = 0; i < infosets.size(); ++i) {
    if (infosets[i].id == id) return static_cast<int>(i);
  }
  throw BpsdmError(ErrorCode::kInvalidArgument, "unknown infoset", id);
}

std::string SequenceIndex::seq_name(Role r, int i) const {
  if (i == 0) return "@";
  const Sequence& s = seq(r, i);
  switch (r) {
    case Role::kReceiver: {
      const InfosetInfo& info = infosets[s.owner];
      return "(" + info.id + "," + info.actions[s.action] + ")";
    }
    case Role::kSender: {
      const Node& n = tree->nodes[decisions[s.owner].node];
      return "(" + n.id + "," + n.children[s.action].label + ")";
    }
    case Role::kChance: {
      const Node& n = tree->nodes[chances[s.owner].node];
      return "(" + n.id + "," + n.children[s.action].label + ")";
    }
  }
  return "?";
}

std::vector<FlowRow> flow_constraints(const SequenceIndex& index, Role role) {
  std::vector<FlowRow> rows;
  rows.push_back({-1, {0}});
  switch (role) {
    case Role::kReceiver:
      for (const InfosetInfo& i : index.infosets) {
        rows.push_back({i.parent_rseq, i.ext_rseq});
      }
      break;
    case Role::kSender:
      for (const DecisionInfo& d : index.decisions) {
        rows.push_back({d.parent_sseq, d.ext_sseq});
      }
      break;
    case Role::kChance:
      for (const ChanceInfo& c : index.chances) {
        rows.push_back({c.parent_cseq, c.ext_cseq});
      }
      break;
  }
  return rows;
}

std::vector<FlowRow> subproblem_polytope(const SequenceIndex& index,
                                         int infoset) {
  if (infoset < 0 || infoset >= static_cast<int>(index.infosets.size())) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "unknown infoset index");
  }
  auto rows = flow_constraints(index, Role::kReceiver);
  rows.push_back({-1, {index.infosets[infoset].parent_rseq}});
  return rows;
}

bool satisfies_flow(const std::vector<FlowRow>& rows,
                    std::span<const double> x, double tol) {
  for (double xi : x) {
    if (xi < -tol || xi > 1.0 + tol) return false;
  }
  for (const FlowRow& row : rows) {
    if (row.parent == -1) {
      if (std::abs(x[row.children[0]] - 1.0) > tol) return false;
      continue;
    }
    double sum = 0.0;
    for (int c : row.children) sum += x[c];
    if (std::abs(sum - x[row.parent]) > tol) return false;
  }
  return true;
}

int sample_action(const SequenceIndex& index, const SeqVector& phi,
                  int decision, Rng& rng) {
  const DecisionInfo& d = index.decisions[decision];
  double mass = phi[d.parent_sseq];
  if (mass <= kMassTol) {
    throw BpsdmError(ErrorCode::kZeroMassAtNode, "no signaling mass",
                     index.tree->nodes[d.node].id);
  }
  std::vector<double> w(d.ext_sseq.size());
  for (size_t k = 0; k < w.size(); ++k) w[k] = phi[d.ext_sseq[k]];
  return rng.categorical(w);
}

SeqVector complete_deterministic(const SequenceIndex& index,
                                 const SeqVector& phi,
                                 const std::map<int, int>& realized, Rng& rng) {
  SeqVector pi(Role::kSender, index.num_seqs(Role::kSender), 0.0);
  pi[0] = 1.0;
  // decisions is in preorder, so conditionals are fixed before descendants.
  for (size_t d = 0; d < index.decisions.size(); ++d) {
    const DecisionInfo& info = index.decisions[d];
    int arc;
    auto it = realized.find(static_cast<int>(d));
    if (it != realized.end()) {
      arc = it->second;
      if (phi[info.ext_sseq[arc]] <= kMassTol) {
        throw BpsdmError(ErrorCode::kInconsistentSample,
                         "realized recommendation has zero mass",
                         index.tree->nodes[info.node].id);
      }
    } else if (phi[info.parent_sseq] <= kMassTol) {
      arc = 0;
    } else {
      std::vector<double> w(info.ext_sseq.size());
      for (size_t k = 0; k < w.size(); ++k) w[k] = phi[info.ext_sseq[k]];
      arc = rng.categorical(w);
    }
    pi[info.ext_sseq[arc]] = 1.0;
  }
  // Flow forces zeros below a cut branch; preorder guarantees ancestors are
  // cleared before descendants.
  for (const DecisionInfo& info : index.decisions) {
    if (pi[info.parent_sseq] == 0.0) {
      for (int s : info.ext_sseq) pi[s] = 0.0;
    }
  }
  return pi;
}

std::vector<int> sigma_down(const SequenceIndex& index, const SeqVector& pi) {
  if (pi.role != Role::kSender || pi.size() != index.num_seqs(Role::kSender)) {
    throw BpsdmError(ErrorCode::kIndexMismatch, "expected a sender vector");
  }
  for (double x : pi.v) {
    if (std::abs(x) > 1e-9 && std::abs(x - 1.0) > 1e-9) {
      throw BpsdmError(ErrorCode::kInvalidArgument,
                       "sigma_down needs a deterministic scheme");
    }
  }
  std::vector<int> out;
  for (const ChanceInfo& c : index.chances) {
    if (pi[index.sseq_of_node[c.node]] > 0.5) {
      out.insert(out.end(), c.ext_cseq.begin(), c.ext_cseq.end());
    }
  }
  return out;
}

SeqVector draw_chance_vertex(const SequenceIndex& index, Rng& rng) {
  SeqVector y(Role::kChance, index.num_seqs(Role::kChance), 0.0);
  y[0] = 1.0;
  for (const ChanceInfo& c : index.chances) {
    // Draw at every node so the stream does not depend on realized paths.
    int arc = rng.categorical(index.tree->nodes[c.node].chance);
    if (y[c.parent_cseq] > 0.5) y[c.ext_cseq[arc]] = 1.0;
  }
  return y;
}

SeqVector path_vector(const SequenceIndex& index, int terminal) {
  if (terminal < 0 || terminal >= static_cast<int>(index.terminals.size())) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "bad terminal index");
  }
  SeqVector p(Role::kChance, index.num_seqs(Role::kChance), 0.0);
  p[0] = 1.0;
  for (int s : index.terminals[terminal].c_chain) p[s] = 1.0;
  return p;
}

SeqVector true_prior(const SequenceIndex& index) {
  SeqVector mu(Role::kChance, index.num_seqs(Role::kChance), 0.0);
  mu[0] = 1.0;
  for (const ChanceInfo& c : index.chances) {
    const std::vector<double>& probs = index.tree->nodes[c.node].chance;
    for (size_t k = 0; k < c.ext_cseq.size(); ++k) {
      mu[c.ext_cseq[k]] = mu[c.parent_cseq] * probs[k];
    }
  }
  return mu;
}

SeqVector uniform_sequence_strategy(const SequenceIndex& index, Role role) {
  SeqVector x(role, index.num_seqs(role), 0.0);
  x[0] = 1.0;
  switch (role) {
    case Role::kReceiver:
      for (const InfosetInfo& i : index.infosets) {
        for (int s : i.ext_rseq) {
          x[s] = x[i.parent_rseq] / static_cast<double>(i.ext_rseq.size());
        }
      }
      break;
    case Role::kSender:
      for (const DecisionInfo& d : index.decisions) {
        for (int s : d.ext_sseq) {
          x[s] = x[d.parent_sseq] / static_cast<double>(d.ext_sseq.size());
        }
      }
      break;
    case Role::kChance:
      for (const ChanceInfo& c : index.chances) {
        for (int s : c.ext_cseq) {
          x[s] = x[c.parent_cseq] / static_cast<double>(c.ext_cseq.size());
        }
      }
      break;
  }
  return x;
}

}  // namespace bpsdm
