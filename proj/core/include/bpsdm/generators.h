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

#ifndef BPSDM_GENERATORS_H_
#define BPSDM_GENERATORS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bpsdm/tree.h"

namespace bpsdm {

// The four-terminal lower-bound tree: decision root h0 (actions a, b),
// chance node h1 (outcomes c, d) under a, chance node h2 (outcomes e, f)
// under b, terminals z1..z4. Receiver utilities u_r(z1)=u_r(z3)=1, others 0.
//
// theorem 5 (variant i): chance at h1 = (1/2+eps, 1/2-eps), h2 = (1/2-eps,
// 1/2+eps); sender utilities all 0. Variant j swaps the two distributions.
// theorem 8: h1 uniform; variant i: h2 = (1/2-eps, 1/2+eps); variant j:
// h2 = (1/2+eps, 1/2-eps); sender utilities u_s(z3)=u_s(z4)=1.
TreeInstance gen_hard_instance(int theorem, char variant, double eps);

// One-shot persuasion problem: states theta with the given prior, one
// receiver infoset over all states, utility matrices indexed [state][action].
struct ClassicBp {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<double> prior;
  std::vector<std::vector<double>> us;  // |states| x |actions|
  std::vector<std::vector<double>> ur;
};

// Chance root h0 drawing the state, one decision node per state sharing a
// single infoset I, terminal z_{i,j} per (state i, action j). Node ids:
// "h0", "d_<state>", "z_<state>_<action>".
TreeInstance gen_from_classic_bp(const ClassicBp& bp);

// Random valid instance. Level k of the tree (k < depth) holds internal
// nodes, each chance with probability chance_fraction; decision nodes whose
// ancestor (infoset, action) sequences coincide are merged into a shared
// infoset with probability infoset_merge_prob per candidate. Chance weights
// are Dirichlet(1) draws; utilities uniform in [0,1]. Deterministic in seed.
TreeInstance gen_random_instance(int depth, int branching,
                                 double chance_fraction,
                                 double infoset_merge_prob, uint64_t seed);

}  // namespace bpsdm

#endif  // BPSDM_GENERATORS_H_
