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

#ifndef BPSDM_PERSUASION_H_
#define BPSDM_PERSUASION_H_

#include <map>
#include <utility>

#include "bpsdm/lp.h"
#include "bpsdm/sequence.h"

namespace bpsdm {

// Expected sender utility F (first) and receiver utility V (second) when
// the receiver follows recommendations: sums of mu * phi * utility over
// terminals. mu need not be a consistent strategy (raw estimates allowed).
std::pair<double, double> expected_utilities(const SequenceIndex& index,
                                             const SeqVector& phi,
                                             const SeqVector& mu);

// Best utility reachable by deviating at rseq = (I,a): the receiver gets
// recommendation a at I, then plays an optimal continuation over the
// subtree of I. Bottom-up dynamic program over the infoset subtree; equals
// the brute-force maximum over deterministic continuations.
double best_spdp_value(const SequenceIndex& index, const SeqVector& phi,
                       const SeqVector& mu, int rseq);

// best_spdp_value minus the on-recommendation utility collected below
// (I,a). Positive means the single-point deviation profits.
double spdp_gain(const SequenceIndex& index, const SeqVector& phi,
                 const SeqVector& mu, int rseq);

// Exact best improvement over all deviation policies: per-sequence gains
// combined by a dynamic program over the infoset forest under the
// at-most-one-deviation-per-path rule. Always >= 0.
double max_deviation_gain(const SequenceIndex& index, const SeqVector& phi,
                          const SeqVector& mu);

// Linear description of the eps-persuasive set: phi flow constraints plus,
// per receiver sequence, dual rows certifying that no single-point
// deviation gains more than eps / |Sigma_r|. The phi variables are the
// first num_phi columns of lp.
struct PersuasivePolytope {
  LinearProgram lp;
  int num_phi = 0;
  double eps = 0.0;
};

PersuasivePolytope build_persuasive_polytope(const SequenceIndex& index,
                                             const SeqVector& mu, double eps);

// argmax of F(phi, mu_obj) over the polytope built from (mu_pers, eps).
// The returned phi is audited: every per-sequence gain under mu_pers must
// stay within eps/|Sigma_r| + 1e-5 or the solve aborts with
// kNumericalFailure. LP infeasibility and unboundedness propagate.
SeqVector solve_constrained_best(const SequenceIndex& index,
                                 const SeqVector& mu_pers, double eps,
                                 const SeqVector& mu_obj);

// Deviation points (0/1 over receiver sequences, at most one per path)
// plus a continuation per active sequence, given as a full-length receiver
// vector lying in X_{r,I}.
struct DeviationPolicy {
  SeqVector omega;
  std::map<int, SeqVector> rho;
};

// Receiver utility when playing the deviation policy against phi, via the
// exact reach-probability expansion. Throws kInvalidArgument if omega
// violates the per-path rule.
double dp_value(const SequenceIndex& index, const SeqVector& phi,
                const SeqVector& mu, const DeviationPolicy& policy);

}  // namespace bpsdm

#endif  // BPSDM_PERSUASION_H_
