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

#ifndef BPSDM_ORACLE_H_
#define BPSDM_ORACLE_H_

#include <vector>

#include "bpsdm/generators.h"
#include "bpsdm/persuasion.h"
#include "bpsdm/sequence.h"

namespace bpsdm {

// All 0/1 points of Phi (sender) or X_r (receiver). With rooted_at set
// (receiver only) restricts to the face x[sigma_r(I)] = 1, the
// deterministic continuations at infoset I. Throws kTooLarge past 1e6
// vertices.
std::vector<SeqVector> enumerate_deterministic(const SequenceIndex& index,
                                               Role role, int rooted_at = -1);

// Every omega in {0,1}^{Sigma_r} with at most one active sequence per
// root-terminal path. Requires |Sigma_r| <= 24.
std::vector<SeqVector> enumerate_omega(const SequenceIndex& index);

// Exact maximum of dp_value(phi, mu, (omega, rho)) - V over all deviation
// policies, by full enumeration: per-sequence continuation optima are at
// vertices and dp_value is additive across active sequences.
double brute_max_deviation_gain(const SequenceIndex& index,
                                const SeqVector& phi, const SeqVector& mu);

// Checks the one-shot persuasion incentive inequalities directly on the
// state-action table: for every recommended action a and alternative a',
// sum_theta prior * phi(theta,a) * uR(theta,a) >= same with a', within tol.
bool brute_classic_persuasive_check(const ClassicBp& bp,
                                    const std::vector<std::vector<double>>& phi,
                                    double tol = 1e-9);

}  // namespace bpsdm

#endif  // BPSDM_ORACLE_H_
