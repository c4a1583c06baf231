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

#ifndef BPSDM_LEARNING_H_
#define BPSDM_LEARNING_H_

#include <map>
#include <vector>

#include "bpsdm/rng.h"
#include "bpsdm/sequence.h"

namespace bpsdm {

// Full-feedback learner: running mean of chance vertices, shrinking
// confidence radius, and an optimal signaling scheme constrained to the
// persuasive polytope at slack beta_t = 2|Z||Sigma_r| eps_t.
class FullFeedbackLearner {
 public:
  FullFeedbackLearner(const SequenceIndex& index, int T, double delta);

  // Scheme for the upcoming round. Before any sample the estimate is the
  // uniform product and beta makes the polytope all of Phi.
  SeqVector select() const;
  void update(const SeqVector& y);

  int t() const { return t_; }
  double eps() const;
  double beta() const;
  const SeqVector& mu_hat() const { return mu_hat_; }

 private:
  const SequenceIndex* index_;
  int T_;
  double delta_;
  int t_ = 0;  // completed rounds
  std::vector<double> sums_;
  SeqVector mu_hat_;
};

// Which coefficient the bandit slack uses; the pseudocode and the analysis
// of the algorithm disagree, so both are available.
enum class BetaVariant { kProofs, kPseudocode };

// Slack formula 2|Z| k sqrt(|Sigma_c| log(4 T |Sigma_c| / delta) / (2t))
// with k = |Sigma_r| (kProofs) or k = |Sigma_c| (kPseudocode).
double bandit_beta(int num_terminals, int num_rseqs, int num_cseqs, int T,
                   double delta, int t, BetaVariant variant);

// Bandit-feedback learner. Phase one (t <= N) forces play toward the
// least-counted chance sequence; phase two solves against the polytope
// frozen at (mu_hat_N, beta_N) with the optimistic prior as objective.
class BanditLearner {
 public:
  BanditLearner(const SequenceIndex& index, int T, double delta, int N,
                BetaVariant variant = BetaVariant::kProofs);

  SeqVector select() const;

  // Feeds the reached terminal back. phi must be the scheme returned by
  // select for this round; realized maps on-path decision-info indices to
  // the recommended arc; rng drives the off-path completion.
  void update(int terminal, const SeqVector& phi,
              const std::map<int, int>& realized, Rng& rng);

  SeqVector optimistic_prior() const;

  int t() const { return t_; }
  int N() const { return N_; }
  bool exploring() const { return t_ < N_; }
  const std::vector<long>& counts() const { return counts_; }
  const SeqVector& mu_hat() const { return mu_hat_; }
  const SeqVector& mu_frozen() const { return mu_frozen_; }
  double beta_frozen() const { return beta_frozen_; }
  double eps(int cseq) const;

 private:
  const SequenceIndex* index_;
  int T_;
  double delta_;
  int N_;
  BetaVariant variant_;
  int t_ = 0;
  std::vector<long> counts_;
  std::vector<double> sums_;
  SeqVector mu_hat_;
  SeqVector mu_frozen_;
  double beta_frozen_ = 0.0;
};

// Scheme that forces every recommendation along the path to the target
// decision or chance node and plays uniformly elsewhere; the phase-one
// exploration schemes of the bandit learner.
SeqVector forced_path_scheme(const SequenceIndex& index, int node);

}  // namespace bpsdm

#endif  // BPSDM_LEARNING_H_
