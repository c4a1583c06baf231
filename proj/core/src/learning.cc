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

#include "bpsdm/learning.h"

#include <algorithm>
#include <cmath>

#include "bpsdm/errors.h"
#include "bpsdm/persuasion.h"

namespace bpsdm {

FullFeedbackLearner::FullFeedbackLearner(const SequenceIndex& index, int T,
                                         double delta)
    : index_(&index), T_(T), delta_(delta) {
  if (T < 1 || delta <= 0.0 || delta >= 1.0) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "need T >= 1, delta in (0,1)");
  }
  sums_.assign(index.num_seqs(Role::kChance), 0.0);
  mu_hat_ = uniform_sequence_strategy(index, Role::kChance);
}

double FullFeedbackLearner::eps() const {
  if (t_ == 0) return 1.0;
  double nc = static_cast<double>(index_->num_seqs(Role::kChance));
  return std::sqrt(std::log(2.0 * T_ * nc / delta_) / (2.0 * t_));
}

double FullFeedbackLearner::beta() const {
  return 2.0 * static_cast<double>(index_->num_terminals()) *
         static_cast<double>(index_->num_seqs(Role::kReceiver)) * eps();
}

SeqVector FullFeedbackLearner::select() const {
  return solve_constrained_best(*index_, mu_hat_, beta(), mu_hat_);
}

void FullFeedbackLearner::update(const SeqVector& y) {
  if (y.role != Role::kChance || y.size() != sums_.size()) {
    throw BpsdmError(ErrorCode::kIndexMismatch, "expected a chance vertex");
  }
  for (double v : y.v) {
    if (v != 0.0 && v != 1.0) {
      throw BpsdmError(ErrorCode::kInvalidArgument, "y must be a 0/1 vertex");
    }
  }
  auto rows = flow_constraints(*index_, Role::kChance);
  if (!satisfies_flow(rows, y.v)) {
    throw BpsdmError(ErrorCode::kInvalidArgument, "y violates chance flow");
  }
  ++t_;
  for (size_t i = 0; i < sums_.size(); ++i) {
    sums_[i] += y[i];
    mu_hat_[i] = sums_[i] / static_cast<double>(t_);
  }
}

double bandit_beta(int num_terminals, int num_rseqs, int num_cseqs, int T,
                   double delta, int t, BetaVariant variant) {
  double k = variant == BetaVariant::kProofs ? num_rseqs : num_cseqs;
  double nc = static_cast<double>(num_cseqs);
  return 2.0 * num_terminals * k *
         std::sqrt(nc * std::log(4.0 * T * nc / delta) / (2.0 * t));
}

BanditLearner::BanditLearner(const SequenceIndex& index, int T, double delta,
                             int N, BetaVariant variant)
    : index_(&index), T_(T), delta_(delta), N_(N), variant_(variant) {
  if (T < 1 || delta <= 0.0 || delta >= 1.0 || N < 1 || N > T) {
    throw BpsdmError(ErrorCode::kInvalidArgument,
                     "need T >= 1, delta in (0,1), N in [1,T]");
  }
  size_t nc = index.num_seqs(Role::kChance);
  counts_.assign(nc, 0);
  sums_.assign(nc, 0.0);
  mu_hat_ = SeqVector(Role::kChance, nc, 0.0);
  mu_hat_[0] = 1.0;
}

double BanditLearner::eps(int cseq) const {
  if (cseq == 0) return 0.0;
  if (counts_[cseq] == 0) return kLpInf;
  double nc = static_cast<double>(index_->num_seqs(Role::kChance));
  return std::sqrt(std::log(4.0 * T_ * nc / delta_) /
                   (2.0 * static_cast<double>(counts_[cseq])));
}

SeqVector BanditLearner::optimistic_prior() const {
  SeqVector mu(Role::kChance, mu_hat_.size(), 0.0);
  mu[0] = 1.0;
  for (size_t s = 1; s < mu.size(); ++s) {
    if (counts_[s] == 0) {
      throw BpsdmError(ErrorCode::kInvalidArgument,
                       "optimistic prior before full exploration");
    }
    mu[s] = mu_hat_[s] + eps(static_cast<int>(s));
  }
  return mu;
}

SeqVector BanditLearner::select() const {
  if (t_ < N_) {
    // Least-counted chance sequence, lowest index on ties; the empty
    // sequence is observed every round and never targeted.
    int target = 1;
    for (size_t s = 2; s < counts_.size(); ++s) {
      if (counts_[s] < counts_[target]) target = static_cast<int>(s);
    }
    const Sequence& seq = index_->seq(Role::kChance, target);
    return forced_path_scheme(*index_, index_->chances[seq.owner].node);
  }
  return solve_constrained_best(*index_, mu_frozen_, beta_frozen_,
                                optimistic_prior());
}

void BanditLearner::update(int terminal, const SeqVector& phi,
                           const std::map<int, int>& realized, Rng& rng) {
  SeqVector p = path_vector(*index_, terminal);
  SeqVector pi = complete_deterministic(*index_, phi, realized, rng);
  std::vector<int> down = sigma_down(*index_, pi);
  std::vector<char> in_down(counts_.size(), 0);
  in_down[0] = 1;
  for (int s : down) in_down[s] = 1;
  for (size_t s = 0; s < counts_.size(); ++s) {
    if (p[s] == 1.0 && !in_down[s]) {
      throw BpsdmError(ErrorCode::kInconsistentSample,
                       "observed path leaves the prescribed set",
                       index_->seq_name(Role::kChance, static_cast<int>(s)));
    }
    if (in_down[s]) {
      ++counts_[s];
      sums_[s] += p[s];
      mu_hat_[s] = sums_[s] / static_cast<double>(counts_[s]);
    }
  }
  ++t_;
  if (t_ == N_) {
    mu_frozen_ = mu_hat_;
    beta_frozen_ = bandit_beta(
        static_cast<int>(index_->num_terminals()),
        static_cast<int>(index_->num_seqs(Role::kReceiver)),
        static_cast<int>(index_->num_seqs(Role::kChance)), T_, delta_, N_,
        variant_);
  }
}

SeqVector forced_path_scheme(const SequenceIndex& index, int node) {
  // Decisions on the root path, recovered from the sender sequence chain.
  std::vector<int> forced_arc(index.decisions.size(), -1);
  int s = index.sseq_of_node[node];
  while (s != 0) {
    const Sequence& seq = index.seq(Role::kSender, s);
    forced_arc[seq.owner] = seq.action;
    s = seq.parent;
  }
  SeqVector phi(Role::kSender, index.num_seqs(Role::kSender), 0.0);
  phi[0] = 1.0;
  for (size_t d = 0; d < index.decisions.size(); ++d) {
    const DecisionInfo& info = index.decisions[d];
    double mass = phi[info.parent_sseq];
    if (forced_arc[d] >= 0) {
      phi[info.ext_sseq[forced_arc[d]]] = mass;
    } else {
      double share = mass / static_cast<double>(info.ext_sseq.size());
      for (int e : info.ext_sseq) phi[e] = share;
    }
  }
  return phi;
}

}  // namespace bpsdm
