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

#ifndef BPSDM_ENVIRONMENT_H_
#define BPSDM_ENVIRONMENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bpsdm/learning.h"
#include "bpsdm/sequence.h"

namespace bpsdm {

struct EpisodeOutcome {
  int terminal = -1;                 // terminal index
  std::map<int, int> realized_recs;  // decision-info index -> arc taken
  std::map<int, int> chance_outcomes;  // chance-info index -> arc (visited)
  double us = 0.0;
  double ur = 0.0;
  SeqVector y;  // populated in full-feedback mode
};

// One run of the interaction protocol: the receiver follows the sampled
// recommendations, chance plays the tree's distributions. Full mode
// pre-draws the whole chance vertex; bandit mode samples lazily with the
// same law. Chance and recommendation draws come from separate streams.
EpisodeOutcome play_episode(const SequenceIndex& index, const SeqVector& phi,
                            bool full_feedback, Rng& chance_rng, Rng& rec_rng);

enum class AlgoKind { kFull, kBandit, kConstant };

struct LearnerConfig {
  AlgoKind algo = AlgoKind::kFull;
  double delta = 0.05;
  // Bandit exploration budget: explicit N wins; otherwise floor(T^alpha).
  int N = 0;
  double alpha = 2.0 / 3.0;
  BetaVariant variant = BetaVariant::kProofs;
  SeqVector constant_phi;  // for kConstant
};

struct RegretTrace {
  struct Row {
    int t = 0;
    double sender_value = 0.0;   // F(phi_t, mu-star)
    double receiver_gain = 0.0;  // exact best deviation gain
    double cum_sender_regret = 0.0;
    double cum_receiver_regret = 0.0;
    int phase = 0;  // bandit: 1 exploration, 2 exploitation; otherwise 0
  };
  std::vector<Row> rows;

  std::string algo;
  int T = 0;
  int N = 0;
  double alpha = 0.0;
  double delta = 0.0;
  uint64_t seed = 0;
  uint64_t instance_hash = 0;
  double f_star = 0.0;  // offline optimum under the true prior
};

// Runs the protocol for T rounds. Regrets are exact expectations under the
// true prior, so traces are deterministic given (instance, config, seed).
RegretTrace run_experiment(const SequenceIndex& index,
                           const LearnerConfig& config, int T, uint64_t seed);

uint64_t instance_hash(const TreeInstance& tree);

}  // namespace bpsdm

#endif  // BPSDM_ENVIRONMENT_H_
