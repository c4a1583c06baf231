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

#include "bpsdm/environment.h"

#include <cmath>

#include "bpsdm/errors.h"
#include "bpsdm/io.h"
#include "bpsdm/persuasion.h"

namespace bpsdm {

EpisodeOutcome play_episode(const SequenceIndex& index, const SeqVector& phi,
                            bool full_feedback, Rng& chance_rng,
                            Rng& rec_rng) {
  EpisodeOutcome out;
  if (full_feedback) out.y = draw_chance_vertex(index, chance_rng);

  const TreeInstance& tree = *index.tree;
  int node = static_cast<int>(&tree.at(tree.root) - tree.nodes.data());
  while (true) {
    const Node& n = tree.nodes[node];
    if (n.kind == NodeKind::kTerminal) {
      out.terminal = index.terminal_of_node[node];
      out.us = index.terminals[out.terminal].us;
      out.ur = index.terminals[out.terminal].ur;
      return out;
    }
    int arc;
    if (n.kind == NodeKind::kChance) {
      int cidx = index.chance_of_node[node];
      if (full_feedback) {
        const ChanceInfo& c = index.chances[cidx];
        arc = -1;
        for (size_t k = 0; k < c.ext_cseq.size(); ++k) {
          if (out.y[c.ext_cseq[k]] == 1.0) { arc = static_cast<int>(k); break; }
        }
        if (arc < 0) {
          throw BpsdmError(ErrorCode::kInconsistentSample,
                           "vertex has no outcome on the path", n.id);
        }
      } else {
        arc = chance_rng.categorical(n.chance);
      }
      out.chance_outcomes[cidx] = arc;
    } else {
      int didx = index.decision_of_node[node];
      arc = sample_action(index, phi, didx, rec_rng);
      out.realized_recs[didx] = arc;
    }
    node = static_cast<int>(&tree.at(n.children[arc].child) - tree.nodes.data());
  }
}

uint64_t instance_hash(const TreeInstance& tree) {
  std::string text = serialize_instance(tree);
  uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RegretTrace run_experiment(const SequenceIndex& index,
                           const LearnerConfig& config, int T, uint64_t seed) {
  if (T < 0) throw BpsdmError(ErrorCode::kInvalidArgument, "T must be >= 0");
  RegretTrace trace;
  trace.T = T;
  trace.delta = config.delta;
  trace.seed = seed;
  trace.instance_hash = instance_hash(*index.tree);

  SeqVector mu_star = true_prior(index);
  SeqVector phi_star = solve_constrained_best(index, mu_star, 0.0, mu_star);
  trace.f_star = expected_utilities(index, phi_star, mu_star).first;
  if (T == 0) {
    trace.algo = config.algo == AlgoKind::kFull
                     ? "full"
                     : (config.algo == AlgoKind::kBandit ? "bandit" : "constant");
    return trace;
  }

  Rng root(seed);
  Rng chance_rng = root.split(1);
  Rng rec_rng = root.split(2);
  Rng learner_rng = root.split(3);

  int N = 0;
  FullFeedbackLearner* full = nullptr;
  BanditLearner* bandit = nullptr;
  FullFeedbackLearner full_state(index, std::max(T, 1), config.delta);
  if (config.algo == AlgoKind::kFull) {
    trace.algo = "full";
    full = &full_state;
  } else if (config.algo == AlgoKind::kBandit) {
    trace.algo = "bandit";
    N = config.N > 0
            ? config.N
            : static_cast<int>(std::floor(std::pow(static_cast<double>(T),
                                                   config.alpha)));
    if (N < 1) N = 1;
    if (N > T) N = T;
    trace.N = N;
    trace.alpha = config.alpha;
  } else {
    trace.algo = "constant";
    if (config.constant_phi.size() != index.num_seqs(Role::kSender)) {
      throw BpsdmError(ErrorCode::kIndexMismatch, "constant_phi size");
    }
  }
  BanditLearner bandit_state(index, std::max(T, 1), config.delta,
                             std::max(N, 1), config.variant);
  if (config.algo == AlgoKind::kBandit) bandit = &bandit_state;

  double cum_s = 0.0, cum_r = 0.0;
  double const_value = 0.0, const_gain = 0.0;
  if (config.algo == AlgoKind::kConstant) {
    const_value = expected_utilities(index, config.constant_phi, mu_star).first;
    const_gain = max_deviation_gain(index, config.constant_phi, mu_star);
  }
  trace.rows.reserve(T);
  for (int t = 1; t <= T; ++t) {
    SeqVector phi;
    int phase = 0;
    double value, gain;
    if (full != nullptr) {
      phi = full->select();
    } else if (bandit != nullptr) {
      phase = bandit->exploring() ? 1 : 2;
      phi = bandit->select();
    } else {
      phi = config.constant_phi;
    }
    if (config.algo == AlgoKind::kConstant) {
      value = const_value;
      gain = const_gain;
    } else {
      value = expected_utilities(index, phi, mu_star).first;
      gain = max_deviation_gain(index, phi, mu_star);
    }
    EpisodeOutcome ep =
        play_episode(index, phi, full != nullptr, chance_rng, rec_rng);
    if (full != nullptr) {
      full->update(ep.y);
    } else if (bandit != nullptr) {
      bandit->update(ep.terminal, phi, ep.realized_recs, learner_rng);
    }
    cum_s += trace.f_star - value;
    cum_r += gain;
    trace.rows.push_back({t, value, gain, cum_s, cum_r, phase});
  }
  return trace;
}

}  // namespace bpsdm
