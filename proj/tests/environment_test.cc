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

#include <cmath>
#include <vector>

#include "bpsdm/environment.h"
#include "bpsdm/generators.h"
#include "bpsdm/oracle.h"
#include "bpsdm/persuasion.h"
#include "bpsdm/sequence.h"
#include "doctest.h"
#include "fixtures.h"

using namespace bpsdm;

namespace {

SeqVector commit_hard(const SequenceIndex& ix, int arc) {
  SeqVector phi(Role::kSender, ix.num_seqs(Role::kSender), 0.0);
  phi[0] = 1.0;
  phi[arc] = 1.0;
  return phi;
}

}  // namespace

TEST_CASE("episode law matches the model") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  SeqVector phi = uniform_sequence_strategy(ix, Role::kSender);
  SeqVector mu = true_prior(ix);

  // Terminal distribution: branch weight times one coin flip.
  std::vector<double> want(ix.num_terminals(), 0.0);
  for (size_t z = 0; z < ix.num_terminals(); ++z) {
    want[z] = mu[ix.terminals[z].cseq] * 0.5;
  }

  const int n = 40000;
  Rng chance(1), rec(2);
  std::vector<double> freq(ix.num_terminals(), 0.0);
  double mean_us = 0.0;
  for (int i = 0; i < n; ++i) {
    EpisodeOutcome out = play_episode(ix, phi, false, chance, rec);
    freq[out.terminal] += 1.0;
    mean_us += out.us;
    CHECK(out.us == ix.terminals[out.terminal].us);
    CHECK(out.ur == ix.terminals[out.terminal].ur);
  }
  for (size_t z = 0; z < freq.size(); ++z) {
    double sigma3 = 3.0 * std::sqrt(want[z] * (1.0 - want[z]) / n);
    CHECK(std::abs(freq[z] / n - want[z]) <= sigma3);
  }
  // E[us] under uniform recommendations is F(phi, mu) = 0.5625.
  CHECK(std::abs(mean_us / n - 0.5625) < 0.01);
}

TEST_CASE("full feedback mode reports a consistent chance vertex") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  SeqVector phi = uniform_sequence_strategy(ix, Role::kSender);
  Rng chance(5), rec(6);
  for (int i = 0; i < 200; ++i) {
    EpisodeOutcome out = play_episode(ix, phi, true, chance, rec);
    CHECK(out.y.size() == ix.num_seqs(Role::kChance));
    CHECK(out.y[0] == 1.0);
    CHECK(satisfies_flow(flow_constraints(ix, Role::kChance), out.y.v,
                         1e-12));
    // The reached terminal lies on the drawn vertex.
    CHECK(out.y[ix.terminals[out.terminal].cseq] == 1.0);
  }
}

TEST_CASE("zero rounds give an empty trace with metadata") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  LearnerConfig cfg;
  cfg.algo = AlgoKind::kFull;
  RegretTrace trace = run_experiment(ix, cfg, 0, 42);
  CHECK(trace.rows.empty());
  CHECK(trace.T == 0);
  CHECK(trace.algo == "full");
  CHECK(trace.seed == 42);
  CHECK(trace.instance_hash == instance_hash(tree));
  CHECK(trace.f_star > 0.0);
}

TEST_CASE("constant policies hit the closed-form regret rates") {
  // Sender regret: committing to a on the favourable instance earns 0
  // while the optimum earns 1, so the regret grows by 1 every round.
  TreeInstance t8 = gen_hard_instance(8, 'j', 0.1);
  SequenceIndex ix8 = build_index(t8);
  const int T = 57;
  LearnerConfig cfg;
  cfg.algo = AlgoKind::kConstant;
  cfg.constant_phi = commit_hard(ix8, 1);
  RegretTrace trace = run_experiment(ix8, cfg, T, 0);
  REQUIRE(trace.rows.size() == static_cast<size_t>(T));
  CHECK(trace.f_star == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(trace.rows.back().cum_sender_regret ==
        doctest::Approx(static_cast<double>(T)).epsilon(1e-7));
  // Recommending a is not persuasive here either: switching to b is worth
  // 0.6 against the on-path 0.5, so the gain is 0.1 per round.
  CHECK(trace.rows.back().cum_receiver_regret ==
        doctest::Approx(0.1 * T).epsilon(1e-9));

  // Receiver regret: committing to b on the adversarial instance leaves a
  // deviation gain of 2 eps per round.
  TreeInstance t5 = gen_hard_instance(5, 'i', 0.1);
  SequenceIndex ix5 = build_index(t5);
  cfg.constant_phi = commit_hard(ix5, 2);
  RegretTrace rt = run_experiment(ix5, cfg, T, 0);
  CHECK(rt.rows.back().cum_receiver_regret ==
        doctest::Approx(0.2 * T).epsilon(1e-9));
  for (const auto& row : rt.rows) {
    CHECK(row.phase == 0);
    CHECK(row.receiver_gain == doctest::Approx(0.2).epsilon(1e-9));
  }
}

TEST_CASE("cumulative columns are prefix sums") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  LearnerConfig cfg;
  cfg.algo = AlgoKind::kBandit;
  cfg.N = 6;
  RegretTrace trace = run_experiment(ix, cfg, 30, 7);
  REQUIRE(trace.rows.size() == 30);
  double s = 0.0, r = 0.0;
  for (size_t i = 0; i < trace.rows.size(); ++i) {
    const auto& row = trace.rows[i];
    CHECK(row.t == static_cast<int>(i) + 1);
    s += trace.f_star - row.sender_value;
    r += row.receiver_gain;
    CHECK(row.cum_sender_regret == doctest::Approx(s).epsilon(1e-12));
    CHECK(row.cum_receiver_regret == doctest::Approx(r).epsilon(1e-12));
    CHECK(row.phase == (row.t <= trace.N ? 1 : 2));
    CHECK(row.receiver_gain >= -1e-12);
  }
  CHECK(trace.N == 6);
}

TEST_CASE("experiments are reproducible and seed sensitive") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  LearnerConfig cfg;
  cfg.algo = AlgoKind::kFull;
  RegretTrace a = run_experiment(ix, cfg, 20, 3);
  RegretTrace b = run_experiment(ix, cfg, 20, 3);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].sender_value == b.rows[i].sender_value);
    CHECK(a.rows[i].cum_receiver_regret == b.rows[i].cum_receiver_regret);
  }

  RegretTrace c = run_experiment(ix, cfg, 20, 4);
  bool any_diff = false;
  for (size_t i = 0; i < a.rows.size(); ++i) {
    any_diff |= a.rows[i].sender_value != c.rows[i].sender_value;
  }
  CHECK(any_diff);
}

TEST_CASE("full feedback learning drives sender regret sublinear") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  LearnerConfig cfg;
  cfg.algo = AlgoKind::kFull;
  RegretTrace trace = run_experiment(ix, cfg, 400, 11);
  // Per-round sender shortfall must fall well below the worst case of 1.
  CHECK(trace.rows.back().cum_sender_regret / 400.0 < 0.25);
  // The estimate converges, so late rounds are near optimal.
  double late = trace.rows[399].cum_sender_regret -
                trace.rows[299].cum_sender_regret;
  CHECK(late / 100.0 < 0.1);
  // At this horizon the slack never binds, so the per-round gain can only
  // reach the unconstrained maximum. The gain is convex in phi, hence its
  // maximum over Phi sits at a deterministic vertex.
  double cap = 0.0;
  SeqVector mu = true_prior(ix);
  for (const SeqVector& v : enumerate_deterministic(ix, Role::kSender)) {
    cap = std::max(cap, max_deviation_gain(ix, v, mu));
  }
  for (const auto& row : trace.rows) {
    CHECK(row.receiver_gain <= cap + 1e-7);
  }
}

TEST_CASE("instance hash separates instances and ignores nothing") {
  TreeInstance a = gen_hard_instance(5, 'i', 0.1);
  TreeInstance b = gen_hard_instance(5, 'j', 0.1);
  CHECK(instance_hash(a) == instance_hash(a));
  CHECK(instance_hash(a) != instance_hash(b));
}
