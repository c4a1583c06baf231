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
#include "bpsdm/errors.h"
#include "bpsdm/generators.h"
#include "bpsdm/learning.h"
#include "bpsdm/lp.h"
#include "bpsdm/persuasion.h"
#include "bpsdm/sequence.h"
#include "doctest.h"
#include "fixtures.h"

using namespace bpsdm;

TEST_CASE("full feedback cold start") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  FullFeedbackLearner learner(ix, 100, 0.1);
  CHECK(learner.t() == 0);
  CHECK(learner.eps() == 1.0);
  CHECK(learner.beta() == 2.0 * 6 * 5);

  // Uniform product estimate: every root arc gets mass 1/3.
  const SeqVector& mu0 = learner.mu_hat();
  CHECK(mu0[0] == 1.0);
  for (size_t s = 1; s < mu0.size(); ++s) {
    CHECK(mu0[s] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }

  SeqVector phi = learner.select();
  CHECK(satisfies_flow(flow_constraints(ix, Role::kSender), phi.v, 1e-6));
}

TEST_CASE("full feedback radius and estimate updates") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  FullFeedbackLearner learner(ix, 100, 0.1);

  auto vertex = [&](int arc) {
    SeqVector y(Role::kChance, ix.num_seqs(Role::kChance), 0.0);
    y[0] = 1.0;
    y[1 + arc] = 1.0;
    return y;
  };
  learner.update(vertex(0));
  learner.update(vertex(0));
  learner.update(vertex(1));
  learner.update(vertex(2));

  CHECK(learner.t() == 4);
  CHECK(learner.eps() == doctest::Approx(1.059905468701217).epsilon(1e-9));
  CHECK(learner.beta() ==
        doctest::Approx(60.0 * 1.059905468701217).epsilon(1e-9));
  CHECK(learner.mu_hat()[0] == 1.0);
  CHECK(learner.mu_hat()[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(learner.mu_hat()[2] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(learner.mu_hat()[3] == doctest::Approx(0.25).epsilon(1e-15));

  SeqVector frac(Role::kChance, ix.num_seqs(Role::kChance), 0.25);
  frac[0] = 1.0;
  CHECK_THROWS_AS(learner.update(frac), BpsdmError);
}

TEST_CASE("bandit slack formula") {
  CHECK(bandit_beta(4, 2, 4, 100, 0.1, 25, BetaVariant::kProofs) ==
        doctest::Approx(14.080250180484184).epsilon(1e-9));
  CHECK(bandit_beta(4, 2, 4, 100, 0.1, 25, BetaVariant::kPseudocode) ==
        doctest::Approx(28.160500360968367).epsilon(1e-9));
  CHECK(bandit_beta(4, 2, 4, 100, 0.1, 100, BetaVariant::kProofs) <
        bandit_beta(4, 2, 4, 100, 0.1, 25, BetaVariant::kProofs));
}

TEST_CASE("bandit exploration targets the least counted sequence") {
  TreeInstance hard = gen_hard_instance(5, 'i', 0.1);
  SequenceIndex ix = build_index(hard);
  BanditLearner learner(ix, 100, 0.1, 10);
  CHECK(learner.exploring());

  // All counts zero: the tie breaks to sequence 1, which lives at h1,
  // reached by recommending arc a at the root.
  SeqVector phi = learner.select();
  CHECK(phi[0] == 1.0);
  CHECK(phi[1] == 1.0);  // (h0,a)
  CHECK(phi[2] == 0.0);  // (h0,b)
}

TEST_CASE("bandit phase transition and counts") {
  TreeInstance hard = gen_hard_instance(5, 'i', 0.1);
  SequenceIndex ix = build_index(hard);
  const int N = 10;
  BanditLearner learner(ix, 100, 0.1, N);
  CHECK_THROWS_AS(learner.optimistic_prior(), BpsdmError);
  CHECK(learner.eps(0) == 0.0);
  CHECK(learner.eps(1) == kLpInf);

  Rng chance(3), rec(4), fill(5);
  for (int t = 0; t < N; ++t) {
    CHECK(learner.exploring());
    SeqVector phi = learner.select();
    EpisodeOutcome out = play_episode(ix, phi, false, chance, rec);
    learner.update(out.terminal, phi, out.realized_recs, fill);
  }
  CHECK_FALSE(learner.exploring());
  CHECK(learner.t() == N);
  CHECK(learner.counts()[0] == N);
  // Forcing alternates between h1 and h2, and a visit observes both arcs.
  for (size_t s = 1; s < learner.counts().size(); ++s) {
    CHECK(learner.counts()[s] >= N / 4);
  }
  CHECK(learner.beta_frozen() ==
        doctest::Approx(bandit_beta(4, 3, 5, 100, 0.1, N,
                                    BetaVariant::kProofs))
            .epsilon(1e-12));
  CHECK(learner.mu_frozen().v == learner.mu_hat().v);

  // Optimistic prior: componentwise upper bound, no clipping.
  SeqVector opt = learner.optimistic_prior();
  CHECK(opt[0] == 1.0);
  for (size_t s = 1; s < opt.size(); ++s) {
    int c = static_cast<int>(s);
    CHECK(opt[s] == doctest::Approx(learner.mu_hat()[s] + learner.eps(c))
                        .epsilon(1e-12));
    CHECK(opt[s] >= learner.mu_hat()[s]);
  }

  // Phase two keeps the frozen estimate while mu_hat moves on.
  SeqVector frozen = learner.mu_frozen();
  double beta = learner.beta_frozen();
  for (int t = 0; t < 5; ++t) {
    SeqVector phi = learner.select();
    CHECK(satisfies_flow(flow_constraints(ix, Role::kSender), phi.v, 1e-6));
    EpisodeOutcome out = play_episode(ix, phi, false, chance, rec);
    learner.update(out.terminal, phi, out.realized_recs, fill);
  }
  CHECK(learner.mu_frozen().v == frozen.v);
  CHECK(learner.beta_frozen() == beta);
  CHECK(learner.t() == N + 5);
}

TEST_CASE("bandit estimates converge on the forced branch") {
  // Keep forcing toward h1 by exploring long: the (h1,c) estimate must
  // approach 0.6 and the counts reflect every visit.
  TreeInstance hard = gen_hard_instance(5, 'i', 0.1);
  SequenceIndex ix = build_index(hard);
  const int N = 4000;
  BanditLearner learner(ix, 4000, 0.1, N);
  Rng chance(9), rec(10), fill(11);
  for (int t = 0; t < N; ++t) {
    SeqVector phi = learner.select();
    EpisodeOutcome out = play_episode(ix, phi, false, chance, rec);
    learner.update(out.terminal, phi, out.realized_recs, fill);
  }
  // Half the rounds visit h1; 3 sigma of a Bernoulli(0.6) mean over 2000.
  long visits = learner.counts()[1];
  CHECK(visits >= N / 2 - 1);
  double sigma3 = 3.0 * std::sqrt(0.6 * 0.4 / static_cast<double>(visits));
  CHECK(std::abs(learner.mu_hat()[1] - 0.6) <= sigma3);
  CHECK(learner.mu_hat()[1] + learner.mu_hat()[2] ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("forced path scheme pins ancestors and stays uniform elsewhere") {
  TreeInstance tree = bpsdm_tests::fig4_tree();
  SequenceIndex ix = build_index(tree);
  // Target the decision node h2: the root is chance, so nothing upstream
  // needs forcing and every decision node stays uniform.
  int h2 = -1;
  for (size_t d = 0; d < ix.decisions.size(); ++d) {
    if (ix.tree->nodes[ix.decisions[d].node].id == "h2") {
      h2 = ix.decisions[d].node;
    }
  }
  REQUIRE(h2 >= 0);
  SeqVector phi = forced_path_scheme(ix, h2);
  CHECK(satisfies_flow(flow_constraints(ix, Role::kSender), phi.v, 1e-12));
  for (size_t s = 1; s < phi.size(); ++s) {
    CHECK(phi[s] == doctest::Approx(0.5).epsilon(1e-15));
  }

  // On the lower-bound tree, forcing to h1 pins the root recommendation.
  TreeInstance hard = gen_hard_instance(5, 'i', 0.1);
  SequenceIndex hix = build_index(hard);
  int h1 = -1;
  for (size_t c = 0; c < hix.chances.size(); ++c) {
    if (hix.tree->nodes[hix.chances[c].node].id == "h1") {
      h1 = hix.chances[c].node;
    }
  }
  REQUIRE(h1 >= 0);
  SeqVector forced = forced_path_scheme(hix, h1);
  CHECK(forced[1] == 1.0);
  CHECK(forced[2] == 0.0);
}
