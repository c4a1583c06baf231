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

#include <benchmark/benchmark.h>

#include "bpsdm/environment.h"
#include "bpsdm/generators.h"
#include "bpsdm/persuasion.h"
#include "bpsdm/sequence.h"

namespace {

using namespace bpsdm;

TreeInstance bench_tree(int depth) {
  return gen_random_instance(depth, 2, 0.4, 0.3, 12345);
}

void BM_PolytopeSolve(benchmark::State& state) {
  TreeInstance tree = bench_tree(static_cast<int>(state.range(0)));
  SequenceIndex index = build_index(tree);
  SeqVector mu = true_prior(index);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_constrained_best(index, mu, 0.1, mu));
  }
}
BENCHMARK(BM_PolytopeSolve)->Arg(3)->Arg(4)->Arg(5);

void BM_MaxDeviationGain(benchmark::State& state) {
  TreeInstance tree = bench_tree(static_cast<int>(state.range(0)));
  SequenceIndex index = build_index(tree);
  SeqVector mu = true_prior(index);
  SeqVector phi = uniform_sequence_strategy(index, Role::kSender);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_deviation_gain(index, phi, mu));
  }
}
BENCHMARK(BM_MaxDeviationGain)->Arg(3)->Arg(4)->Arg(5);

void BM_Episode(benchmark::State& state) {
  TreeInstance tree = bench_tree(4);
  SequenceIndex index = build_index(tree);
  SeqVector phi = uniform_sequence_strategy(index, Role::kSender);
  Rng chance(1), rec(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(play_episode(index, phi, false, chance, rec));
  }
}
BENCHMARK(BM_Episode);

}  // namespace

BENCHMARK_MAIN();
