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

#ifndef BPSDM_RNG_H_
#define BPSDM_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace bpsdm {

// Seeded PRNG with explicit substream splitting. All draws go through
// hand-rolled transforms (not std:: distributions) so that a given seed
// produces the same stream on every standard library implementation.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Index drawn proportionally to the (nonnegative) weights.
  int categorical(std::span<const double> weights);

  // Standard exponential deviate; building block for simplex sampling.
  double exponential();

  // Independent child stream; deterministic in (parent seed, salt).
  Rng split(uint64_t salt) const { return Rng(mix(seed_ ^ mix(salt ^ 0x9e3779b97f4a7c15ull))); }

 private:
  static uint64_t mix(uint64_t x);

  uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace bpsdm

#endif  // BPSDM_RNG_H_
