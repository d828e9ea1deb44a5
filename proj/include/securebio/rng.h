// Copyright 2026 The securebio Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SECUREBIO_RNG_H_
#define SECUREBIO_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "securebio/bitvec.h"

namespace securebio {

/// Seedable simulation RNG (mt19937_64).
///
/// Independent streams are derived from (seed, label, index) so that each
/// operation and each Monte Carlo worker draws from its own sequence. All
/// derived quantities are computed from raw 64-bit outputs, so results are
/// identical across standard libraries. Not for key material.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream for `label` under `seed`, optionally indexed (worker, user, ...).
  static Rng Stream(std::uint64_t seed, std::string_view label,
                    std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }
  bool bit() { return next() >> 63; }
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  BitVector bits(std::size_t n);
  /// Each bit independently 1 with probability p.
  BitVector bernoulli_bits(std::size_t n, double p);
  /// Uniform permutation of {0, ..., n-1} (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive stream seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace securebio

#endif  // SECUREBIO_RNG_H_
