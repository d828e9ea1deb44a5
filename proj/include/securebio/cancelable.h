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

#ifndef SECUREBIO_CANCELABLE_H_
#define SECUREBIO_CANCELABLE_H_

#include <cstdint>
#include <vector>

#include "securebio/bitvec.h"
#include "securebio/rng.h"

// Keyed, revocable distortions of feature vectors. Matching happens between
// distorted vectors; re-enrolling under a fresh key cancels the old template.
namespace securebio::cancelable {

enum class TransformKind { kPermuteSalt, kRandomProjection };

/// Secret transform parameters held by the user.
///
/// kPermuteSalt: y[i] = x[perm[i]] ^ salt[i]. A Hamming isometry.
/// kRandomProjection: y[j] = 1 iff sum_i proj[j][i] * (2 x[i] - 1) >= 0,
/// with proj entries in {-1, +1}. Many-to-one when rows < n.
struct TransformKey {
  TransformKind kind = TransformKind::kPermuteSalt;
  std::vector<std::size_t> permutation;
  BitVector salt;
  std::vector<std::vector<int>> projection;

  /// Input length n.
  std::size_t input_size() const;
  /// Output length: n for permute-salt, the row count for projections.
  std::size_t output_size() const;
  void validate() const;

  friend bool operator==(const TransformKey&, const TransformKey&) = default;
};

TransformKey identity_key(std::size_t n);
TransformKey make_permute_salt_key(std::vector<std::size_t> permutation,
                                   BitVector salt);
TransformKey random_permute_salt_key(std::size_t n, Rng& rng);
TransformKey random_projection_key(std::size_t n, std::size_t rows, Rng& rng);

BitVector transform(const TransformKey& key, const BitVector& x);

/// Inverse of a permute-salt transform. Throws Unsupported for projections.
BitVector invert(const TransformKey& key, const BitVector& y);

struct CancelableTemplate {
  BitVector distorted;
  double tau = 0.0;
};

struct MatchResult {
  bool accepted = false;
  std::size_t distance = 0;  // Hamming distance in the distorted domain
};

CancelableTemplate enroll(const TransformKey& key, const BitVector& a,
                          double tau);

/// Accepts iff d_H(T_L(d), stored) / |stored| <= tau.
MatchResult authenticate(const TransformKey& presented,
                         const CancelableTemplate& stored, const BitVector& d);

/// Fresh key of the same kind and shape, independent of `old_key`.
TransformKey revoke(const TransformKey& old_key, Rng& rng);

/// Decision rule shared by the matchers: distance / length <= tau, with a
/// small tolerance so that tau * length landing on an integer is inclusive.
bool within_threshold(std::size_t distance, std::size_t length, double tau);

}  // namespace securebio::cancelable

#endif  // SECUREBIO_CANCELABLE_H_
