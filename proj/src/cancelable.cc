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

#include "securebio/cancelable.h"

#include <numeric>

namespace securebio::cancelable {

std::size_t TransformKey::input_size() const {
  if (kind == TransformKind::kPermuteSalt) return permutation.size();
  return projection.empty() ? 0 : projection.front().size();
}

std::size_t TransformKey::output_size() const {
  return kind == TransformKind::kPermuteSalt ? permutation.size()
                                             : projection.size();
}

void TransformKey::validate() const {
  if (kind == TransformKind::kPermuteSalt) {
    const std::size_t n = permutation.size();
    require_size(salt, n, "salt");
    std::vector<bool> seen(n, false);
    for (std::size_t p : permutation) {
      if (p >= n || seen[p]) {
        throw InvalidArgument("permutation is not a bijection");
      }
      seen[p] = true;
    }
    return;
  }
  if (projection.empty()) throw InvalidArgument("projection has no rows");
  const std::size_t n = projection.front().size();
  if (projection.size() > n) {
    throw InvalidArgument("projection needs rows <= n");
  }
  for (const auto& row : projection) {
    if (row.size() != n) throw LengthMismatch("ragged projection matrix");
    for (int v : row) {
      if (v != 1 && v != -1) {
        throw InvalidArgument("projection entries must be +1 or -1");
      }
    }
  }
}

TransformKey identity_key(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return make_permute_salt_key(std::move(perm), BitVector(n));
}

TransformKey make_permute_salt_key(std::vector<std::size_t> permutation,
                                   BitVector salt) {
  TransformKey key;
  key.kind = TransformKind::kPermuteSalt;
  key.permutation = std::move(permutation);
  key.salt = std::move(salt);
  key.validate();
  return key;
}

TransformKey random_permute_salt_key(std::size_t n, Rng& rng) {
  auto perm = rng.permutation(n);
  return make_permute_salt_key(std::move(perm), rng.bits(n));
}

TransformKey random_projection_key(std::size_t n, std::size_t rows, Rng& rng) {
  TransformKey key;
  key.kind = TransformKind::kRandomProjection;
  key.projection.assign(rows, std::vector<int>(n));
  for (auto& row : key.projection) {
    for (int& v : row) v = rng.bit() ? 1 : -1;
  }
  key.validate();
  return key;
}

BitVector transform(const TransformKey& key, const BitVector& x) {
  require_size(x, key.input_size(), "transform input");
  if (key.kind == TransformKind::kPermuteSalt) {
    BitVector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      y.set(i, x.get(key.permutation[i]) != key.salt.get(i));
    }
    return y;
  }
  BitVector y(key.projection.size());
  for (std::size_t j = 0; j < key.projection.size(); ++j) {
    long long dot = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      dot += key.projection[j][i] * (x.get(i) ? 1 : -1);
    }
    y.set(j, dot >= 0);
  }
  return y;
}

BitVector invert(const TransformKey& key, const BitVector& y) {
  if (key.kind != TransformKind::kPermuteSalt) {
    throw Unsupported("random projections are not invertible");
  }
  require_size(y, key.permutation.size(), "inverse transform input");
  BitVector x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    x.set(key.permutation[i], y.get(i) != key.salt.get(i));
  }
  return x;
}

bool within_threshold(std::size_t distance, std::size_t length, double tau) {
  if (length == 0) return true;
  return static_cast<double>(distance) <=
         tau * static_cast<double>(length) + 1e-9;
}

CancelableTemplate enroll(const TransformKey& key, const BitVector& a,
                          double tau) {
  if (tau < 0 || tau >= 0.5) throw InvalidArgument("tau must lie in [0, 0.5)");
  return CancelableTemplate{transform(key, a), tau};
}

MatchResult authenticate(const TransformKey& presented,
                         const CancelableTemplate& stored, const BitVector& d) {
  const BitVector y = transform(presented, d);
  require_size(y, stored.distorted.size(), "distorted probe");
  const std::size_t dist = hamming_distance(y, stored.distorted);
  return MatchResult{within_threshold(dist, y.size(), stored.tau), dist};
}

TransformKey revoke(const TransformKey& old_key, Rng& rng) {
  if (old_key.kind == TransformKind::kPermuteSalt) {
    return random_permute_salt_key(old_key.input_size(), rng);
  }
  return random_projection_key(old_key.input_size(), old_key.output_size(),
                               rng);
}

}  // namespace securebio::cancelable
