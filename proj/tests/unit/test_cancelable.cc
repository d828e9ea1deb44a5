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
#include <cmath>
#include <map>

#include "doctest.h"

#include "common.h"
#include "securebio/cancelable.h"
#include "securebio/error.h"
#include "securebio/rng.h"

using namespace securebio;
using namespace securebio::cancelable;
using securebio::testing::all_vectors;
using securebio::testing::bv;

namespace {

TransformKey projection(std::vector<std::vector<int>> rows) {
  TransformKey k;
  k.kind = TransformKind::kRandomProjection;
  k.projection = std::move(rows);
  return k;
}

}  // namespace

TEST_SUITE("cancelable") {
  TEST_CASE("identity and salt") {
    CHECK(transform(identity_key(4), bv("1011")) == bv("1011"));
    auto k = make_permute_salt_key({0, 1, 2, 3}, bv("1011"));
    CHECK(transform(k, bv("1011")) == bv("0000"));
    CHECK_THROWS_AS(transform(k, bv("101")), LengthMismatch);
    CHECK_THROWS_AS(make_permute_salt_key({0, 0, 2, 3}, bv("0000")),
                    InvalidArgument);
  }

  TEST_CASE("permute-salt is an invertible isometry") {
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      auto k = random_permute_salt_key(9, rng);
      auto x = rng.bits(9);
      auto y = rng.bits(9);
      CHECK(hamming_distance(transform(k, x), transform(k, y)) ==
            hamming_distance(x, y));
      CHECK(invert(k, transform(k, x)) == x);
    }
  }

  TEST_CASE("projection") {
    auto k = projection({{1, 1, 1, 1}});
    CHECK(transform(k, bv("1101")) == bv("1"));
    CHECK(transform(k, bv("0100")) == bv("0"));
    // Ties (zero dot product) map to 1.
    CHECK(transform(k, bv("1100")) == bv("1"));
    CHECK(transform(projection({{1, -1, 1, -1}}), bv("0101")) == bv("0"));
    CHECK_THROWS_AS(invert(k, bv("1")), Unsupported);
    CHECK_THROWS_AS(projection({{1, 0, 1, 1}}).validate(), InvalidArgument);
    CHECK_THROWS_AS(projection({}).validate(), InvalidArgument);
    CHECK_THROWS_AS(projection({{1, 1}, {1, 1}, {1, 1}}).validate(),
                    InvalidArgument);

    Rng rng(6);
    auto rp = random_projection_key(12, 5, rng);
    CHECK(rp.output_size() == 5);
    CHECK(rp.input_size() == 12);
    // r < n forces collisions.
    std::map<std::string, std::string> seen;
    bool collision = false;
    for (const auto& x : all_vectors(12)) {
      auto [it, fresh] = seen.emplace(transform(rp, x).to_string(), x.to_string());
      if (!fresh) {
        collision = true;
        break;
      }
    }
    CHECK(collision);
  }

  TEST_CASE("decisions match the plaintext matcher") {
    Rng rng(10);
    auto k = random_permute_salt_key(8, rng);
    for (double tau : {0.0, 0.125, 0.25, 0.375}) {
      for (const auto& a : all_vectors(8)) {
        auto t = enroll(k, a, tau);
        for (std::uint64_t j = 0; j < 256; j += 7) {
          auto d = BitVector::FromInteger(j, 8);
          REQUIRE(authenticate(k, t, d).accepted ==
                  within_threshold(hamming_distance(a, d), 8, tau));
        }
      }
    }
  }

  TEST_CASE("wrong key acts like a random probe") {
    Rng rng(2);
    auto k = random_permute_salt_key(8, rng);
    auto a = rng.bits(8);
    auto t = enroll(k, a, 0.125);
    CHECK(authenticate(k, t, a).accepted);
    const int trials = 10000;
    int ok = 0;
    for (int i = 0; i < trials; ++i) {
      ok += authenticate(random_permute_salt_key(8, rng), t, a).accepted;
    }
    const double far = 9.0 / 256.0;  // weight <= 1 out of 2^8
    const double se = std::sqrt(far * (1 - far) / trials);
    CHECK(std::abs(ok / double(trials) - far) < 4 * se);
  }

  TEST_CASE("revocation") {
    Rng rng(31);
    auto k = random_permute_salt_key(16, rng);
    auto a = rng.bits(16);
    CHECK(enroll(k, a, 0.1).distorted == enroll(k, a, 0.1).distorted);
    auto k1 = revoke(k, rng);
    auto k2 = revoke(k, rng);
    CHECK_FALSE(k1 == k2);
    CHECK_FALSE(k1 == k);
    double total = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
      auto fresh = revoke(k, rng);
      total += hamming_distance(enroll(k, a, 0.1).distorted,
                                enroll(fresh, a, 0.1).distorted) /
               16.0;
    }
    CHECK(std::abs(total / trials - 0.5) < 0.02);
    auto rp = random_projection_key(8, 4, rng);
    CHECK(revoke(rp, rng).kind == TransformKind::kRandomProjection);
  }

  TEST_CASE("threshold rule is inclusive") {
    CHECK(within_threshold(1, 4, 0.25));
    CHECK_FALSE(within_threshold(2, 4, 0.25));
    CHECK(within_threshold(0, 4, 0.0));
    CHECK(within_threshold(2, 10, 0.2));
    CHECK_THROWS_AS(enroll(identity_key(4), bv("1011"), 0.5), InvalidArgument);
  }
}
