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
#include <set>

#include "doctest.h"

#include "common.h"
#include "securebio/cancelable.h"
#include "securebio/error.h"
#include "securebio/rng.h"
#include "securebio/sketch.h"

using namespace securebio;
using namespace securebio::sketch;
using securebio::testing::all_vectors;
using securebio::testing::bv;
using securebio::testing::code_of;

TEST_SUITE("sketch") {
  TEST_CASE("keyless enrollment stores the syndrome") {
    SketchSystem sys(code_of(securebio::testing::kH1), 0.0);
    CHECK(enroll(sys, bv("1011")).syndrome.to_string() == "10");
    CHECK_THROWS_AS(enroll(sys, bv("101")), LengthMismatch);
    CHECK(storage_bits(enroll(sys, bv("1011"))) == 2);
  }

  TEST_CASE("two-factor enrollment") {
    SketchSystem sys(code_of(securebio::testing::kH1), 0.0, true);
    auto id = cancelable::identity_key(4);
    CHECK(enroll(sys, bv("1011"), id).syndrome.to_string() == "10");
    auto salted = cancelable::make_permute_salt_key({0, 1, 2, 3}, bv("1011"));
    CHECK(enroll(sys, bv("1011"), salted).syndrome.to_string() == "00");
    CHECK_THROWS_AS(enroll(sys, bv("1011")), InvalidArgument);
    CHECK(storage_bits(enroll(sys, bv("1011"), id), id) > 2);
  }

  TEST_CASE("authentication at tau = 0") {
    SketchSystem sys(code_of(securebio::testing::kH1), 0.0);
    auto t = enroll(sys, bv("1011"));
    CHECK(authenticate(sys, t, bv("0101")).accepted);
    auto r = authenticate(sys, t, bv("1111"));
    CHECK_FALSE(r.accepted);
    CHECK(r.distance == 1);
    CHECK(r.decoded == bv("1011"));
    CHECK_THROWS_AS(authenticate(sys, t, bv("11")), LengthMismatch);
  }

  TEST_CASE("acceptance regions") {
    SketchSystem sys(code_of(securebio::testing::kH1), 0.0);
    auto t = enroll(sys, bv("1011"));
    auto region = acceptance_region(sys, t);
    std::set<std::string> got;
    for (const auto& x : region) got.insert(x.to_string());
    CHECK(got == std::set<std::string>{"0101", "0110", "1000", "1011"});

    // tau = 1/4: every probe within distance 1 of the coset; for this code
    // that is all 16 vectors.
    auto wide = sys.with_tau(0.25);
    auto coset = gf2::enumerate_coset(sys.code(), t.syndrome).members;
    std::size_t expected = 0;
    for (const auto& d : all_vectors(4)) {
      std::size_t best = 4;
      for (const auto& c : coset) best = std::min(best, hamming_distance(c, d));
      expected += best <= 1;
    }
    CHECK(acceptance_region(wide, t).size() == expected);
    CHECK(expected == 16);

    SketchSystem trivial(
        std::make_shared<const gf2::LinearCode>(gf2::BitMatrix(0, 6)), 0.49);
    CHECK(acceptance_region(trivial, enroll(trivial, BitVector(6))).size() ==
          64);
  }

  TEST_CASE("completeness for every enrollment") {
    auto code = code_of(securebio::testing::kH10);
    for (double tau : {0.0, 0.1, 0.2}) {
      SketchSystem sys(code, tau);
      for (const auto& a : all_vectors(10)) {
        REQUIRE(authenticate(sys, enroll(sys, a), a).accepted);
      }
    }
  }

  TEST_CASE("FRR is the same for every enrollment") {
    auto code = code_of(securebio::testing::kH8);
    SketchSystem sys(code, 0.125);
    const double p = 0.05;
    auto frr_for = [&](const BitVector& a) {
      auto t = enroll(sys, a);
      double reject = 0;
      for (const auto& e : all_vectors(8)) {
        if (!authenticate(sys, t, a ^ e).accepted) {
          reject += std::pow(p, e.weight()) * std::pow(1 - p, 8 - e.weight());
        }
      }
      return reject;
    };
    const double base = frr_for(BitVector(8));
    // Brute-force reference from the independent oracle.
    CHECK(base == doctest::Approx(0.011822749999999998).epsilon(1e-12));
    for (const char* a : {"10110100", "11111111", "01010011"}) {
      CHECK(frr_for(bv(a)) == doctest::Approx(base).epsilon(1e-12));
    }
  }

  TEST_CASE("wrong second factor is accepted at about the FAR") {
    SketchSystem sys(code_of(securebio::testing::kH1), 0.0, true);
    Rng rng(17);
    auto k = cancelable::random_permute_salt_key(4, rng);
    auto t = enroll(sys, bv("1011"), k);
    CHECK(authenticate(sys, t, bv("1011"), k).accepted);
    const int trials = 10000;
    int ok = 0;
    for (int i = 0; i < trials; ++i) {
      auto l = cancelable::random_permute_salt_key(4, rng);
      ok += authenticate(sys, t, bv("1011"), l).accepted;
    }
    const double rate = static_cast<double>(ok) / trials;
    const double se = std::sqrt(0.25 * 0.75 / trials);
    CHECK(std::abs(rate - 0.25) < 4 * se);
    CHECK_THROWS_AS(authenticate(sys, t, bv("1011")), InvalidArgument);
  }

  TEST_CASE("threshold validation") {
    CHECK_THROWS_AS(SketchSystem(code_of(securebio::testing::kH1), 0.5),
                    InvalidArgument);
    CHECK_THROWS_AS(SketchSystem(code_of(securebio::testing::kH1), -0.1),
                    InvalidArgument);
  }
}
