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

#include "doctest.h"

#include "common.h"
#include "securebio/error.h"
#include "securebio/multisys.h"
#include "securebio/schemes.h"

using namespace securebio;
using namespace securebio::multisys;
using securebio::testing::bv;
using securebio::testing::code_of;

namespace {

std::vector<sketch::SketchSystem> worked_systems(double tau = 0.0) {
  return {sketch::SketchSystem(code_of(securebio::testing::kH1), tau),
          sketch::SketchSystem(code_of(securebio::testing::kH2), tau),
          sketch::SketchSystem(code_of(securebio::testing::kH3), tau)};
}

std::vector<std::string> strings(const std::vector<BitVector>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

}  // namespace

TEST_SUITE("multisys") {
  TEST_CASE("intersections") {
    auto d = Deployment::Identical(worked_systems(), bv("1011"));
    CHECK(d.identical());
    CHECK(d.n() == 4);
    CHECK(strings(intersect_candidates(d, {0, 1})) ==
          std::vector<std::string>{"0110", "1011"});
    CHECK(strings(intersect_candidates(d, {0, 2})) ==
          std::vector<std::string>{"1011"});
    CHECK(intersect_candidates(d, {0, 0}).size() == 4);
    CHECK(strings(coset_of(d, 2)) ==
          std::vector<std::string>{"0000", "0111", "1011", "1100"});
    CHECK_THROWS(intersect_candidates(d, {}));
    CHECK_THROWS(intersect_candidates(d, {5}));
  }

  TEST_CASE("cross-system attack rates") {
    auto d = Deployment::Identical(worked_systems(), bv("1011"));
    CHECK(cross_sar(d, 0, 0) == 1.0);
    CHECK(cross_sar(d, 0, 1) == 0.5);
    CHECK(cross_sar(d, 0, 2) == 0.25);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cross_sar(d, i, i) == 1.0);
  }

  TEST_CASE("cumulative leakage") {
    auto d = Deployment::Identical(worked_systems(), bv("1011"));
    CHECK(cumulative_leakage(d, {0}) == std::vector<double>{2.0});
    CHECK(cumulative_leakage(d, {0, 1}) == std::vector<double>{2.0, 3.0});
    CHECK(cumulative_leakage(d, {0, 2}) == std::vector<double>{2.0, 4.0});
    CHECK(cumulative_leakage(d, {0, 1, 2}).back() == 4.0);
  }

  TEST_CASE("dependence profile and the tension between them") {
    auto d = Deployment::Identical(worked_systems(), bv("1011"));
    auto ranks = dependence_profile(d);
    CHECK(ranks[0][1] == 3);
    CHECK(ranks[0][2] == 4);
    CHECK(ranks[0][0] == 2);
    CHECK(ranks[1][0] == ranks[0][1]);
    // Higher stacked rank: never easier to cross over, never less leakage.
    struct Pair { std::size_t rank; double sar, leak; };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        pairs.push_back({ranks[i][j], cross_sar(d, i, j),
                         cumulative_leakage(d, {i, j}).back()});
      }
    }
    for (const auto& a : pairs) {
      for (const auto& b : pairs) {
        if (a.rank < b.rank) {
          CHECK(a.sar >= b.sar);
          CHECK(a.leak <= b.leak);
        }
        CHECK(a.leak == static_cast<double>(a.rank));
      }
    }
  }

  TEST_CASE("the true biometric survives every intersection") {
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
      std::vector<sketch::SketchSystem> systems;
      for (int i = 0; i < 3; ++i) {
        systems.emplace_back(std::make_shared<const gf2::LinearCode>(
                                 gf2::LinearCode::Random(8, 2 + rng.below(4), rng)),
                             0.0);
      }
      auto a = rng.bits(8);
      auto d = Deployment::Identical(systems, a);
      auto cand = intersect_candidates(d, {0, 1, 2});
      CHECK(std::find(cand.begin(), cand.end(), a) != cand.end());
      auto leak = cumulative_leakage(d, {0, 1, 2});
      CHECK(leak.back() <= static_cast<double>(systems[0].m() + systems[1].m() +
                                               systems[2].m()) + 1e-12);
      for (std::size_t i = 1; i < leak.size(); ++i) CHECK(leak[i] >= leak[i - 1]);
    }
  }

  TEST_CASE("noisy enrollments") {
    auto d = Deployment::Noisy(worked_systems(), bv("1011"), 0.2, 3);
    CHECK(d.enrollments.size() == 3);
    CHECK(Deployment::Noisy(worked_systems(), bv("1011"), 0.0, 3).identical());
    CHECK_THROWS(intersect_candidates(Deployment::Noisy(worked_systems(), bv("1011"), 0.5, 1), {0, 1}));

    metrics::EvalOptions opt;
    opt.exact = false;
    opt.trials = 4000;
    // Without noise the Monte Carlo estimates reproduce the exact values.
    auto clean = noisy_linkage(worked_systems(), 0.0, 0, 1, 0.0, opt);
    CHECK(std::abs(clean.cross_sar.value - 0.5) <= 4 * clean.cross_sar.std_error + 1e-12);
    CHECK(clean.a_in_intersection.value == 1.0);
    auto noisy = noisy_linkage(worked_systems(), 0.1, 0, 1, 0.0, opt);
    CHECK(noisy.a_in_intersection.value < 1.0);
    CHECK(noisy.cross_sar.value <= 1.0);
  }

  TEST_CASE("mixed architectures") {
    auto code = code_of(securebio::testing::kH1);
    metrics::SketchScheme sk(sketch::SketchSystem(code, 0.0));
    metrics::CommitScheme cm(commit::CommitSystem(code, 0.0));
    metrics::EvalOptions opt;
    opt.exact = false;
    opt.trials = 4000;
    auto same = mixed_cross_sar(sk, cm, false, 0.0, 0.0, opt);
    CHECK(same.value == 1.0);
    metrics::SketchScheme sk3(sketch::SketchSystem(code_of(securebio::testing::kH3), 0.0));
    auto r = mixed_cross_sar(sk, sk3, false, 0.0, 0.0, opt);
    CHECK(std::abs(r.value - 0.25) <= 4 * r.std_error);
  }
}
