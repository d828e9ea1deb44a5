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
#include "securebio/metrics.h"
#include "securebio/schemes.h"

using namespace securebio;
using namespace securebio::metrics;
using securebio::testing::bv;
using securebio::testing::code_of;

namespace {

SketchScheme sketch_scheme(const std::vector<std::string>& h, double tau,
                           bool two_factor = false) {
  return SketchScheme(sketch::SketchSystem(code_of(h), tau, two_factor));
}

EvalOptions exact() { return EvalOptions{}; }

EvalOptions monte_carlo(std::size_t trials, std::uint64_t seed = 1) {
  EvalOptions o;
  o.exact = false;
  o.trials = trials;
  o.seed = seed;
  return o;
}

// Linear interpolation of a ROC's FRR at a given FAR.
double frr_at(const std::vector<RocPoint>& curve, double far) {
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double f0 = curve[i].far.value, f1 = curve[i + 1].far.value;
    if (far >= f0 && far <= f1) {
      if (f1 == f0) return std::min(curve[i].frr.value, curve[i + 1].frr.value);
      const double w = (far - f0) / (f1 - f0);
      return curve[i].frr.value + w * (curve[i + 1].frr.value - curve[i].frr.value);
    }
  }
  return curve.back().frr.value;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("worked-example accuracy") {
    auto s = sketch_scheme(securebio::testing::kH1, 0.0);
    CHECK(far(s, 0.0, exact()).value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(frr(s, 0.0, 0.1, exact()).value ==
          doctest::Approx(0.334).epsilon(1e-12));
    CHECK(far(s, 0.25, exact()).value == doctest::Approx(1.0));
    CHECK(frr(s, 0.25, 0.1, exact()).value == doctest::Approx(0.0));
    CHECK(frr(s, 0.0, 0.0, exact()).value == 0.0);
    CHECK(far(s, 0.0, exact()).method == Method::kExact);
  }

  TEST_CASE("accuracy against brute-force references") {
    // Values from tests/oracle/oracle.py.
    auto s8 = sketch_scheme(securebio::testing::kH8, 0.0);
    PlainScheme p8(8, 0.0);
    struct Row { double tau, far, frr, pfar, pfrr; };
    for (const Row& r : {Row{0.0, 0.125, 0.33207724999999949, 0.00390625, 0.3365795687109373},
                         Row{0.125, 0.875, 0.011822749999999998, 0.03515625, 0.057244650273437489},
                         Row{0.25, 1.0, 0.0, 0.14453125, 0.0057882179296874997}}) {
      CAPTURE(r.tau);
      CHECK(far(s8, r.tau, exact()).value == doctest::Approx(r.far).epsilon(1e-12));
      CHECK(frr(s8, r.tau, 0.05, exact()).value == doctest::Approx(r.frr).epsilon(1e-12));
      CHECK(far(p8, r.tau, exact()).value == doctest::Approx(r.pfar).epsilon(1e-12));
      CHECK(frr(p8, r.tau, 0.05, exact()).value == doctest::Approx(r.pfrr).epsilon(1e-12));
    }
    auto s10 = sketch_scheme(securebio::testing::kH10, 0.0);
    CHECK(far(s10, 0.1, exact()).value == doctest::Approx(0.5));
    CHECK(frr(s10, 0.1, 0.05, exact()).value ==
          doctest::Approx(0.030878138750000284).epsilon(1e-12));
    CHECK(far(s10, 0.2, exact()).value == doctest::Approx(0.9375));
    CHECK(frr(s10, 0.2, 0.05, exact()).value ==
          doctest::Approx(0.00066904937499999992).epsilon(1e-12));

    auto trivial = SketchScheme(sketch::SketchSystem(
        std::make_shared<const gf2::LinearCode>(gf2::BitMatrix(0, 6)), 0.0));
    CHECK(far(trivial, 0.0, exact()).value == 1.0);
  }

  TEST_CASE("every architecture agrees on the same code") {
    auto code = code_of(securebio::testing::kH8);
    SketchScheme s(sketch::SketchSystem(code, 0.0));
    CommitScheme c(commit::CommitSystem(code, 0.0));
    for (double tau : {0.0, 0.125, 0.25}) {
      CHECK(far(s, tau, exact()).value == far(c, tau, exact()).value);
      CHECK(frr(s, tau, 0.05, exact()).value == frr(c, tau, 0.05, exact()).value);
    }
    CancelableScheme k(cancelable::TransformKind::kPermuteSalt, 8, 0.0);
    PlainScheme p(8, 0.0);
    for (double tau : {0.0, 0.125, 0.25, 0.375}) {
      CHECK(far(k, tau, exact()).value == doctest::Approx(far(p, tau, exact()).value));
      CHECK(frr(k, tau, 0.05, exact()).value ==
            doctest::Approx(frr(p, tau, 0.05, exact()).value));
    }
  }

  TEST_CASE("ROC and equal error rate") {
    auto s = sketch_scheme(securebio::testing::kH1, 0.0);
    auto curve = roc(s, 0.1, {0.0, 0.25}, exact());
    auto e = equal_error_rate(curve);
    CHECK(e.bracketed);
    CHECK(e.tau == doctest::Approx(0.019372693726937274).epsilon(1e-12));
    CHECK(e.value == doctest::Approx(0.30811808118081185).epsilon(1e-12));

    // Accept-all: FAR above FRR everywhere, flagged first endpoint.
    std::vector<RocPoint> all{{0.0, {1.0}, {0.0}}, {0.25, {1.0}, {0.0}}};
    auto flat = equal_error_rate(all);
    CHECK_FALSE(flat.bracketed);
    CHECK(flat.tau == 0.0);
    CHECK(flat.value == 0.5);
    std::vector<RocPoint> none{{0.0, {0.0}, {1.0}}, {0.25, {0.1}, {0.5}}};
    auto tail = equal_error_rate(none);
    CHECK_FALSE(tail.bracketed);
    CHECK(tail.tau == 0.25);
    CHECK(tail.value == doctest::Approx(0.3));
  }

  TEST_CASE("ROC is monotone for random codes") {
    Rng rng(8);
    for (int t = 0; t < 3; ++t) {
      auto code = std::make_shared<const gf2::LinearCode>(
          gf2::LinearCode::Random(8, 3 + t, rng));
      SketchScheme s(sketch::SketchSystem(code, 0.0));
      auto grid = threshold_grid(s);
      CHECK(grid.front() == 0.0);
      auto curve = roc(s, 0.05, grid, exact());
      for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].far.value >= curve[i - 1].far.value);
        CHECK(curve[i].frr.value <= curve[i - 1].frr.value);
      }
    }
  }

  TEST_CASE("code-constrained ROC is dominated by the plain matcher") {
    Rng rng(12);
    auto code = std::make_shared<const gf2::LinearCode>(
        gf2::LinearCode::Random(12, 6, rng));
    SketchScheme s(sketch::SketchSystem(code, 0.0));
    PlainScheme p(12, 0.0);
    std::vector<double> all_taus;
    for (int t = 0; t <= 12; ++t) all_taus.push_back(t / 12.0 * 0.999);
    auto plain = roc(p, 0.05, all_taus, exact());
    for (const auto& pt : roc(s, 0.05, threshold_grid(s), exact())) {
      CHECK(frr_at(plain, pt.far.value) <= pt.frr.value + 1e-12);
    }
  }

  TEST_CASE("Monte Carlo agrees with exact and is thread-count invariant") {
    auto s = sketch_scheme(securebio::testing::kH8, 0.0);
    auto mc = monte_carlo(20000, 3);
    for (double tau : {0.0, 0.125}) {
      auto fe = far(s, tau, exact()).value;
      auto fm = far(s, tau, mc);
      CHECK(fm.method == Method::kMonteCarlo);
      CHECK(fm.trials == 20000);
      CHECK(std::abs(fm.value - fe) <= 4 * fm.std_error + 1e-12);
      auto re = frr(s, tau, 0.05, exact()).value;
      auto rm = frr(s, tau, 0.05, mc);
      CHECK(std::abs(rm.value - re) <= 4 * rm.std_error + 1e-12);
    }
    auto one = mc, many = mc;
    one.threads = 1;
    many.threads = 8;
    CHECK(frr(s, 0.125, 0.05, one).value == frr(s, 0.125, 0.05, many).value);
    auto other = mc;
    other.seed = 4;
    CHECK(frr(s, 0.125, 0.05, other).value != frr(s, 0.125, 0.05, mc).value);
  }

  TEST_CASE("views") {
    CHECK(AttackView{}.label() == "none");
    CHECK(AttackView::Parse("S+K") == AttackView{true, true, false});
    CHECK(AttackView::Parse("A+K").label() == "A+K");
    CHECK(AttackView::Parse("S+A+K").label() == "S+A+K");
    CHECK(AttackView::Parse("none") == AttackView{});
    CHECK_THROWS_AS(AttackView::Parse("S+X"), InvalidArgument);
  }

  TEST_CASE("mutual information") {
    JointDistribution indep;
    for (const char* x : {"0", "1"}) {
      for (const char* y : {"a", "b"}) indep.add(x, y, 0.25);
    }
    CHECK(indep.mutual_information() == doctest::Approx(0.0));
    CHECK(indep.entropy_x() == doctest::Approx(1.0));
    CHECK(indep.total() == doctest::Approx(1.0));
    JointDistribution copy;
    copy.add("0", "0", 0.5);
    copy.add("1", "1", 0.5);
    CHECK(copy.mutual_information() == doctest::Approx(1.0));
    CHECK(copy.joint_entropy() == doctest::Approx(1.0));
  }

  TEST_CASE("privacy leakage") {
    auto keyless = sketch_scheme(securebio::testing::kH1, 0.0);
    const AttackView s{true, false, false}, sk{true, true, false},
        a{false, false, true}, none{};
    CHECK(privacy_leakage(enumerator_of(keyless), 4, s) == doctest::Approx(2.0));
    CHECK(privacy_leakage(enumerator_of(keyless), 4, none) == 0.0);
    CHECK(privacy_leakage(enumerator_of(keyless), 4, a) == 4.0);
    auto s8 = sketch_scheme(securebio::testing::kH8, 0.0);
    CHECK(privacy_leakage(enumerator_of(s8), 8, s) == doctest::Approx(3.0));

    auto twofactor = sketch_scheme(securebio::testing::kH8, 0.0, true);
    CHECK(privacy_leakage(enumerator_of(twofactor), 8, s) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(privacy_leakage(enumerator_of(twofactor), 8, sk) ==
          doctest::Approx(3.0));
    CHECK(privacy_leakage(enumerator_of(twofactor), 8, s) <=
          privacy_leakage(enumerator_of(twofactor), 8, sk));

    CommitScheme c(commit::CommitSystem(code_of(securebio::testing::kH8), 0.0));
    CHECK(privacy_leakage(enumerator_of(c), 8, s) == doctest::Approx(3.0));

    CancelableScheme k(cancelable::TransformKind::kPermuteSalt, 6, 0.0);
    CHECK(privacy_leakage(enumerator_of(k), 6, s) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(privacy_leakage(enumerator_of(k), 6, sk) == doctest::Approx(6.0));
    CHECK_THROWS_AS(privacy_leakage(enumerator_of(s8), 8, s, 16), CapExceeded);
  }

  TEST_CASE("bit negation and reconstruction distortion") {
    const AttackView s{true, false, false};
    CHECK(privacy_leakage(bit_negation_enumerator(), 4, s) ==
          doctest::Approx(3.0));
    CHECK(reconstruction_distortion(bit_negation_enumerator(), 4, s) ==
          doctest::Approx(0.5));
    auto keyless = sketch_scheme(securebio::testing::kH1, 0.0);
    CHECK(reconstruction_distortion(enumerator_of(keyless), 4, s) ==
          doctest::Approx(0.5));
    CHECK(reconstruction_distortion(enumerator_of(keyless), 4,
                                    AttackView{false, false, true}) == 0.0);
    CHECK(reconstruction_distortion(enumerator_of(keyless), 4, AttackView{}) ==
          doctest::Approx(0.5));
  }

  TEST_CASE("successful attack rate") {
    const AttackView s{true, false, false}, a{false, false, true}, none{};
    auto keyless = sketch_scheme(securebio::testing::kH1, 0.0);
    CHECK(success_rate(keyless, s, 0.0, exact()).sar.value == 1.0);
    CHECK(success_rate(keyless, none, 0.0, exact()).sar.value ==
          doctest::Approx(0.25));
    CHECK(success_rate(keyless, a, 0.0, exact()).sar.value == 1.0);

    auto twofactor = sketch_scheme(securebio::testing::kH8, 0.0, true);
    const double nominal = far(twofactor, 0.0, exact()).value;
    auto r = success_rate(twofactor, a, 0.0, monte_carlo(10000, 2));
    CHECK(std::abs(r.sar.value - nominal) <= 3 * r.sar.std_error);
    CHECK(success_rate(twofactor, AttackView{true, true, false}, 0.0, exact())
              .sar.value == 1.0);

    CHECK(requirements(AttackStrategy::kFullCompromise) ==
          AttackView{false, true, true});
    CHECK_FALSE(available(AttackStrategy::kStoredDataForgery, a));
    CHECK(strategies_for(none) ==
          std::vector<AttackStrategy>{AttackStrategy::kBlindGuess});
    CHECK_THROWS_AS(attack_success(keyless, AttackStrategy::kStoredDataForgery,
                                   none, 0.0, exact()),
                    InvalidArgument);

    for (const char* label : {"none", "S", "A", "K", "S+K", "A+K", "S+A+K"}) {
      for (double tau : {0.0, 0.125, 0.25}) {
        auto v = AttackView::Parse(label);
        for (auto* scheme : std::initializer_list<const AuthScheme*>{&keyless, &twofactor}) {
          const double f = far(*scheme, tau, exact()).value;
          CHECK(success_rate(*scheme, v, tau, exact()).sar.value >= f - 1e-12);
        }
      }
    }
  }

  TEST_CASE("report") {
    auto s = sketch_scheme(securebio::testing::kH1, 0.0);
    ReportOptions opt;
    opt.p = 0.1;
    opt.taus = {0.0, 0.25};
    opt.views = {AttackView{}, AttackView{true, false, false}};
    auto r = evaluate(s, opt);
    CHECK(r.rows.size() == 2);
    CHECK(r.storage_bits == 2);
    CHECK(r.leakage[1].value() == doctest::Approx(2.0));
    auto csv = to_csv(r);
    CHECK(csv.rfind("tau,far,frr,sar_none,sar_S,leakage_none,leakage_S,"
                    "storage_bits,method,trials,stderr\n", 0) == 0);
    CHECK(csv.find("0,0.25,0.334,0.25,1,0,2,2,exact,0,0\n") != std::string::npos);
    CHECK(to_csv(evaluate(s, opt)) == csv);
    auto j = to_json(r);
    CHECK(j["rows"][0]["far"] == 0.25);
    CHECK(j["leakage_bits"]["S"] == 2.0);
    CHECK(j["eer"]["bracketed"] == true);
  }
}
