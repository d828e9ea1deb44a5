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

#include "securebio/experiment.h"

#include <cmath>
#include <cstdio>
#include <functional>

#include "securebio/io.h"
#include "securebio/smc.h"

namespace securebio::experiment {

using config::Architecture;
using config::ExperimentConfig;
using nlohmann::json;

namespace {

std::vector<std::string> strings_of(const std::vector<BitVector>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

std::optional<cancelable::TransformKey> parse_key(
    const std::optional<json>& key) {
  if (!key) return std::nullopt;
  return io::key_from_json(*key);
}

void expect_arch(const json& tmpl, const ExperimentConfig& c) {
  const std::string arch = tmpl.value("arch", "");
  if (arch != config::to_string(c.architecture)) {
    throw InvalidArgument("template is for '" + arch +
                          "' but the config selects '" +
                          config::to_string(c.architecture) + "'");
  }
}

}  // namespace

Enrollment enroll(const ExperimentConfig& c, const BitVector& a) {
  c.validate();
  require_size(a, c.n, "biometric");
  Rng rng = Rng::Stream(c.seed, "enroll");
  Enrollment out;
  switch (c.architecture) {
    case Architecture::kSketch: {
      const sketch::SketchSystem system(config::build_code(c), c.tau,
                                        c.two_factor);
      std::optional<cancelable::TransformKey> key;
      if (c.two_factor) key = cancelable::random_permute_salt_key(c.n, rng);
      const auto t = sketch::enroll(system, a, key);
      out.tmpl = {{"arch", "sketch"},
                  {"n", c.n},
                  {"m", system.m()},
                  {"two_factor", c.two_factor},
                  {"syndrome", t.syndrome.to_string()}};
      if (key) out.key = io::key_to_json(*key);
      return out;
    }
    case Architecture::kCommit: {
      const commit::CommitSystem system(config::build_code(c), c.tau, c.ties,
                                        c.two_factor);
      std::optional<cancelable::TransformKey> key;
      if (c.two_factor) key = cancelable::random_permute_salt_key(c.n, rng);
      const auto z = commit::random_message(system.code(), rng);
      const auto t = commit::commit(system, a, z, key);
      out.tmpl = {{"arch", "commit"},
                  {"n", c.n},
                  {"k", system.k()},
                  {"two_factor", c.two_factor},
                  {"bound", t.bound.to_string()}};
      out.secret = z.z.to_string();
      if (key) out.key = io::key_to_json(*key);
      return out;
    }
    case Architecture::kCancelable: {
      const auto key =
          c.transform == cancelable::TransformKind::kPermuteSalt
              ? cancelable::random_permute_salt_key(c.n, rng)
              : cancelable::random_projection_key(c.n, c.projection_rows, rng);
      const auto t = cancelable::enroll(key, a, c.tau);
      out.tmpl = {{"arch", "cancelable"},
                  {"n", c.n},
                  {"distorted", t.distorted.to_string()}};
      out.key = io::key_to_json(key);
      return out;
    }
    case Architecture::kSmc:
      throw InvalidArgument(
          "encrypted templates are enrolled with the SMC client");
  }
  throw InvalidArgument("unknown architecture");
}

Decision authenticate(const ExperimentConfig& c, const json& tmpl,
                      const BitVector& probe, const std::optional<json>& key) {
  c.validate();
  expect_arch(tmpl, c);
  require_size(probe, c.n, "probe");
  const auto k = parse_key(key);
  Decision d;
  try {
    switch (c.architecture) {
      case Architecture::kSketch: {
        const sketch::SketchSystem system(config::build_code(c), c.tau,
                                          c.two_factor);
        const auto r = sketch::authenticate(
            system,
            sketch::SketchTemplate{io::bits_from_json(tmpl.at("syndrome"), "syndrome")},
            probe, k);
        d.accepted = r.accepted;
        d.detail = {{"accepted", r.accepted},
                    {"distance", r.distance},
                    {"decoded", r.decoded.to_string()}};
        return d;
      }
      case Architecture::kCommit: {
        const commit::CommitSystem system(config::build_code(c), c.tau, c.ties,
                                          c.two_factor);
        const auto r = commit::open(
            system,
            commit::CommitTemplate{io::bits_from_json(tmpl.at("bound"), "bound")},
            probe, k);
        d.accepted = r.accepted;
        d.detail = {{"accepted", r.accepted},
                    {"distance", r.distance},
                    {"ambiguous", r.ambiguous}};
        if (r.recovered) d.detail["secret"] = r.recovered->z.to_string();
        return d;
      }
      case Architecture::kCancelable: {
        if (!k) throw InvalidArgument("cancelable matching requires the key");
        const auto r = cancelable::authenticate(
            *k,
            cancelable::CancelableTemplate{
                io::bits_from_json(tmpl.at("distorted"), "distorted"), c.tau},
            probe);
        d.accepted = r.accepted;
        d.detail = {{"accepted", r.accepted}, {"distance", r.distance}};
        return d;
      }
      case Architecture::kSmc:
        throw InvalidArgument("encrypted matching runs through the SMC client");
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed template: ") + e.what());
  }
  throw InvalidArgument("unknown architecture");
}

json linkage_report(const ExperimentConfig& c) {
  const multisys::Deployment d = config::build_deployment(c);
  const std::size_t count = d.size();
  std::vector<std::vector<std::size_t>> scenarios = c.deployment->scenarios;
  if (scenarios.empty()) {
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < count; ++i) all.push_back(i);
    scenarios.push_back(all);
  }

  json out;
  out["systems"] = count;
  out["identical_enrollment"] = d.identical();
  json syndromes = json::array();
  for (const auto& t : d.templates) syndromes.push_back(t.syndrome.to_string());
  out["syndromes"] = syndromes;
  out["stacked_rank"] = multisys::dependence_profile(d);

  if (d.identical()) {
    json cosets = json::array();
    for (std::size_t i = 0; i < count; ++i) {
      cosets.push_back(strings_of(multisys::coset_of(d, i)));
    }
    out["cosets"] = cosets;
    json sar = json::array();
    for (std::size_t i = 0; i < count; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < count; ++j) {
        row.push_back(multisys::cross_sar(d, i, j, c.tau));
      }
      sar.push_back(row);
    }
    out["cross_sar"] = sar;
    json scen = json::array();
    for (const auto& s : scenarios) {
      json systems = json::array();
      for (std::size_t i : s) systems.push_back(i + 1);
      const auto candidates = multisys::intersect_candidates(d, s);
      scen.push_back({{"compromised", systems},
                      {"candidates", strings_of(candidates)},
                      {"size", candidates.size()},
                      {"leakage_bits", multisys::cumulative_leakage(d, s)}});
    }
    out["scenarios"] = scen;
    out["method"] = "exact";
  } else {
    json sar = json::array();
    json survive = json::array();
    for (std::size_t i = 0; i < count; ++i) {
      json row = json::array();
      json srow = json::array();
      for (std::size_t j = 0; j < count; ++j) {
        const auto r = multisys::noisy_linkage(d.systems, c.deployment->noise,
                                               i, j, c.tau, c.eval_options());
        row.push_back({{"value", r.cross_sar.value},
                       {"stderr", r.cross_sar.std_error}});
        srow.push_back(r.a_in_intersection.value);
      }
      sar.push_back(row);
      survive.push_back(srow);
    }
    out["cross_sar"] = sar;
    out["a_in_intersection"] = survive;
    out["method"] = "monte_carlo";
    out["trials"] = c.trials;
  }
  return out;
}

MetricsOutput run_metrics(const ExperimentConfig& c) {
  c.validate();
  const auto scheme = config::build_scheme(c);
  metrics::ReportOptions opt;
  opt.p = c.p;
  opt.taus = c.taus;
  opt.views = c.views;
  opt.eval = c.eval_options();
  MetricsOutput out{metrics::evaluate(*scheme, opt), std::nullopt};
  if (c.architecture == Architecture::kSmc) {
    out.report.scheme = "smc";
    const auto key = paillier::keygen(c.prime_bits, c.seed);
    out.report.storage_bits = (c.n + 1) * key.pub.ciphertext_bits();
  }
  if (c.deployment) out.linkage = linkage_report(c);
  return out;
}

json to_json(const MetricsOutput& out) {
  json j = metrics::to_json(out.report);
  if (out.linkage) j["linkage"] = *out.linkage;
  return j;
}

json run_attacks(const ExperimentConfig& c) {
  c.validate();
  const auto scheme = config::build_scheme(c);
  std::vector<metrics::AttackView> views = c.views;
  if (views.empty()) views = {{}, {true, false, false}, {false, false, true}};
  json results = json::array();
  for (const auto& v : views) {
    const auto r = metrics::success_rate(*scheme, v, c.tau, c.eval_options());
    results.push_back({{"view", v.label()},
                       {"sar", r.sar.value},
                       {"stderr", r.sar.std_error},
                       {"strategy", metrics::to_string(r.best)}});
  }
  json out = {{"scheme", scheme->name()},
              {"tau", c.tau},
              {"method", c.exact ? "exact" : "monte_carlo"},
              {"attacks", results}};
  if (c.deployment) out["linkage"] = linkage_report(c);
  return out;
}

// ------------------------------------------------------------ paper checks

WorkedExample default_worked_example() {
  return WorkedExample{gf2::BitMatrix::FromStrings({"1011", "0111"}),
                       gf2::BitMatrix::FromStrings({"1011", "0101"}),
                       gf2::BitMatrix::FromStrings({"1110", "1101"}),
                       BitVector::FromString("1011")};
}

WorkedExample worked_example_from(const ExperimentConfig& c) {
  if (!c.deployment || c.deployment->systems.size() < 3) {
    throw InvalidArgument("worked example needs a deployment with three systems");
  }
  const auto& s = c.deployment->systems;
  return WorkedExample{s[0], s[1], s[2], c.deployment->enrollment};
}

namespace {

std::vector<BitVector> bits_list(std::initializer_list<const char*> items) {
  std::vector<BitVector> out;
  for (const char* s : items) out.push_back(BitVector::FromString(s));
  return out;
}

std::string show(const std::vector<BitVector>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].to_string();
  }
  return s + "}";
}

std::string show(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool near(double a, double b) { return std::fabs(a - b) <= 1e-9; }

}  // namespace

std::vector<CheckResult> paper_check(const WorkedExample& ex) {
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, const std::function<std::string()>& fn) {
    // fn returns an empty string on success, else the discrepancy.
    try {
      const std::string problem = fn();
      out.push_back({name, problem.empty(), problem});
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("error: ") + e.what()});
    }
  };
  auto code = [](const gf2::BitMatrix& h) {
    return std::make_shared<const gf2::LinearCode>(h);
  };
  auto expect_bits = [](const BitVector& got, const char* want) {
    return got == BitVector::FromString(want)
               ? std::string()
               : "expected " + std::string(want) + ", got " + got.to_string();
  };
  auto expect_set = [](const std::vector<BitVector>& got,
                       const std::vector<BitVector>& want) {
    return got == want ? std::string()
                       : "expected " + show(want) + ", got " + show(got);
  };
  auto expect_value = [](double got, double want) {
    return near(got, want) ? std::string()
                           : "expected " + show(want) + ", got " + show(got);
  };
  auto deployment = [&] {
    std::vector<sketch::SketchSystem> systems;
    for (const auto* h : {&ex.h1, &ex.h2, &ex.h3}) systems.emplace_back(code(*h), 0.0);
    return multisys::Deployment::Identical(std::move(systems), ex.a);
  };
  const auto coset_p = bits_list({"0101", "0110", "1000", "1011"});

  run("sidebarB.syndrome", [&] {
    return expect_bits(gf2::syndrome(*code(ex.h1), ex.a), "10");
  });
  run("sidebarB.syndrome2", [&] {
    return expect_bits(gf2::syndrome(*code(ex.h2), ex.a), "11");
  });
  run("sidebarB.syndrome3", [&] {
    return expect_bits(gf2::syndrome(*code(ex.h3), ex.a), "00");
  });
  run("sidebarB.coset", [&] {
    return expect_set(
        gf2::enumerate_coset(*code(ex.h1), BitVector::FromString("10")).members,
        coset_p);
  });
  run("sidebarB.codewords", [&] {
    return expect_set(
        gf2::enumerate_coset(*code(ex.h1), BitVector::FromString("00")).members,
        bits_list({"0000", "0011", "1101", "1110"}));
  });
  run("sidebarB.codewords3", [&] {
    return expect_set(
        gf2::enumerate_coset(*code(ex.h3), BitVector::FromString("00")).members,
        bits_list({"0000", "0111", "1011", "1100"}));
  });
  run("sidebarB.coset_member_accepted", [&] {
    const sketch::SketchSystem sys(code(ex.h1), 0.0);
    const auto r = sketch::authenticate(sys, sketch::enroll(sys, ex.a),
                                        BitVector::FromString("0101"));
    return r.accepted ? std::string() : "probe 0101 rejected";
  });
  run("sidebarB.acceptance_region", [&] {
    const sketch::SketchSystem sys(code(ex.h1), 0.0);
    return expect_set(sketch::acceptance_region(sys, sketch::enroll(sys, ex.a)),
                      coset_p);
  });
  run("sidebarB.far", [&] {
    const metrics::SketchScheme s(sketch::SketchSystem(code(ex.h1), 0.0));
    return expect_value(metrics::far(s, 0.0, {}).value, 0.25);
  });
  run("sidebarB.intersection_11", [&] {
    return expect_set(multisys::intersect_candidates(deployment(), {0, 0}), coset_p);
  });
  run("sidebarB.intersection_12", [&] {
    return expect_set(multisys::intersect_candidates(deployment(), {0, 1}),
                      bits_list({"0110", "1011"}));
  });
  run("sidebarB.intersection_13", [&] {
    return expect_set(multisys::intersect_candidates(deployment(), {0, 2}),
                      bits_list({"1011"}));
  });
  run("sidebarB.cross_sar_11", [&] {
    return expect_value(multisys::cross_sar(deployment(), 0, 0), 1.0);
  });
  run("sidebarB.cross_sar_12", [&] {
    return expect_value(multisys::cross_sar(deployment(), 0, 1), 0.5);
  });
  run("sidebarB.cross_sar_13", [&] {
    return expect_value(multisys::cross_sar(deployment(), 0, 2), 0.25);
  });
  run("sidebarB.leakage_1", [&] {
    return expect_value(multisys::cumulative_leakage(deployment(), {0}).back(), 2.0);
  });
  run("sidebarB.leakage_12", [&] {
    return expect_value(multisys::cumulative_leakage(deployment(), {0, 1}).back(), 3.0);
  });
  run("sidebarB.leakage_13", [&] {
    return expect_value(multisys::cumulative_leakage(deployment(), {0, 2}).back(), 4.0);
  });
  run("sidebarA.leakage_equals_m", [&] {
    const metrics::SketchScheme s(sketch::SketchSystem(code(ex.h1), 0.0));
    return expect_value(
        metrics::privacy_leakage(metrics::enumerator_of(s), s.n(),
                                 metrics::AttackView{true, false, false}),
        static_cast<double>(ex.h1.rows()));
  });
  run("sidebarA.sar_with_stored_data", [&] {
    const metrics::SketchScheme s(sketch::SketchSystem(code(ex.h1), 0.0));
    return expect_value(
        metrics::success_rate(s, {true, false, false}, 0.0, {}).sar.value, 1.0);
  });
  run("measures.sar_defaults_to_far", [&] {
    const metrics::SketchScheme s(sketch::SketchSystem(code(ex.h1), 0.0));
    return expect_value(metrics::success_rate(s, {}, 0.0, {}).sar.value,
                        metrics::far(s, 0.0, {}).value);
  });
  run("twofactor.no_leakage", [&] {
    const metrics::SketchScheme s(sketch::SketchSystem(code(ex.h1), 0.0, true));
    return expect_value(
        metrics::privacy_leakage(metrics::enumerator_of(s), s.n(),
                                 metrics::AttackView{true, false, false}),
        0.0);
  });
  run("twofactor.sar_near_far", [&] {
    const metrics::SketchScheme s(sketch::SketchSystem(code(ex.h1), 0.0, true));
    metrics::EvalOptions mc;
    mc.exact = false;
    mc.trials = 10000;
    const auto sar = metrics::success_rate(s, {false, false, true}, 0.0, mc).sar;
    const double far = metrics::far(s, 0.0, {}).value;
    if (std::fabs(sar.value - far) <= 3 * sar.std_error) return std::string();
    return "SAR " + show(sar.value) + " +- " + show(sar.std_error) +
           " vs FAR " + show(far);
  });
  run("negation.leakage", [&] {
    return expect_value(metrics::privacy_leakage(metrics::bit_negation_enumerator(),
                                                 4, {true, false, false}),
                        3.0);
  });
  run("negation.distortion", [&] {
    return expect_value(
        metrics::reconstruction_distortion(metrics::bit_negation_enumerator(), 4,
                                           {true, false, false}),
        0.5);
  });
  run("storage.sketch", [&] {
    const sketch::SketchSystem sys(code(ex.h1), 0.0);
    return expect_value(
        static_cast<double>(sketch::storage_bits(sketch::enroll(sys, ex.a))), 2.0);
  });
  run("storage.commit", [&] {
    const auto c = code(ex.h1);
    Rng rng(0);
    return expect_value(
        static_cast<double>(commit::storage_bits(
            commit::commit(*c, ex.a, commit::random_message(*c, rng)))),
        4.0);
  });
  return out;
}

}  // namespace securebio::experiment
