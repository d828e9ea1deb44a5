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

#include "securebio/config.h"

#include <set>

#include "securebio/io.h"

namespace securebio::config {

using nlohmann::json;

std::string to_string(Architecture a) {
  switch (a) {
    case Architecture::kSketch: return "sketch";
    case Architecture::kCommit: return "commit";
    case Architecture::kCancelable: return "cancelable";
    case Architecture::kSmc: return "smc";
  }
  return "unknown";
}

Architecture parse_architecture(const std::string& s) {
  if (s == "sketch") return Architecture::kSketch;
  if (s == "commit") return Architecture::kCommit;
  if (s == "cancelable") return Architecture::kCancelable;
  if (s == "smc") return Architecture::kSmc;
  throw InvalidArgument("unknown architecture '" + s +
                        "' (expected sketch, commit, cancelable or smc)");
}

void ExperimentConfig::validate() const {
  if (n == 0) throw InvalidArgument("n must be positive");
  if (!(tau >= 0.0 && tau < 0.5)) throw InvalidArgument("tau must lie in [0, 0.5)");
  for (double t : taus) {
    if (!(t >= 0.0 && t < 0.5)) throw InvalidArgument("taus must lie in [0, 0.5)");
  }
  source::BscUserModel{n, p, p_prime, seed}.validate();
  if (!exact && trials == 0) {
    throw InvalidArgument("Monte Carlo mode needs trials > 0");
  }
  if (architecture == Architecture::kSketch ||
      architecture == Architecture::kCommit) {
    if (code.h) {
      if (code.h->cols() != n) {
        throw InvalidArgument("H has " + std::to_string(code.h->cols()) +
                              " columns but n = " + std::to_string(n));
      }
    } else if (code.m == 0 || code.m > n) {
      throw InvalidArgument("code needs an explicit H or 1 <= m <= n");
    }
  }
  if (architecture == Architecture::kCancelable &&
      transform == cancelable::TransformKind::kRandomProjection &&
      (projection_rows == 0 || projection_rows > n)) {
    throw InvalidArgument("projection rows must lie in [1, n]");
  }
  if (architecture == Architecture::kSmc) {
    if (prime_bits < 4) throw InvalidArgument("smc prime_bits must be >= 4");
    if (2 * theta >= n) throw InvalidArgument("smc theta must be below n / 2");
  }
  if (deployment) {
    if (deployment->systems.empty()) {
      throw InvalidArgument("deployment needs at least one system");
    }
    for (const auto& h : deployment->systems) {
      if (h.cols() != deployment->enrollment.size()) {
        throw InvalidArgument("deployment matrices must match the enrollment length");
      }
    }
    if (!(deployment->noise >= 0.0 && deployment->noise <= 1.0)) {
      throw InvalidArgument("deployment noise must lie in [0, 1]");
    }
    for (const auto& s : deployment->scenarios) {
      if (s.empty()) throw InvalidArgument("empty compromise scenario");
      for (std::size_t i : s) {
        if (i >= deployment->systems.size()) {
          throw InvalidArgument("scenario refers to system " +
                                std::to_string(i + 1) + " of " +
                                std::to_string(deployment->systems.size()));
        }
      }
    }
  }
}

metrics::EvalOptions ExperimentConfig::eval_options() const {
  metrics::EvalOptions o;
  o.exact = exact;
  o.trials = trials;
  o.seed = seed;
  return o;
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) {
      throw FormatError("unknown field '" + k + "' in " + where);
    }
  }
}

}  // namespace

ExperimentConfig from_json(const json& j) {
  if (!j.is_object()) throw FormatError("config must be a JSON object");
  reject_unknown(j,
                 {"name", "architecture", "two_factor", "n", "code", "tie_policy",
                  "transform", "tau", "taus", "source", "views", "trials",
                  "exact", "seed", "smc", "deployment"},
                 "config");
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    c.architecture = parse_architecture(j.value("architecture", "sketch"));
    c.two_factor = j.value("two_factor", false);
    c.n = j.value("n", std::size_t{0});
    if (j.contains("code")) {
      const json& code = j.at("code");
      reject_unknown(code, {"H", "m", "seed"}, "code");
      if (code.contains("H")) c.code.h = io::matrix_from_json(code.at("H"));
      c.code.m = code.value("m", std::size_t{0});
      c.code.seed = code.value("seed", std::uint64_t{0});
      if (c.n == 0 && c.code.h) c.n = c.code.h->cols();
    }
    const std::string ties = j.value("tie_policy", "lexicographic");
    if (ties == "lexicographic") {
      c.ties = commit::TiePolicy::kLexicographic;
    } else if (ties == "reject") {
      c.ties = commit::TiePolicy::kReject;
    } else {
      throw InvalidArgument("tie_policy must be lexicographic or reject");
    }
    if (j.contains("transform")) {
      const json& t = j.at("transform");
      reject_unknown(t, {"kind", "rows"}, "transform");
      const std::string kind = t.value("kind", "permute_salt");
      if (kind == "permute_salt") {
        c.transform = cancelable::TransformKind::kPermuteSalt;
      } else if (kind == "projection") {
        c.transform = cancelable::TransformKind::kRandomProjection;
      } else {
        throw InvalidArgument("transform kind must be permute_salt or projection");
      }
      c.projection_rows = t.value("rows", std::size_t{0});
    }
    c.tau = j.value("tau", 0.0);
    c.taus = j.value("taus", std::vector<double>{});
    if (j.contains("source")) {
      const json& s = j.at("source");
      reject_unknown(s, {"p", "p_prime"}, "source");
      c.p = s.value("p", c.p);
      c.p_prime = s.value("p_prime", c.p_prime);
    }
    for (const auto& v : j.value("views", std::vector<std::string>{})) {
      c.views.push_back(metrics::AttackView::Parse(v));
    }
    c.trials = j.value("trials", c.trials);
    c.exact = j.value("exact", c.exact);
    c.seed = j.value("seed", c.seed);
    if (j.contains("smc")) {
      const json& s = j.at("smc");
      reject_unknown(s, {"prime_bits", "theta"}, "smc");
      c.prime_bits = s.value("prime_bits", c.prime_bits);
      c.theta = s.value("theta", c.theta);
    }
    if (j.contains("deployment")) {
      const json& d = j.at("deployment");
      reject_unknown(d, {"systems", "enrollment", "noise", "scenarios"},
                     "deployment");
      DeploymentSpec spec;
      for (const auto& h : d.at("systems")) {
        spec.systems.push_back(io::matrix_from_json(h));
      }
      spec.enrollment = io::bits_from_json(d.at("enrollment"), "enrollment");
      spec.noise = d.value("noise", 0.0);
      for (const auto& s : d.value("scenarios", json::array())) {
        std::vector<std::size_t> scenario;
        for (const auto& i : s) {
          const auto one_based = i.get<std::size_t>();
          if (one_based == 0) throw InvalidArgument("system numbers start at 1");
          scenario.push_back(one_based - 1);
        }
        spec.scenarios.push_back(std::move(scenario));
      }
      c.deployment = std::move(spec);
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["architecture"] = to_string(c.architecture);
  j["two_factor"] = c.two_factor;
  j["n"] = c.n;
  if (c.code.h) {
    j["code"] = {{"H", io::matrix_to_json(*c.code.h)}};
  } else if (c.code.m) {
    j["code"] = {{"m", c.code.m}, {"seed", c.code.seed}};
  }
  j["tie_policy"] =
      c.ties == commit::TiePolicy::kReject ? "reject" : "lexicographic";
  j["transform"] = {
      {"kind", c.transform == cancelable::TransformKind::kPermuteSalt
                   ? "permute_salt"
                   : "projection"},
      {"rows", c.projection_rows}};
  j["tau"] = c.tau;
  j["taus"] = c.taus;
  j["source"] = {{"p", c.p}, {"p_prime", c.p_prime}};
  json views = json::array();
  for (const auto& v : c.views) views.push_back(v.label());
  j["views"] = views;
  j["trials"] = c.trials;
  j["exact"] = c.exact;
  j["seed"] = c.seed;
  j["smc"] = {{"prime_bits", c.prime_bits}, {"theta", c.theta}};
  if (c.deployment) {
    json systems = json::array();
    for (const auto& h : c.deployment->systems) {
      systems.push_back(io::matrix_to_json(h));
    }
    json scenarios = json::array();
    for (const auto& s : c.deployment->scenarios) {
      json one = json::array();
      for (std::size_t i : s) one.push_back(i + 1);
      scenarios.push_back(one);
    }
    j["deployment"] = {{"systems", systems},
                       {"enrollment", c.deployment->enrollment.to_string()},
                       {"noise", c.deployment->noise},
                       {"scenarios", scenarios}};
  }
  return j;
}

ExperimentConfig preset(const std::string& name) {
  if (name == "sidebar-b") {
    return from_json(json::parse(R"({
      "name": "sidebar-b",
      "architecture": "sketch",
      "n": 4,
      "code": {"H": ["1011", "0111"]},
      "tau": 0.0,
      "source": {"p": 0.1},
      "views": ["none", "S", "A"],
      "exact": true,
      "seed": 1,
      "deployment": {
        "systems": [["1011", "0111"], ["1011", "0101"], ["1110", "1101"]],
        "enrollment": "1011",
        "scenarios": [[1], [1, 1], [1, 2], [1, 3]]
      }
    })"));
  }
  if (name == "bsc16") {
    return from_json(json::parse(R"({
      "name": "bsc16",
      "architecture": "sketch",
      "n": 16,
      "code": {"m": 12, "seed": 16},
      "tau": 0.125,
      "source": {"p": 0.05},
      "views": ["none", "S", "A"],
      "trials": 20000,
      "exact": true,
      "seed": 16
    })"));
  }
  throw InvalidArgument("unknown preset '" + name + "' (available: sidebar-b, bsc16)");
}

std::vector<std::string> preset_names() { return {"sidebar-b", "bsc16"}; }

std::shared_ptr<const gf2::LinearCode> build_code(const ExperimentConfig& c) {
  if (c.code.h) return std::make_shared<const gf2::LinearCode>(*c.code.h);
  Rng rng = Rng::Stream(c.code.seed, "config.random_code");
  return std::make_shared<const gf2::LinearCode>(
      gf2::LinearCode::Random(c.n, c.code.m, rng));
}

std::unique_ptr<metrics::AuthScheme> build_scheme(const ExperimentConfig& c) {
  c.validate();
  switch (c.architecture) {
    case Architecture::kSketch:
      return std::make_unique<metrics::SketchScheme>(
          sketch::SketchSystem(build_code(c), c.tau, c.two_factor), c.seed);
    case Architecture::kCommit:
      return std::make_unique<metrics::CommitScheme>(
          commit::CommitSystem(build_code(c), c.tau, c.ties, c.two_factor),
          c.seed);
    case Architecture::kCancelable:
      return std::make_unique<metrics::CancelableScheme>(
          c.transform, c.n, c.tau, c.projection_rows, c.seed);
    case Architecture::kSmc:
      // The encrypted matcher decides exactly as plaintext Hamming matching.
      return std::make_unique<metrics::PlainScheme>(
          c.n, static_cast<double>(c.theta) / static_cast<double>(c.n));
  }
  throw InvalidArgument("unknown architecture");
}

multisys::Deployment build_deployment(const ExperimentConfig& c) {
  if (!c.deployment) throw InvalidArgument("config has no deployment section");
  std::vector<sketch::SketchSystem> systems;
  for (const auto& h : c.deployment->systems) {
    systems.emplace_back(std::make_shared<const gf2::LinearCode>(h), c.tau);
  }
  if (c.deployment->noise > 0.0) {
    return multisys::Deployment::Noisy(std::move(systems),
                                       c.deployment->enrollment,
                                       c.deployment->noise, c.seed);
  }
  return multisys::Deployment::Identical(std::move(systems),
                                         c.deployment->enrollment);
}

}  // namespace securebio::config
