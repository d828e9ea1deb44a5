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

#ifndef SECUREBIO_EXPERIMENT_H_
#define SECUREBIO_EXPERIMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "securebio/config.h"
#include "securebio/metrics.h"
#include "securebio/multisys.h"

// Operations behind the command-line front end. Each returns JSON so that
// the CLI, the Python bindings and the tests all see the same results.
namespace securebio::experiment {

struct Enrollment {
  nlohmann::json tmpl;                // stored data
  std::optional<nlohmann::json> key;  // user-held key (two-factor, cancelable)
  std::optional<std::string> secret;  // released secret Z (commitment)
};

/// One enrollment of `a` under the configured architecture. Key and message
/// randomness come from (config.seed, "enroll").
Enrollment enroll(const config::ExperimentConfig& c, const BitVector& a);

struct Decision {
  bool accepted = false;
  nlohmann::json detail;
};

/// Authenticates `probe` against a stored template at the configured tau.
Decision authenticate(const config::ExperimentConfig& c,
                      const nlohmann::json& tmpl, const BitVector& probe,
                      const std::optional<nlohmann::json>& key = {});

/// Intersections, cross-SAR matrix, cumulative leakage per scenario and the
/// stacked-rank profile. Exact for identical enrollments, Monte Carlo
/// otherwise.
nlohmann::json linkage_report(const config::ExperimentConfig& c);

struct MetricsOutput {
  metrics::Report report;
  std::optional<nlohmann::json> linkage;
};

MetricsOutput run_metrics(const config::ExperimentConfig& c);
nlohmann::json to_json(const MetricsOutput& out);

/// SAR per configured view at the configured tau, with the winning strategy,
/// plus the linkage report when a deployment is configured.
nlohmann::json run_attacks(const config::ExperimentConfig& c);

// ------------------------------------------------------------ paper checks

/// The four-bit worked example: three parity-check matrices and the
/// enrolled vector.
struct WorkedExample {
  gf2::BitMatrix h1, h2, h3;
  BitVector a;
};

WorkedExample default_worked_example();
/// From a config's deployment section (first three systems).
WorkedExample worked_example_from(const config::ExperimentConfig& c);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // expected vs observed on failure
};

/// Every published value this toolkit reproduces, evaluated on `ex`.
std::vector<CheckResult> paper_check(const WorkedExample& ex);

}  // namespace securebio::experiment

#endif  // SECUREBIO_EXPERIMENT_H_
