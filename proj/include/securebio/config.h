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

#ifndef SECUREBIO_CONFIG_H_
#define SECUREBIO_CONFIG_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "securebio/commit.h"
#include "securebio/metrics.h"
#include "securebio/multisys.h"
#include "securebio/source.h"

// Experiment configuration (JSON) and the built-in presets.
//
//   {
//     "name": "...",
//     "architecture": "sketch" | "commit" | "cancelable" | "smc",
//     "two_factor": false,
//     "n": 4,
//     "code": {"H": ["1011", "0111"]}  or  {"m": 2, "seed": 7},
//     "tie_policy": "lexicographic" | "reject",
//     "transform": {"kind": "permute_salt" | "projection", "rows": 8},
//     "tau": 0.0, "taus": [0, 0.25],
//     "source": {"p": 0.1, "p_prime": 0.5},
//     "views": ["none", "S", "A", "S+K"],
//     "trials": 10000, "exact": true, "seed": 1,
//     "smc": {"prime_bits": 64, "theta": 1},
//     "deployment": {"systems": [["1011", "0111"], ...],
//                    "enrollment": "1011", "noise": 0.0,
//                    "scenarios": [[1], [1, 2]]}
//   }
//
// System numbers in "scenarios" are 1-based.
namespace securebio::config {

enum class Architecture { kSketch, kCommit, kCancelable, kSmc };

std::string to_string(Architecture a);
Architecture parse_architecture(const std::string& s);

struct CodeSpec {
  std::optional<gf2::BitMatrix> h;  // explicit parity-check matrix
  std::size_t m = 0;                // otherwise: random m x n code
  std::uint64_t seed = 0;
};

struct DeploymentSpec {
  std::vector<gf2::BitMatrix> systems;
  BitVector enrollment;
  double noise = 0.0;
  std::vector<std::vector<std::size_t>> scenarios;  // 0-based internally
};

struct ExperimentConfig {
  std::string name = "custom";
  Architecture architecture = Architecture::kSketch;
  bool two_factor = false;
  std::size_t n = 0;
  CodeSpec code;
  commit::TiePolicy ties = commit::TiePolicy::kLexicographic;
  cancelable::TransformKind transform = cancelable::TransformKind::kPermuteSalt;
  std::size_t projection_rows = 0;
  double tau = 0.0;
  std::vector<double> taus;
  double p = 0.05;
  double p_prime = 0.5;
  std::vector<metrics::AttackView> views;
  std::size_t trials = 10000;
  bool exact = true;
  std::uint64_t seed = 1;
  unsigned prime_bits = 64;
  std::size_t theta = 0;
  std::optional<DeploymentSpec> deployment;

  /// Throws InvalidArgument describing the first violated precondition.
  void validate() const;
  metrics::EvalOptions eval_options() const;
};

/// Parses and validates. Throws FormatError or InvalidArgument.
ExperimentConfig from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

/// "sidebar-b" (the four-bit worked example with its three systems) or
/// "bsc16" (BSC demo at n = 16). Throws InvalidArgument otherwise.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

std::shared_ptr<const gf2::LinearCode> build_code(const ExperimentConfig& c);
std::unique_ptr<metrics::AuthScheme> build_scheme(const ExperimentConfig& c);
/// Requires a "deployment" section.
multisys::Deployment build_deployment(const ExperimentConfig& c);

}  // namespace securebio::config

#endif  // SECUREBIO_CONFIG_H_
