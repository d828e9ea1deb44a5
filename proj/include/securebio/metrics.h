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

#ifndef SECUREBIO_METRICS_H_
#define SECUREBIO_METRICS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "securebio/schemes.h"

// Accuracy, privacy and security metrics over the AuthScheme interface.
//
// Exact values enumerate all 2^n presentations (and noise patterns) on one
// enrollment, which is valid for translation-invariant schemes. Monte Carlo
// values average over independent users; trials are split into a fixed
// number of chunks, each with its own derived RNG stream, so results do not
// depend on the thread count.
namespace securebio::metrics {

enum class Method { kExact, kMonteCarlo };

std::string to_string(Method m);

struct EvalOptions {
  bool exact = true;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  /// Independent RNG chunks; also the maximum number of threads.
  std::size_t chunks = 8;
  std::size_t threads = 0;  // 0: hardware concurrency
  /// Largest 2^n enumerated in exact mode.
  std::size_t cap = std::size_t{1} << 24;
};

/// A probability with its Monte Carlo standard error (0 when exact).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  Method method = Method::kExact;
  std::size_t trials = 0;
};

/// Means (with standard errors) of per-trial outputs. fn fills one value per
/// output for each trial; trials follow the chunked-stream contract above.
std::vector<Estimate> monte_carlo_means(
    const EvalOptions& opt, std::string_view label, std::size_t outputs,
    const std::function<void(Rng&, std::vector<double>&)>& fn);

/// Distribution of the matcher distance. mass[d] for d <= length; the final
/// slot holds refusals (match_distance == nullopt).
struct DistanceHistogram {
  std::size_t length = 0;
  std::vector<double> mass;
  Method method = Method::kExact;
  std::size_t trials = 0;

  explicit DistanceHistogram(std::size_t len = 0)
      : length(len), mass(len + 2, 0.0) {}
  void add(const std::optional<std::size_t>& d, double w = 1.0);
  void merge(const DistanceHistogram& other);
  /// Probability that the threshold test at tau passes.
  Estimate accept_probability(double tau) const;
};

/// Impostor distances: uniform-random A' against the enrolled template.
DistanceHistogram impostor_histogram(const AuthScheme& scheme,
                                     const EvalOptions& opt);
/// Genuine distances: probe = A xor E with E ~ Bernoulli(p)^n, correct key.
DistanceHistogram genuine_histogram(const AuthScheme& scheme, double p,
                                    const EvalOptions& opt);

Estimate far(const AuthScheme& scheme, double tau, const EvalOptions& opt);
Estimate frr(const AuthScheme& scheme, double tau, double p,
             const EvalOptions& opt);

struct RocPoint {
  double tau = 0.0;
  Estimate far;
  Estimate frr;
};

std::vector<RocPoint> roc(const AuthScheme& scheme, double p,
                          const std::vector<double>& taus,
                          const EvalOptions& opt);

/// Every distinct operating point: tau = d / matching_length for d = 0..len.
std::vector<double> threshold_grid(const AuthScheme& scheme,
                                   double tau_max = 0.5);

struct Eer {
  double value = 0.0;
  double tau = 0.0;
  /// False when FAR - FRR never changes sign on the grid; value and tau are
  /// then taken at the endpoint closest to the crossing.
  bool bracketed = false;
};

/// Linear interpolation of FAR - FRR between adjacent grid points.
Eer equal_error_rate(const std::vector<RocPoint>& curve);

// ------------------------------------------------------------------ privacy

/// What the adversary observes besides the matcher.
struct AttackView {
  bool stored = false;     // S
  bool key = false;        // K
  bool biometric = false;  // A

  std::string label() const;  // "S", "S+K", "A", "A+K", "S+A+K", "none"
  static AttackView Parse(const std::string& label);
  friend bool operator==(const AttackView&, const AttackView&) = default;
};

using EnrollmentEnumerator =
    std::function<std::vector<EnrollmentOutcome>(const BitVector&)>;

EnrollmentEnumerator enumerator_of(const AuthScheme& scheme);

/// Stores A or its complement with probability 1/2 each.
EnrollmentEnumerator bit_negation_enumerator();

/// Joint distribution of two discrete variables keyed by string labels.
class JointDistribution {
 public:
  void add(const std::string& x, const std::string& y, double p);
  double entropy_x() const;
  double entropy_y() const;
  double joint_entropy() const;
  /// I(X;Y) in bits.
  double mutual_information() const;
  double total() const;

 private:
  std::map<std::pair<std::string, std::string>, double> joint_;
};

/// I(A; V) in bits for uniform A on {0,1}^n, V the stored data and/or key
/// material selected by `view` (the biometric itself is never part of V).
double privacy_leakage(const EnrollmentEnumerator& enumerate, std::size_t n,
                       const AttackView& view,
                       std::size_t cap = std::size_t{1} << 16);

/// Expected fraction of bits wrong under the per-bit MAP estimate of A
/// given the view: sum_v sum_i min(P(a_i = 0, v), P(a_i = 1, v)) / n.
double reconstruction_distortion(const EnrollmentEnumerator& enumerate,
                                 std::size_t n, const AttackView& view,
                                 std::size_t cap = std::size_t{1} << 16);

// ------------------------------------------------------------------ security

enum class AttackStrategy {
  kBlindGuess,          // random probe and key
  kReplayBiometric,     // genuine A with a guessed key
  kStoredDataForgery,   // probe built from S (plus K if held)
  kFullCompromise,      // A and K
};

std::string to_string(AttackStrategy s);
/// Information the strategy needs.
AttackView requirements(AttackStrategy s);
bool available(AttackStrategy s, const AttackView& view);
/// Strategies usable under `view`.
std::vector<AttackStrategy> strategies_for(const AttackView& view);

/// Distances of the strategy's presentations. Throws Unsupported when the
/// scheme gives the strategy nothing to build on (e.g. forging a projection
/// key without K).
DistanceHistogram strategy_histogram(const AuthScheme& scheme,
                                     AttackStrategy strategy,
                                     const AttackView& view,
                                     const EvalOptions& opt);

/// Success rate of one strategy at threshold tau.
Estimate attack_success(const AuthScheme& scheme, AttackStrategy strategy,
                        const AttackView& view, double tau,
                        const EvalOptions& opt);

struct SarResult {
  Estimate sar;
  AttackStrategy best = AttackStrategy::kBlindGuess;
};

/// Maximum success rate over the strategies available under `view`.
SarResult success_rate(const AuthScheme& scheme, const AttackView& view,
                       double tau, const EvalOptions& opt);

// ------------------------------------------------------------------ reports

struct ReportOptions {
  double p = 0.05;
  std::vector<double> taus;  // empty: threshold_grid
  std::vector<AttackView> views;
  EvalOptions eval;
};

struct ReportRow {
  double tau = 0.0;
  Estimate far;
  Estimate frr;
  std::vector<Estimate> sar;  // per view
};

struct Report {
  std::string scheme;
  std::size_t n = 0;
  double p = 0.0;
  Method method = Method::kExact;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<AttackView> views;
  std::vector<ReportRow> rows;
  std::vector<std::optional<double>> leakage;  // per view, when enumerable
  std::size_t storage_bits = 0;
  Eer eer;
};

Report evaluate(const AuthScheme& scheme, const ReportOptions& opt);

nlohmann::json to_json(const Report& r);
/// Columns: tau, far, frr, sar_<view>..., leakage_<view>..., storage_bits,
/// method, trials, stderr (largest standard error in the row).
std::string to_csv(const Report& r);

}  // namespace securebio::metrics

#endif  // SECUREBIO_METRICS_H_
