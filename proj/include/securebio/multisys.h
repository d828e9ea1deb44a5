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

#ifndef SECUREBIO_MULTISYS_H_
#define SECUREBIO_MULTISYS_H_

#include <vector>

#include "securebio/metrics.h"
#include "securebio/sketch.h"

// One biometric enrolled on several keyless sketch systems, and the linkage
// attacks that combine their stored syndromes.
namespace securebio::multisys {

struct Deployment {
  std::vector<sketch::SketchSystem> systems;
  std::vector<sketch::SketchTemplate> templates;  // one per system
  std::vector<BitVector> enrollments;             // what each system saw

  std::size_t n() const;
  std::size_t size() const { return systems.size(); }
  /// Every system enrolled the same vector.
  bool identical() const;
  void validate() const;

  /// All systems enroll `a`.
  static Deployment Identical(std::vector<sketch::SketchSystem> systems,
                              const BitVector& a);
  /// System i enrolls a xor Bernoulli(p_e)^n, drawn from stream (seed, i).
  static Deployment Noisy(std::vector<sketch::SketchSystem> systems,
                          const BitVector& a, double p_e, std::uint64_t seed);
};

/// Stored-data coset of system i, sorted.
std::vector<BitVector> coset_of(const Deployment& d, std::size_t system,
                                std::size_t cap = gf2::kDefaultEnumerationCap);

/// Vectors consistent with every compromised system's syndrome, sorted.
/// Repeated indices are allowed. Requires identical enrollments.
std::vector<BitVector> intersect_candidates(
    const Deployment& d, const std::vector<std::size_t>& compromised,
    std::size_t cap = gf2::kDefaultEnumerationCap);

/// Success rate of an attacker who presents a uniform member of the source
/// coset to the target system: |P_source ∩ accepted by target| / |P_source|.
double cross_sar(const Deployment& d, std::size_t source, std::size_t target,
                 double tau = 0.0,
                 std::size_t cap = gf2::kDefaultEnumerationCap);

/// Leakage in bits after each prefix of `order`: n - log2 |intersection|.
std::vector<double> cumulative_leakage(
    const Deployment& d, const std::vector<std::size_t>& order,
    std::size_t cap = gf2::kDefaultEnumerationCap);

/// rank([H_i; H_j]) for every pair (i, j).
std::vector<std::vector<std::size_t>> dependence_profile(const Deployment& d);

/// Monte Carlo linkage with noisy enrollments: each trial draws A, lets every
/// system enroll its own noisy copy, and presents a uniform member of the
/// source coset to the target.
struct NoisyLinkage {
  metrics::Estimate cross_sar;
  /// Probability that the true A survives the intersection of all cosets.
  metrics::Estimate a_in_intersection;
  double mean_candidates = 0.0;
};

NoisyLinkage noisy_linkage(const std::vector<sketch::SketchSystem>& systems,
                           double p_e, std::size_t source, std::size_t target,
                           double tau, const metrics::EvalOptions& opt);

/// Cross-architecture linkage through the accept-oracle interface: the
/// attacker turns the source's stored data (and key, when `source_key` is
/// held) into a biometric-domain probe and presents it to the target with a
/// guessed key. Enrollments are noisy copies with rate p_e.
metrics::Estimate mixed_cross_sar(const metrics::AuthScheme& source,
                                  const metrics::AuthScheme& target,
                                  bool source_key, double p_e, double tau,
                                  const metrics::EvalOptions& opt);

}  // namespace securebio::multisys

#endif  // SECUREBIO_MULTISYS_H_
