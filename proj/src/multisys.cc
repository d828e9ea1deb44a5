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

#include "securebio/multisys.h"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace securebio::multisys {

std::size_t Deployment::n() const {
  return systems.empty() ? 0 : systems.front().n();
}

bool Deployment::identical() const {
  return std::all_of(enrollments.begin(), enrollments.end(),
                     [&](const BitVector& e) { return e == enrollments.front(); });
}

void Deployment::validate() const {
  if (systems.empty()) throw InvalidArgument("deployment has no systems");
  if (templates.size() != systems.size() ||
      enrollments.size() != systems.size()) {
    throw InvalidArgument("deployment needs one template per system");
  }
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (systems[i].n() != n()) {
      throw LengthMismatch("system " + std::to_string(i + 1) + " has n = " +
                           std::to_string(systems[i].n()) + ", expected " +
                           std::to_string(n()));
    }
    if (systems[i].two_factor()) {
      throw InvalidArgument("linkage deployments use keyless systems");
    }
    require_size(templates[i].syndrome, systems[i].m(), "syndrome");
  }
}

Deployment Deployment::Identical(std::vector<sketch::SketchSystem> systems,
                                 const BitVector& a) {
  Deployment d;
  for (const auto& s : systems) {
    d.templates.push_back(sketch::enroll(s, a));
    d.enrollments.push_back(a);
  }
  d.systems = std::move(systems);
  d.validate();
  return d;
}

Deployment Deployment::Noisy(std::vector<sketch::SketchSystem> systems,
                             const BitVector& a, double p_e,
                             std::uint64_t seed) {
  if (!(p_e >= 0.0 && p_e <= 1.0)) {
    throw InvalidArgument("enrollment noise must lie in [0, 1]");
  }
  Deployment d;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    Rng rng = Rng::Stream(seed, "multisys.enrollment_noise", i);
    const BitVector seen = a ^ rng.bernoulli_bits(a.size(), p_e);
    d.templates.push_back(sketch::enroll(systems[i], seen));
    d.enrollments.push_back(seen);
  }
  d.systems = std::move(systems);
  d.validate();
  return d;
}

namespace {

void check_index(const Deployment& d, std::size_t i) {
  if (i >= d.size()) {
    throw InvalidArgument("system index " + std::to_string(i) +
                          " out of range (deployment has " +
                          std::to_string(d.size()) + " systems)");
  }
}

}  // namespace

std::vector<BitVector> coset_of(const Deployment& d, std::size_t system,
                                std::size_t cap) {
  check_index(d, system);
  return gf2::enumerate_coset(d.systems[system].code(),
                              d.templates[system].syndrome, cap)
      .members;
}

std::vector<BitVector> intersect_candidates(
    const Deployment& d, const std::vector<std::size_t>& compromised,
    std::size_t cap) {
  d.validate();
  if (!d.identical()) {
    throw InvalidArgument(
        "exact intersection needs identical enrollments; use noisy_linkage");
  }
  if (compromised.empty()) throw InvalidArgument("no compromised systems");
  std::vector<BitVector> out = coset_of(d, compromised.front(), cap);
  for (std::size_t t = 1; t < compromised.size(); ++t) {
    const std::vector<BitVector> next = coset_of(d, compromised[t], cap);
    std::vector<BitVector> kept;
    std::set_intersection(out.begin(), out.end(), next.begin(), next.end(),
                          std::back_inserter(kept));
    out = std::move(kept);
  }
  return out;
}

double cross_sar(const Deployment& d, std::size_t source, std::size_t target,
                 double tau, std::size_t cap) {
  d.validate();
  check_index(d, target);
  const std::vector<BitVector> members = coset_of(d, source, cap);
  const sketch::SketchSystem system = d.systems[target].with_tau(tau);
  std::size_t hits = 0;
  for (const auto& x : members) {
    if (sketch::authenticate(system, d.templates[target], x).accepted) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(members.size());
}

std::vector<double> cumulative_leakage(const Deployment& d,
                                       const std::vector<std::size_t>& order,
                                       std::size_t cap) {
  std::vector<double> out;
  std::vector<std::size_t> prefix;
  for (std::size_t i : order) {
    prefix.push_back(i);
    const auto candidates = intersect_candidates(d, prefix, cap);
    out.push_back(static_cast<double>(d.n()) -
                  std::log2(static_cast<double>(candidates.size())));
  }
  return out;
}

std::vector<std::vector<std::size_t>> dependence_profile(const Deployment& d) {
  d.validate();
  std::vector<std::vector<std::size_t>> ranks(
      d.size(), std::vector<std::size_t>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      ranks[i][j] = d.systems[i]
                        .code()
                        .parity_check()
                        .stack(d.systems[j].code().parity_check())
                        .rank();
    }
  }
  return ranks;
}

NoisyLinkage noisy_linkage(const std::vector<sketch::SketchSystem>& systems,
                           double p_e, std::size_t source, std::size_t target,
                           double tau, const metrics::EvalOptions& opt) {
  if (systems.empty()) throw InvalidArgument("deployment has no systems");
  if (source >= systems.size() || target >= systems.size()) {
    throw InvalidArgument("system index out of range");
  }
  const std::size_t n = systems.front().n();
  const sketch::SketchSystem target_system = systems[target].with_tau(tau);
  const auto means = metrics::monte_carlo_means(
      opt, "multisys.noisy_linkage", 3, [&](Rng& rng, std::vector<double>& out) {
        const BitVector a = rng.bits(n);
        Deployment d = Deployment::Noisy(systems, a, p_e, rng.next());
        const auto& src = d.systems[source];
        // Uniform member of the source coset.
        const BitVector guess =
            src.code().coset_representative(d.templates[source].syndrome) ^
            src.code().encode(rng.bits(src.code().k()));
        out[0] = sketch::authenticate(target_system, d.templates[target], guess)
                         .accepted
                     ? 1.0
                     : 0.0;
        std::size_t survivors = 0;
        bool has_a = false;
        for (const auto& x : coset_of(d, 0)) {
          bool all = true;
          for (std::size_t i = 1; i < d.size() && all; ++i) {
            all = gf2::syndrome(d.systems[i].code(), x) == d.templates[i].syndrome;
          }
          if (all) {
            ++survivors;
            has_a = has_a || x == a;
          }
        }
        out[1] = has_a ? 1.0 : 0.0;
        out[2] = static_cast<double>(survivors);
      });
  return NoisyLinkage{means[0], means[1], means[2].value};
}

metrics::Estimate mixed_cross_sar(const metrics::AuthScheme& source,
                                  const metrics::AuthScheme& target,
                                  bool source_key, double p_e, double tau,
                                  const metrics::EvalOptions& opt) {
  if (source.n() != target.n()) {
    throw LengthMismatch("source and target systems differ in n");
  }
  if (source.keyed() && !source_key) {
    throw Unsupported(source.name() +
                      ": stored data alone yields no biometric-domain probe");
  }
  const std::size_t n = source.n();
  return metrics::monte_carlo_means(
             opt, "multisys.mixed_cross_sar", 1,
             [&](Rng& rng, std::vector<double>& out) {
               const BitVector a = rng.bits(n);
               const auto es = source.enroll(a ^ rng.bernoulli_bits(n, p_e), rng);
               const auto et = target.enroll(a ^ rng.bernoulli_bits(n, p_e), rng);
               BitVector probe = source.zero_distance_point(es.stored, rng);
               if (source.keyed()) {
                 if (source.matching_length() != n) {
                   throw Unsupported(source.name() + ": key is not invertible");
                 }
                 probe = cancelable::invert(*es.key, probe);
               }
               out[0] = target.accepts(et, probe, target.random_key(rng), tau)
                            ? 1.0
                            : 0.0;
             })
      .front();
}

}  // namespace securebio::multisys
