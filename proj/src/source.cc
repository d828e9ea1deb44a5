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

#include "securebio/source.h"

#include <algorithm>
#include <cmath>

namespace securebio::source {

void BscUserModel::validate() const {
  if (n < 1) throw InvalidArgument("BSC model needs n >= 1");
  if (!(p >= 0.0 && p < p_prime && p_prime <= 0.5)) {
    throw InvalidArgument("BSC model needs 0 <= p < p_prime <= 0.5");
  }
}

BitVector sample_enrollment(const BscUserModel& model, std::uint64_t user) {
  model.validate();
  Rng rng = Rng::Stream(model.seed, "bsc.enrollment", user);
  return rng.bits(model.n);
}

BitVector sample_probe(const BscUserModel& model, const BitVector& enrollment,
                       bool same_user, std::uint64_t trial) {
  model.validate();
  require_size(enrollment, model.n, "enrollment");
  Rng rng = Rng::Stream(model.seed,
                        same_user ? "bsc.probe.genuine" : "bsc.probe.impostor",
                        trial);
  const double crossover = same_user ? model.p : model.p_prime;
  return enrollment ^ rng.bernoulli_bits(model.n, crossover);
}

namespace {

double wrap(double theta, double period) {
  if (period <= 0) return theta;
  double t = std::fmod(theta, period);
  if (t < 0) t += period;
  return t;
}

}  // namespace

MinutiaMap::MinutiaMap(std::vector<Minutia> points, Bounds bounds)
    : points_(std::move(points)), bounds_(bounds) {
  if (bounds_.x_max <= 0 || bounds_.y_max <= 0 || bounds_.theta_max <= 0) {
    throw InvalidArgument("minutia bounds must be positive");
  }
  for (auto& m : points_) {
    if (m.x < 0 || m.x > bounds_.x_max || m.y < 0 || m.y > bounds_.y_max) {
      throw InvalidArgument("minutia lies outside the map bounds");
    }
    m.theta = wrap(m.theta, bounds_.theta_max);
  }
}

bool Cuboid::contains(const Minutia& m) const {
  if (m.x < x_lo || m.x >= x_hi || m.y < y_lo || m.y >= y_hi) return false;
  if (theta_lo <= theta_hi) return m.theta >= theta_lo && m.theta < theta_hi;
  return m.theta >= theta_lo || m.theta < theta_hi;
}

double Cuboid::volume(const Bounds& bounds) const {
  const double dtheta = theta_lo <= theta_hi
                            ? theta_hi - theta_lo
                            : bounds.theta_max - theta_lo + theta_hi;
  return (x_hi - x_lo) * (y_hi - y_lo) * dtheta;
}

void CuboidBank::validate() const {
  if (cuboids.size() != thresholds.size()) {
    throw InvalidArgument("cuboid bank needs one threshold per cuboid");
  }
  for (const auto& c : cuboids) {
    if (!(c.x_lo < c.x_hi && c.y_lo < c.y_hi && c.theta_lo != c.theta_hi)) {
      throw InvalidArgument("cuboid is empty");
    }
  }
}

std::vector<Cuboid> random_cuboids(const Bounds& bounds, std::size_t n,
                                   double min_volume_fraction, Rng& rng) {
  if (min_volume_fraction <= 0 || min_volume_fraction >= 1) {
    throw InvalidArgument("min_volume_fraction must lie in (0, 1)");
  }
  const double total = bounds.x_max * bounds.y_max * bounds.theta_max;
  std::vector<Cuboid> out;
  out.reserve(n);
  while (out.size() < n) {
    auto interval = [&rng](double extent) {
      double a = rng.uniform(0, extent);
      double b = rng.uniform(0, extent);
      if (a > b) std::swap(a, b);
      return std::pair{a, b};
    };
    auto [x0, x1] = interval(bounds.x_max);
    auto [y0, y1] = interval(bounds.y_max);
    const double t0 = rng.uniform(0, bounds.theta_max);
    const double t1 = rng.uniform(0, bounds.theta_max);
    Cuboid c{x0, x1, y0, y1, t0, t1};
    if (c.volume(bounds) >= min_volume_fraction * total) out.push_back(c);
  }
  return out;
}

std::size_t count_in(const MinutiaMap& map, const Cuboid& cuboid) {
  return static_cast<std::size_t>(
      std::count_if(map.points().begin(), map.points().end(),
                    [&](const Minutia& m) { return cuboid.contains(m); }));
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

CuboidBank calibrate_thresholds(const std::vector<MinutiaMap>& corpus,
                                std::vector<Cuboid> cuboids) {
  if (corpus.empty()) throw InvalidArgument("calibration corpus is empty");
  CuboidBank bank;
  bank.thresholds.reserve(cuboids.size());
  for (const auto& c : cuboids) {
    std::vector<double> counts;
    counts.reserve(corpus.size());
    for (const auto& map : corpus) {
      counts.push_back(static_cast<double>(count_in(map, c)));
    }
    bank.thresholds.push_back(median(std::move(counts)));
  }
  bank.cuboids = std::move(cuboids);
  bank.validate();
  return bank;
}

BitVector extract_features(const MinutiaMap& map, const CuboidBank& bank) {
  bank.validate();
  BitVector bits(bank.size());
  for (std::size_t i = 0; i < bank.size(); ++i) {
    bits.set(i, static_cast<double>(count_in(map, bank.cuboids[i])) >=
                    bank.thresholds[i]);
  }
  return bits;
}

MinutiaMap random_minutia_map(const Bounds& bounds, std::size_t count,
                              Rng& rng) {
  std::vector<Minutia> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts.push_back({rng.uniform(0, bounds.x_max), rng.uniform(0, bounds.y_max),
                   rng.uniform(0, bounds.theta_max)});
  }
  return MinutiaMap(std::move(pts), bounds);
}

MinutiaMap perturb_minutia_map(const MinutiaMap& base, double jitter,
                               double drop, Rng& rng) {
  const Bounds& b = base.bounds();
  std::vector<Minutia> pts;
  for (const auto& m : base.points()) {
    if (rng.bernoulli(drop)) continue;
    const double tj = jitter * b.theta_max / b.x_max;
    pts.push_back({std::clamp(m.x + rng.uniform(-jitter, jitter), 0.0, b.x_max),
                   std::clamp(m.y + rng.uniform(-jitter, jitter), 0.0, b.y_max),
                   m.theta + rng.uniform(-tj, tj)});
  }
  return MinutiaMap(std::move(pts), b);
}

}  // namespace securebio::source
