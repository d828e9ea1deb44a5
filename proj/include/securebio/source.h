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

#ifndef SECUREBIO_SOURCE_H_
#define SECUREBIO_SOURCE_H_

#include <cstdint>
#include <vector>

#include "securebio/bitvec.h"
#include "securebio/rng.h"

// Synthetic biometric sources: the binary-symmetric-channel user model and a
// minutia-cuboid feature extractor.
namespace securebio::source {

/// Intra-user variation is a BSC with crossover p; different users are
/// related by crossover p_prime (0.5 means independent).
struct BscUserModel {
  std::size_t n = 0;
  double p = 0.0;
  double p_prime = 0.5;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless n >= 1 and 0 <= p < p_prime <= 0.5.
  void validate() const;
};

/// Enrollment vector A of user `user`: n i.i.d. fair bits.
BitVector sample_enrollment(const BscUserModel& model, std::uint64_t user = 0);

/// Probe of the same user (crossover p) or of someone else (crossover
/// p_prime). `trial` selects an independent noise draw.
BitVector sample_probe(const BscUserModel& model, const BitVector& enrollment,
                       bool same_user, std::uint64_t trial = 0);

struct Minutia {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct Bounds {
  double x_max = 0.0;
  double y_max = 0.0;
  double theta_max = 0.0;
};

/// Minutiae of one impression. Construction wraps theta into
/// [0, theta_max) and rejects points outside [0, x_max] x [0, y_max].
class MinutiaMap {
 public:
  MinutiaMap() = default;
  MinutiaMap(std::vector<Minutia> points, Bounds bounds);

  const std::vector<Minutia>& points() const { return points_; }
  const Bounds& bounds() const { return bounds_; }

 private:
  std::vector<Minutia> points_;
  Bounds bounds_;
};

/// Axis-aligned box in X x Y x Theta. The theta interval wraps around when
/// theta_lo > theta_hi.
struct Cuboid {
  double x_lo = 0, x_hi = 0;
  double y_lo = 0, y_hi = 0;
  double theta_lo = 0, theta_hi = 0;

  bool contains(const Minutia& m) const;
  double volume(const Bounds& bounds) const;
};

struct CuboidBank {
  std::vector<Cuboid> cuboids;
  std::vector<double> thresholds;

  std::size_t size() const { return cuboids.size(); }
  void validate() const;
};

/// n cuboids drawn uniformly within `bounds`, each with volume at least
/// `min_volume_fraction` of the whole space.
std::vector<Cuboid> random_cuboids(const Bounds& bounds, std::size_t n,
                                   double min_volume_fraction, Rng& rng);

std::size_t count_in(const MinutiaMap& map, const Cuboid& cuboid);

/// Threshold i is the median cuboid-i count over the corpus (midpoint of
/// the two central values for an even corpus). Throws on an empty corpus.
CuboidBank calibrate_thresholds(const std::vector<MinutiaMap>& corpus,
                                std::vector<Cuboid> cuboids);

/// Bit i is 1 iff the count in cuboid i is >= threshold i.
BitVector extract_features(const MinutiaMap& map, const CuboidBank& bank);

/// Median with the even-size midpoint convention.
double median(std::vector<double> values);

/// Random impression: `count` minutiae uniform within bounds.
MinutiaMap random_minutia_map(const Bounds& bounds, std::size_t count,
                              Rng& rng);

/// Re-impression of `base`: each point jittered by up to `jitter` in x/y
/// (theta by jitter * theta_max / x_max), clamped into bounds, and dropped
/// with probability `drop`.
MinutiaMap perturb_minutia_map(const MinutiaMap& base, double jitter,
                               double drop, Rng& rng);

}  // namespace securebio::source

#endif  // SECUREBIO_SOURCE_H_
