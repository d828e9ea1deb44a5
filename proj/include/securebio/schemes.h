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

#ifndef SECUREBIO_SCHEMES_H_
#define SECUREBIO_SCHEMES_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "securebio/bitvec.h"
#include "securebio/cancelable.h"
#include "securebio/commit.h"
#include "securebio/gf2.h"
#include "securebio/rng.h"
#include "securebio/sketch.h"

// Uniform accept-oracle view of the template-protection architectures, used
// by the metrics engine and by the linkage-attack simulator.
//
// Every scheme maps a presented (probe, key) pair into a "matching domain"
// and thresholds an integer distance there against tau * matching_length().
namespace securebio::metrics {

using cancelable::TransformKey;

/// Largest n for which schemes precompute coset-leader weights.
inline constexpr std::size_t kLeaderTableMaxLength = 24;

/// Stored data S and the user's key K produced by one enrollment.
struct Enrolled {
  BitVector stored;
  std::optional<TransformKey> key;
};

/// One outcome of the enrollment randomness for a fixed A.
struct EnrollmentOutcome {
  double probability = 0.0;
  BitVector stored;
  BitVector key;  // key material visible to an adversary holding K
};

class AuthScheme {
 public:
  virtual ~AuthScheme() = default;

  virtual std::string name() const = 0;
  virtual std::size_t n() const = 0;
  /// Nominal threshold.
  virtual double tau() const = 0;
  virtual bool keyed() const = 0;
  virtual std::size_t matching_length() const { return n(); }

  virtual Enrolled enroll(const BitVector& a, Rng& rng) const = 0;

  /// Maps a presented probe into the matching domain.
  virtual BitVector present(const BitVector& probe,
                            const std::optional<TransformKey>& key) const;

  /// Distance the decision thresholds; nullopt means the matcher refuses
  /// the presentation outright.
  virtual std::optional<std::size_t> match_distance(
      const BitVector& stored, const BitVector& presented) const = 0;

  bool accepts_presented(const BitVector& stored, const BitVector& presented,
                         double tau) const;
  bool accepts(const Enrolled& e, const BitVector& probe,
               const std::optional<TransformKey>& key, double tau) const;

  /// All enrollment outcomes for A = a with their probabilities. Keyed
  /// schemes enumerate the salt with the permutation held fixed.
  virtual std::vector<EnrollmentOutcome> enumerate_enrollment(
      const BitVector& a) const;

  /// FAR and FRR are the same for every enrollment outcome (the acceptance
  /// region of any template is a translate of a fixed set).
  virtual bool translation_invariant() const = 0;
  /// An impostor's presentation is uniform over the matching domain.
  virtual bool uniform_presentation() const { return true; }

  /// Key an impostor without K would present.
  virtual std::optional<TransformKey> random_key(Rng& rng) const;
  /// A key that maps `probe` onto `target` in the matching domain, when the
  /// construction lets anyone choose one (free salt). nullopt otherwise.
  virtual std::optional<TransformKey> forge_key(const BitVector& probe,
                                                const BitVector& target,
                                                Rng& rng) const;
  /// Some matching-domain point at distance zero from `stored`.
  virtual BitVector zero_distance_point(const BitVector& stored,
                                        Rng& rng) const = 0;

  virtual std::size_t storage_bits(const Enrolled& e) const = 0;
};

class SketchScheme : public AuthScheme {
 public:
  /// `permutation_seed` fixes the permutation used by enumerate_enrollment.
  explicit SketchScheme(sketch::SketchSystem system,
                        std::uint64_t permutation_seed = 0);

  const sketch::SketchSystem& system() const { return system_; }

  std::string name() const override;
  std::size_t n() const override { return system_.n(); }
  double tau() const override { return system_.tau(); }
  bool keyed() const override { return system_.two_factor(); }
  Enrolled enroll(const BitVector& a, Rng& rng) const override;
  std::optional<std::size_t> match_distance(
      const BitVector& stored, const BitVector& presented) const override;
  std::vector<EnrollmentOutcome> enumerate_enrollment(
      const BitVector& a) const override;
  bool translation_invariant() const override { return true; }
  std::optional<TransformKey> random_key(Rng& rng) const override;
  std::optional<TransformKey> forge_key(const BitVector& probe,
                                        const BitVector& target,
                                        Rng& rng) const override;
  BitVector zero_distance_point(const BitVector& stored,
                                Rng& rng) const override;
  std::size_t storage_bits(const Enrolled& e) const override;

 private:
  sketch::SketchSystem system_;
  std::vector<std::size_t> fixed_permutation_;
  std::shared_ptr<const gf2::CosetLeaderTable> leaders_;  // null for large n
};

class CommitScheme : public AuthScheme {
 public:
  explicit CommitScheme(commit::CommitSystem system,
                        std::uint64_t permutation_seed = 0);

  std::string name() const override;
  std::size_t n() const override { return system_.n(); }
  double tau() const override { return system_.tau(); }
  bool keyed() const override { return system_.two_factor(); }
  Enrolled enroll(const BitVector& a, Rng& rng) const override;
  std::optional<std::size_t> match_distance(
      const BitVector& stored, const BitVector& presented) const override;
  std::vector<EnrollmentOutcome> enumerate_enrollment(
      const BitVector& a) const override;
  bool translation_invariant() const override { return true; }
  std::optional<TransformKey> random_key(Rng& rng) const override;
  std::optional<TransformKey> forge_key(const BitVector& probe,
                                        const BitVector& target,
                                        Rng& rng) const override;
  BitVector zero_distance_point(const BitVector& stored,
                                Rng& rng) const override;
  std::size_t storage_bits(const Enrolled& e) const override;

 private:
  commit::CommitSystem system_;
  std::vector<std::size_t> fixed_permutation_;
  std::shared_ptr<const gf2::CosetLeaderTable> leaders_;
};

/// Matching between distorted vectors under a user key.
class CancelableScheme : public AuthScheme {
 public:
  /// `rows` is only used for random projections.
  CancelableScheme(cancelable::TransformKind kind, std::size_t n, double tau,
                   std::size_t rows = 0, std::uint64_t permutation_seed = 0);

  std::string name() const override;
  std::size_t n() const override { return n_; }
  double tau() const override { return tau_; }
  bool keyed() const override { return true; }
  std::size_t matching_length() const override;
  Enrolled enroll(const BitVector& a, Rng& rng) const override;
  std::optional<std::size_t> match_distance(
      const BitVector& stored, const BitVector& presented) const override;
  std::vector<EnrollmentOutcome> enumerate_enrollment(
      const BitVector& a) const override;
  bool translation_invariant() const override;
  bool uniform_presentation() const override;
  std::optional<TransformKey> random_key(Rng& rng) const override;
  std::optional<TransformKey> forge_key(const BitVector& probe,
                                        const BitVector& target,
                                        Rng& rng) const override;
  BitVector zero_distance_point(const BitVector& stored,
                                Rng& rng) const override;
  std::size_t storage_bits(const Enrolled& e) const override;

 private:
  cancelable::TransformKind kind_;
  std::size_t n_;
  double tau_;
  std::size_t rows_;
  std::vector<std::size_t> fixed_permutation_;
};

/// Unprotected Hamming matcher (stores A itself); the accuracy baseline.
class PlainScheme : public AuthScheme {
 public:
  PlainScheme(std::size_t n, double tau);

  std::string name() const override { return "plain"; }
  std::size_t n() const override { return n_; }
  double tau() const override { return tau_; }
  bool keyed() const override { return false; }
  Enrolled enroll(const BitVector& a, Rng& rng) const override;
  std::optional<std::size_t> match_distance(
      const BitVector& stored, const BitVector& presented) const override;
  std::vector<EnrollmentOutcome> enumerate_enrollment(
      const BitVector& a) const override;
  bool translation_invariant() const override { return true; }
  BitVector zero_distance_point(const BitVector& stored,
                                Rng& rng) const override;
  std::size_t storage_bits(const Enrolled& e) const override;

 private:
  std::size_t n_;
  double tau_;
};

}  // namespace securebio::metrics

#endif  // SECUREBIO_SCHEMES_H_
