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

#include "securebio/schemes.h"

#include <cmath>

namespace securebio::metrics {

using cancelable::TransformKind;

namespace {

std::vector<std::size_t> fixed_permutation(std::size_t n, std::uint64_t seed) {
  Rng rng = Rng::Stream(seed, "scheme.fixed_permutation");
  return rng.permutation(n);
}

std::shared_ptr<const gf2::CosetLeaderTable> maybe_leaders(
    const gf2::LinearCode& code) {
  if (code.n() > kLeaderTableMaxLength || code.m() >= 64) return nullptr;
  return std::make_shared<const gf2::CosetLeaderTable>(code);
}

// Outcomes over every salt (2^n) for a fixed permutation; `stored_of` maps
// the transformed vector to stored data, possibly several outcomes each.
template <typename Fn>
std::vector<EnrollmentOutcome> enumerate_salts(
    const BitVector& a, const std::vector<std::size_t>& permutation,
    Fn&& outcomes_of) {
  const std::size_t n = a.size();
  gf2::check_enumeration(n, gf2::kDefaultEnumerationCap, "salt enumeration");
  const double weight = std::ldexp(1.0, -static_cast<int>(n));
  const BitVector permuted = cancelable::transform(
      cancelable::make_permute_salt_key(permutation, BitVector(n)), a);
  std::vector<EnrollmentOutcome> out;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t v = 0; v < count; ++v) {
    const BitVector salt = BitVector::FromInteger(v, n);
    for (auto& [p, stored] : outcomes_of(permuted ^ salt)) {
      out.push_back(EnrollmentOutcome{weight * p, std::move(stored), salt});
    }
  }
  return out;
}

std::optional<TransformKey> forge_permute_salt(const BitVector& probe,
                                               const BitVector& target,
                                               Rng& rng) {
  require_size(target, probe.size(), "target");
  auto perm = rng.permutation(probe.size());
  const BitVector permuted = cancelable::transform(
      cancelable::make_permute_salt_key(perm, BitVector(probe.size())), probe);
  return cancelable::make_permute_salt_key(std::move(perm), permuted ^ target);
}

}  // namespace

// ---------------------------------------------------------------- base

BitVector AuthScheme::present(const BitVector& probe,
                              const std::optional<TransformKey>& key) const {
  require_size(probe, n(), "probe");
  if (!keyed()) {
    if (key) throw InvalidArgument(name() + " does not take a key");
    return probe;
  }
  if (!key) throw InvalidArgument(name() + " requires a key");
  return cancelable::transform(*key, probe);
}

bool AuthScheme::accepts_presented(const BitVector& stored,
                                   const BitVector& presented,
                                   double tau) const {
  const auto d = match_distance(stored, presented);
  return d && cancelable::within_threshold(*d, matching_length(), tau);
}

bool AuthScheme::accepts(const Enrolled& e, const BitVector& probe,
                         const std::optional<TransformKey>& key,
                         double tau) const {
  return accepts_presented(e.stored, present(probe, key), tau);
}

std::vector<EnrollmentOutcome> AuthScheme::enumerate_enrollment(
    const BitVector&) const {
  throw Unsupported(name() + ": enrollment distribution is not enumerable");
}

std::optional<TransformKey> AuthScheme::random_key(Rng&) const {
  return std::nullopt;
}

std::optional<TransformKey> AuthScheme::forge_key(const BitVector&,
                                                  const BitVector&,
                                                  Rng&) const {
  return std::nullopt;
}

// ---------------------------------------------------------------- sketch

SketchScheme::SketchScheme(sketch::SketchSystem system,
                           std::uint64_t permutation_seed)
    : system_(std::move(system)),
      fixed_permutation_(fixed_permutation(system_.n(), permutation_seed)),
      leaders_(maybe_leaders(system_.code())) {}

std::string SketchScheme::name() const {
  return system_.two_factor() ? "sketch-2f" : "sketch";
}

Enrolled SketchScheme::enroll(const BitVector& a, Rng& rng) const {
  Enrolled e;
  if (system_.two_factor()) e.key = cancelable::random_permute_salt_key(n(), rng);
  e.stored = sketch::enroll(system_, a, e.key).syndrome;
  return e;
}

std::optional<std::size_t> SketchScheme::match_distance(
    const BitVector& stored, const BitVector& presented) const {
  require_size(stored, system_.m(), "syndrome");
  require_size(presented, n(), "presented vector");
  if (leaders_) {
    return leaders_->weight(leaders_->syndrome_of(presented) ^
                            stored.to_integer());
  }
  return gf2::decode_in_coset(system_.code(), presented, stored).distance;
}

std::vector<EnrollmentOutcome> SketchScheme::enumerate_enrollment(
    const BitVector& a) const {
  require_size(a, n(), "feature vector");
  const auto& code = system_.code();
  if (!system_.two_factor()) {
    return {EnrollmentOutcome{1.0, gf2::syndrome(code, a), BitVector()}};
  }
  return enumerate_salts(a, fixed_permutation_, [&](const BitVector& t) {
    return std::vector<std::pair<double, BitVector>>{
        {1.0, gf2::syndrome(code, t)}};
  });
}

std::optional<TransformKey> SketchScheme::random_key(Rng& rng) const {
  if (!keyed()) return std::nullopt;
  return cancelable::random_permute_salt_key(n(), rng);
}

std::optional<TransformKey> SketchScheme::forge_key(const BitVector& probe,
                                                    const BitVector& target,
                                                    Rng& rng) const {
  if (!keyed()) return std::nullopt;
  return forge_permute_salt(probe, target, rng);
}

BitVector SketchScheme::zero_distance_point(const BitVector& stored,
                                            Rng& rng) const {
  const auto& code = system_.code();
  return code.coset_representative(stored) ^ code.encode(rng.bits(code.k()));
}

std::size_t SketchScheme::storage_bits(const Enrolled& e) const {
  return e.stored.size();
}

// ---------------------------------------------------------------- commit

CommitScheme::CommitScheme(commit::CommitSystem system,
                           std::uint64_t permutation_seed)
    : system_(std::move(system)),
      fixed_permutation_(fixed_permutation(system_.n(), permutation_seed)),
      leaders_(maybe_leaders(system_.code())) {}

std::string CommitScheme::name() const {
  return system_.two_factor() ? "commit-2f" : "commit";
}

Enrolled CommitScheme::enroll(const BitVector& a, Rng& rng) const {
  Enrolled e;
  if (system_.two_factor()) e.key = cancelable::random_permute_salt_key(n(), rng);
  const auto z = commit::random_message(system_.code(), rng);
  e.stored = commit::commit(system_, a, z, e.key).bound;
  return e;
}

std::optional<std::size_t> CommitScheme::match_distance(
    const BitVector& stored, const BitVector& presented) const {
  require_size(stored, n(), "bound vector");
  require_size(presented, n(), "presented vector");
  const bool reject_ties = system_.tie_policy() == commit::TiePolicy::kReject;
  if (leaders_) {
    const std::uint64_t s = leaders_->syndrome_of(stored ^ presented);
    if (reject_ties && leaders_->multiplicity(s) > 1) return std::nullopt;
    return leaders_->weight(s);
  }
  // Same decision as commit::open on the already-transformed vector.
  const commit::CommitSystem plain(
      std::make_shared<const gf2::LinearCode>(system_.code()), system_.tau(),
      system_.tie_policy(), false);
  const auto r = commit::open(plain, commit::CommitTemplate{stored}, presented);
  if (reject_ties && r.ambiguous) return std::nullopt;
  return r.distance;
}

std::vector<EnrollmentOutcome> CommitScheme::enumerate_enrollment(
    const BitVector& a) const {
  require_size(a, n(), "feature vector");
  const auto& code = system_.code();
  const double per_message = std::ldexp(1.0, -static_cast<int>(code.k()));
  auto bound_all = [&](const BitVector& t) {
    std::vector<std::pair<double, BitVector>> out;
    code.for_each_codeword(
        [&](const BitVector& c) { out.emplace_back(per_message, c ^ t); });
    return out;
  };
  if (!system_.two_factor()) {
    std::vector<EnrollmentOutcome> out;
    for (auto& [p, s] : bound_all(a)) {
      out.push_back(EnrollmentOutcome{p, std::move(s), BitVector()});
    }
    return out;
  }
  gf2::check_enumeration(n() + code.k(), gf2::kDefaultEnumerationCap,
                         "salt and message enumeration");
  return enumerate_salts(a, fixed_permutation_, bound_all);
}

std::optional<TransformKey> CommitScheme::random_key(Rng& rng) const {
  if (!keyed()) return std::nullopt;
  return cancelable::random_permute_salt_key(n(), rng);
}

std::optional<TransformKey> CommitScheme::forge_key(const BitVector& probe,
                                                    const BitVector& target,
                                                    Rng& rng) const {
  if (!keyed()) return std::nullopt;
  return forge_permute_salt(probe, target, rng);
}

BitVector CommitScheme::zero_distance_point(const BitVector& stored,
                                            Rng& rng) const {
  const auto& code = system_.code();
  return stored ^ code.encode(rng.bits(code.k()));
}

std::size_t CommitScheme::storage_bits(const Enrolled& e) const {
  return e.stored.size();
}

// ---------------------------------------------------------------- cancelable

CancelableScheme::CancelableScheme(TransformKind kind, std::size_t n,
                                   double tau, std::size_t rows,
                                   std::uint64_t permutation_seed)
    : kind_(kind),
      n_(n),
      tau_(tau),
      rows_(kind == TransformKind::kRandomProjection ? rows : n),
      fixed_permutation_(fixed_permutation(n, permutation_seed)) {
  if (n == 0) throw InvalidArgument("feature length must be positive");
  if (!(tau >= 0.0 && tau < 0.5)) {
    throw InvalidArgument("cancelable threshold tau must lie in [0, 0.5)");
  }
  if (rows_ == 0 || rows_ > n) {
    throw InvalidArgument("projection rows must lie in [1, n]");
  }
}

std::string CancelableScheme::name() const {
  return kind_ == TransformKind::kPermuteSalt ? "cancelable-permute"
                                              : "cancelable-projection";
}

std::size_t CancelableScheme::matching_length() const { return rows_; }

Enrolled CancelableScheme::enroll(const BitVector& a, Rng& rng) const {
  Enrolled e;
  e.key = *random_key(rng);
  e.stored = cancelable::enroll(*e.key, a, tau_).distorted;
  return e;
}

std::optional<std::size_t> CancelableScheme::match_distance(
    const BitVector& stored, const BitVector& presented) const {
  return hamming_distance(stored, presented);
}

std::vector<EnrollmentOutcome> CancelableScheme::enumerate_enrollment(
    const BitVector& a) const {
  if (kind_ != TransformKind::kPermuteSalt) {
    return AuthScheme::enumerate_enrollment(a);
  }
  require_size(a, n_, "feature vector");
  return enumerate_salts(a, fixed_permutation_, [](const BitVector& t) {
    return std::vector<std::pair<double, BitVector>>{{1.0, t}};
  });
}

bool CancelableScheme::translation_invariant() const {
  return kind_ == TransformKind::kPermuteSalt;
}

bool CancelableScheme::uniform_presentation() const {
  return kind_ == TransformKind::kPermuteSalt;
}

std::optional<TransformKey> CancelableScheme::random_key(Rng& rng) const {
  if (kind_ == TransformKind::kPermuteSalt) {
    return cancelable::random_permute_salt_key(n_, rng);
  }
  return cancelable::random_projection_key(n_, rows_, rng);
}

std::optional<TransformKey> CancelableScheme::forge_key(
    const BitVector& probe, const BitVector& target, Rng& rng) const {
  if (kind_ != TransformKind::kPermuteSalt) return std::nullopt;
  return forge_permute_salt(probe, target, rng);
}

BitVector CancelableScheme::zero_distance_point(const BitVector& stored,
                                                Rng&) const {
  return stored;
}

std::size_t CancelableScheme::storage_bits(const Enrolled& e) const {
  return e.stored.size();
}

// ---------------------------------------------------------------- plain

PlainScheme::PlainScheme(std::size_t n, double tau) : n_(n), tau_(tau) {
  if (n == 0) throw InvalidArgument("feature length must be positive");
  if (!(tau >= 0.0 && tau < 0.5)) {
    throw InvalidArgument("threshold tau must lie in [0, 0.5)");
  }
}

Enrolled PlainScheme::enroll(const BitVector& a, Rng&) const {
  require_size(a, n_, "feature vector");
  return Enrolled{a, std::nullopt};
}

std::optional<std::size_t> PlainScheme::match_distance(
    const BitVector& stored, const BitVector& presented) const {
  return hamming_distance(stored, presented);
}

std::vector<EnrollmentOutcome> PlainScheme::enumerate_enrollment(
    const BitVector& a) const {
  require_size(a, n_, "feature vector");
  return {EnrollmentOutcome{1.0, a, BitVector()}};
}

BitVector PlainScheme::zero_distance_point(const BitVector& stored,
                                           Rng&) const {
  return stored;
}

std::size_t PlainScheme::storage_bits(const Enrolled& e) const {
  return e.stored.size();
}

}  // namespace securebio::metrics
