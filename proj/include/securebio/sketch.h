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

#ifndef SECUREBIO_SKETCH_H_
#define SECUREBIO_SKETCH_H_

#include <memory>
#include <optional>
#include <vector>

#include "securebio/bitvec.h"
#include "securebio/cancelable.h"
#include "securebio/gf2.h"

// Syndrome-based secure sketch.
//
// Enrollment stores S = H A (keyless) or S = H T_K(A) (two-factor, with T_K a
// permute-salt transform). Authentication decodes the (transformed) probe to
// the nearest member of the coset of S and accepts when that member is within
// normalized Hamming distance tau. The threshold test is inclusive so that
// tau = 0 accepts exactly the coset.
namespace securebio::sketch {

class SketchSystem {
 public:
  /// tau must lie in [0, 0.5).
  SketchSystem(std::shared_ptr<const gf2::LinearCode> code, double tau,
               bool two_factor = false);

  const gf2::LinearCode& code() const { return *code_; }
  std::shared_ptr<const gf2::LinearCode> shared_code() const { return code_; }
  double tau() const { return tau_; }
  bool two_factor() const { return two_factor_; }
  std::size_t n() const { return code_->n(); }
  std::size_t m() const { return code_->m(); }

  /// Same code and mode with a different threshold.
  SketchSystem with_tau(double tau) const;

 private:
  std::shared_ptr<const gf2::LinearCode> code_;
  double tau_;
  bool two_factor_;
};

/// Stored helper data. The two-factor key is held by the user and never
/// stored alongside the syndrome.
struct SketchTemplate {
  BitVector syndrome;
};

struct SketchDecision {
  bool accepted = false;
  BitVector decoded;          // estimate of the (transformed) enrollment
  std::size_t distance = 0;   // d_H(decoded, transformed probe)
};

/// Throws InvalidArgument if a two-factor system gets no key, or a keyless
/// system gets one; throws LengthMismatch on wrong lengths.
SketchTemplate enroll(const SketchSystem& system, const BitVector& a,
                      const std::optional<cancelable::TransformKey>& key = {});

SketchDecision authenticate(
    const SketchSystem& system, const SketchTemplate& tmpl, const BitVector& d,
    const std::optional<cancelable::TransformKey>& key = {});

/// Every vector the matcher accepts for this template, in the matching
/// (transformed) domain, sorted. Enumerates all 2^n vectors.
std::vector<BitVector> acceptance_region(
    const SketchSystem& system, const SketchTemplate& tmpl,
    std::size_t cap = gf2::kDefaultEnumerationCap);

/// Bits needed to store S, plus K when given.
std::size_t storage_bits(const SketchTemplate& tmpl,
                         const std::optional<cancelable::TransformKey>& key = {});

/// Bits of a permute-salt key: salt plus n * ceil(log2 n) for the permutation.
std::size_t key_bits(const cancelable::TransformKey& key);

}  // namespace securebio::sketch

#endif  // SECUREBIO_SKETCH_H_
