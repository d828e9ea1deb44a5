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

#ifndef SECUREBIO_COMMIT_H_
#define SECUREBIO_COMMIT_H_

#include <memory>
#include <optional>

#include "securebio/bitvec.h"
#include "securebio/cancelable.h"
#include "securebio/gf2.h"
#include "securebio/rng.h"

// Fuzzy commitment: S = G^T Z xor A binds a random k-bit message Z to A.
namespace securebio::commit {

/// How open() treats a probe equidistant from several codewords.
enum class TiePolicy {
  /// Take the lexicographically smallest nearest codeword and apply the
  /// threshold test. Acceptance then coincides with the secure sketch on the
  /// same code.
  kLexicographic,
  /// Reject whenever the nearest codeword is not unique.
  kReject,
};

struct CommitTemplate {
  BitVector bound;  // S = G^T Z xor A (or xor T_K(A) in two-factor mode)
};

struct SecretMessage {
  BitVector z;
};

struct OpenResult {
  bool accepted = false;
  std::optional<SecretMessage> recovered;  // set when accepted
  std::size_t distance = 0;                // d_H(S xor d, nearest codeword)
  bool ambiguous = false;                  // nearest codeword not unique
};

class CommitSystem {
 public:
  CommitSystem(std::shared_ptr<const gf2::LinearCode> code, double tau,
               TiePolicy ties = TiePolicy::kLexicographic,
               bool two_factor = false);

  const gf2::LinearCode& code() const { return *code_; }
  double tau() const { return tau_; }
  TiePolicy tie_policy() const { return ties_; }
  bool two_factor() const { return two_factor_; }
  std::size_t n() const { return code_->n(); }
  std::size_t k() const { return code_->k(); }

 private:
  std::shared_ptr<const gf2::LinearCode> code_;
  double tau_;
  TiePolicy ties_;
  bool two_factor_;
};

/// Uniform k-bit message.
SecretMessage random_message(const gf2::LinearCode& code, Rng& rng);

CommitTemplate commit(const gf2::LinearCode& code, const BitVector& a,
                      const SecretMessage& z);

CommitTemplate commit(const CommitSystem& system, const BitVector& a,
                      const SecretMessage& z,
                      const std::optional<cancelable::TransformKey>& key = {});

/// Decodes y = S xor d to its nearest codeword and accepts when that
/// codeword is within tau * n (subject to the tie policy).
OpenResult open(const CommitSystem& system, const CommitTemplate& tmpl,
                const BitVector& d,
                const std::optional<cancelable::TransformKey>& key = {});

/// n bits: the bound vector.
std::size_t storage_bits(const CommitTemplate& tmpl);

}  // namespace securebio::commit

#endif  // SECUREBIO_COMMIT_H_
