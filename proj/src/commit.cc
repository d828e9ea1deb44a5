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

#include "securebio/commit.h"

namespace securebio::commit {

CommitSystem::CommitSystem(std::shared_ptr<const gf2::LinearCode> code,
                           double tau, TiePolicy ties, bool two_factor)
    : code_(std::move(code)), tau_(tau), ties_(ties), two_factor_(two_factor) {
  if (!code_) throw InvalidArgument("commitment system needs a code");
  if (!(tau_ >= 0.0 && tau_ < 0.5)) {
    throw InvalidArgument("commitment threshold tau must lie in [0, 0.5)");
  }
}

SecretMessage random_message(const gf2::LinearCode& code, Rng& rng) {
  return SecretMessage{rng.bits(code.k())};
}

CommitTemplate commit(const gf2::LinearCode& code, const BitVector& a,
                      const SecretMessage& z) {
  require_size(a, code.n(), "feature vector");
  require_size(z.z, code.k(), "secret message");
  return CommitTemplate{code.encode(z.z) ^ a};
}

namespace {

BitVector matched_form(const CommitSystem& system, const BitVector& x,
                       const std::optional<cancelable::TransformKey>& key) {
  require_size(x, system.n(), "feature vector");
  if (!system.two_factor()) {
    if (key) throw InvalidArgument("keyless commitment does not take a key");
    return x;
  }
  if (!key) throw InvalidArgument("two-factor commitment requires a key");
  return cancelable::transform(*key, x);
}

}  // namespace

CommitTemplate commit(const CommitSystem& system, const BitVector& a,
                      const SecretMessage& z,
                      const std::optional<cancelable::TransformKey>& key) {
  return commit(system.code(), matched_form(system, a, key), z);
}

OpenResult open(const CommitSystem& system, const CommitTemplate& tmpl,
                const BitVector& d,
                const std::optional<cancelable::TransformKey>& key) {
  require_size(tmpl.bound, system.n(), "bound vector");
  const BitVector probe = matched_form(system, d, key);
  const gf2::LinearCode& code = system.code();

  // Nearest codeword to y = S xor d, smallest first on ties.
  std::size_t best = code.n() + 1;
  std::size_t ties = 0;
  BitVector nearest;
  code.for_each_codeword([&](const BitVector& c) {
    const std::size_t dist = hamming_distance3(tmpl.bound, probe, c);
    if (dist < best) {
      best = dist;
      ties = 1;
      nearest = c;
    } else if (dist == best) {
      ++ties;
      if (c < nearest) nearest = c;
    }
  });

  OpenResult out;
  out.distance = best;
  out.ambiguous = ties > 1;
  out.accepted = cancelable::within_threshold(best, code.n(), system.tau());
  if (out.ambiguous && system.tie_policy() == TiePolicy::kReject) {
    out.accepted = false;
  }
  if (out.accepted) out.recovered = SecretMessage{code.message_of(nearest)};
  return out;
}

std::size_t storage_bits(const CommitTemplate& tmpl) { return tmpl.bound.size(); }

}  // namespace securebio::commit
