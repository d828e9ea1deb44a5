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

#include "securebio/sketch.h"

#include <algorithm>
#include <bit>

namespace securebio::sketch {

SketchSystem::SketchSystem(std::shared_ptr<const gf2::LinearCode> code,
                           double tau, bool two_factor)
    : code_(std::move(code)), tau_(tau), two_factor_(two_factor) {
  if (!code_) throw InvalidArgument("sketch system needs a code");
  if (!(tau_ >= 0.0 && tau_ < 0.5)) {
    throw InvalidArgument("sketch threshold tau must lie in [0, 0.5)");
  }
}

SketchSystem SketchSystem::with_tau(double tau) const {
  return SketchSystem(code_, tau, two_factor_);
}

namespace {

BitVector matched_form(const SketchSystem& system, const BitVector& x,
                       const std::optional<cancelable::TransformKey>& key) {
  require_size(x, system.n(), "feature vector");
  if (!system.two_factor()) {
    if (key) throw InvalidArgument("keyless sketch does not take a key");
    return x;
  }
  if (!key) throw InvalidArgument("two-factor sketch requires a key");
  if (key->kind != cancelable::TransformKind::kPermuteSalt) {
    throw InvalidArgument("two-factor sketch needs a permute-salt key");
  }
  return cancelable::transform(*key, x);
}

}  // namespace

SketchTemplate enroll(const SketchSystem& system, const BitVector& a,
                      const std::optional<cancelable::TransformKey>& key) {
  return SketchTemplate{gf2::syndrome(system.code(), matched_form(system, a, key))};
}

SketchDecision authenticate(const SketchSystem& system,
                            const SketchTemplate& tmpl, const BitVector& d,
                            const std::optional<cancelable::TransformKey>& key) {
  require_size(tmpl.syndrome, system.m(), "stored syndrome");
  const BitVector probe = matched_form(system, d, key);
  gf2::DecodeResult r = gf2::decode_in_coset(system.code(), probe, tmpl.syndrome);
  const bool ok = cancelable::within_threshold(r.distance, system.n(),
                                               system.tau());
  return SketchDecision{ok, std::move(r.member), r.distance};
}

std::vector<BitVector> acceptance_region(const SketchSystem& system,
                                         const SketchTemplate& tmpl,
                                         std::size_t cap) {
  const std::size_t n = system.n();
  gf2::check_enumeration(n, cap, "acceptance region");
  require_size(tmpl.syndrome, system.m(), "stored syndrome");
  std::vector<BitVector> region;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    const BitVector u = BitVector::FromInteger(v, n);
    const auto r = gf2::decode_in_coset(system.code(), u, tmpl.syndrome);
    if (cancelable::within_threshold(r.distance, n, system.tau())) {
      region.push_back(u);
    }
  }
  std::sort(region.begin(), region.end());
  return region;
}

std::size_t key_bits(const cancelable::TransformKey& key) {
  const std::size_t n = key.input_size();
  if (key.kind == cancelable::TransformKind::kPermuteSalt) {
    const std::size_t index_bits =
        n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
    return n + n * index_bits;
  }
  return key.output_size() * n;  // one sign bit per projection entry
}

std::size_t storage_bits(const SketchTemplate& tmpl,
                         const std::optional<cancelable::TransformKey>& key) {
  return tmpl.syndrome.size() + (key ? key_bits(*key) : 0);
}

}  // namespace securebio::sketch
