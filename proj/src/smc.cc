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

#include "securebio/smc.h"

namespace securebio::smc {

using paillier::Ciphertext;
using paillier::PublicKey;

EncryptedTemplate encrypt_template(const PublicKey& pub, const BitVector& a,
                                   paillier::RandomSource& rng) {
  EncryptedTemplate t;
  t.elements.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.elements.push_back(paillier::encrypt(pub, a.get(i) ? 1 : 0, rng));
  }
  // a_i^2 = a_i for bits.
  t.sum_squares = paillier::encrypt(
      pub, static_cast<unsigned long>(a.weight()), rng);
  return t;
}

Ciphertext encrypted_distance(const PublicKey& pub,
                              const EncryptedTemplate& tmpl,
                              const BitVector& d,
                              paillier::RandomSource& rng) {
  if (d.size() != tmpl.size()) {
    throw LengthMismatch("probe has " + std::to_string(d.size()) +
                         " bits, template has " + std::to_string(tmpl.size()));
  }
  // prod_i E(a_i)^(-2 d_i) = (prod_{i: d_i = 1} E(a_i))^(-2).
  Ciphertext selected{1};
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.get(i)) selected = paillier::add(pub, selected, tmpl.elements[i]);
  }
  const Ciphertext cross =
      paillier::scalar_mul(pub, paillier::negate(pub, selected), 2);
  const Ciphertext probe_squares =
      paillier::encrypt(pub, static_cast<unsigned long>(d.weight()), rng);
  return paillier::add(
      pub, paillier::add(pub, tmpl.sum_squares, probe_squares), cross);
}

std::size_t squared_distance(const BitVector& a, const BitVector& d) {
  return hamming_distance(a, d);
}

mpz_class max_multiplier(const PublicKey& pub, std::size_t max_distance,
                         std::size_t theta) {
  // |s (dist - theta - 1) + r| < s (max_distance + theta + 2) must stay
  // below N / 2 for the signed reading to be faithful.
  const mpz_class span =
      mpz_class(static_cast<unsigned long>(max_distance)) + theta + 2;
  const mpz_class half = pub.n / 2;
  mpz_class s_max = (half - 1) / span;
  if (s_max < 1) {
    throw InvalidArgument("modulus too small for the blinded comparison");
  }
  const mpz_class cap = mpz_class(1) << 40;
  return s_max > cap ? cap : s_max;
}

Blinding draw_blinding(const PublicKey& pub, std::size_t max_distance,
                       std::size_t theta, paillier::RandomSource& rng) {
  const mpz_class s_max = max_multiplier(pub, max_distance, theta);
  Blinding b;
  b.s = rng.below(s_max) + 1;
  b.r = rng.below(b.s);
  return b;
}

Ciphertext blind_difference(const PublicKey& pub, const Ciphertext& distance,
                            std::size_t theta, const Blinding& blinding,
                            paillier::RandomSource& rng) {
  const mpz_class shift = -(mpz_class(static_cast<unsigned long>(theta)) + 1);
  const Ciphertext diff =
      paillier::add(pub, distance, paillier::encrypt(pub, shift, rng));
  const Ciphertext scaled = paillier::scalar_mul(pub, diff, blinding.s);
  return paillier::add(pub, scaled, paillier::encrypt(pub, blinding.r, rng));
}

SignReply reveal_sign(const paillier::Keypair& key, const Ciphertext& blinded) {
  const mpz_class v = paillier::to_signed(key.pub, paillier::decrypt(key, blinded));
  return SignReply{v < 0, v};
}

bool compare(const paillier::Keypair& claimant, const Ciphertext& distance,
             std::size_t max_distance, std::size_t theta,
             paillier::RandomSource& device_rng) {
  const Blinding b =
      draw_blinding(claimant.pub, max_distance, theta, device_rng);
  const Ciphertext blinded =
      blind_difference(claimant.pub, distance, theta, b, device_rng);
  return reveal_sign(claimant, blinded).negative;
}

std::size_t storage_bits(const EncryptedTemplate& tmpl, const PublicKey& pub) {
  return (tmpl.size() + 1) * pub.ciphertext_bits();
}

}  // namespace securebio::smc
