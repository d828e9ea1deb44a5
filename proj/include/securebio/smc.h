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

#ifndef SECUREBIO_SMC_H_
#define SECUREBIO_SMC_H_

#include <vector>

#include "securebio/bitvec.h"
#include "securebio/paillier.h"

// Encrypted-domain matching.
//
// The device stores E(a_i) and E(sum a_i^2) under the claimant's public key.
// For a probe d it computes
//
//   E(sum a_i^2) * E(sum d_i^2) * prod_i E(a_i)^(-2 d_i) = E(sum (a_i - d_i)^2)
//
// and then runs a blinded sign test with the claimant (who holds the
// decryption key): the claimant sees s * (dist - theta - 1) + r for secret
// s >= 1 and 0 <= r < s, which is negative exactly when dist <= theta.
namespace securebio::smc {

struct EncryptedTemplate {
  std::vector<paillier::Ciphertext> elements;  // E(a_i)
  paillier::Ciphertext sum_squares;            // E(sum a_i^2)

  std::size_t size() const { return elements.size(); }
};

EncryptedTemplate encrypt_template(const paillier::PublicKey& pub,
                                   const BitVector& a,
                                   paillier::RandomSource& rng);

/// E(sum (a_i - d_i)^2). Throws LengthMismatch on mismatched lengths.
paillier::Ciphertext encrypted_distance(const paillier::PublicKey& pub,
                                        const EncryptedTemplate& tmpl,
                                        const BitVector& d,
                                        paillier::RandomSource& rng);

/// Plaintext squared Euclidean distance; equals Hamming distance for bits.
std::size_t squared_distance(const BitVector& a, const BitVector& d);

/// Server-side secrets of one comparison.
struct Blinding {
  mpz_class s;  // multiplicative mask, s >= 1
  mpz_class r;  // additive mask, 0 <= r < s
};

/// Largest s that keeps s * (max_distance + theta + 1) + s below N/2, capped
/// at 2^40. Throws InvalidArgument when the modulus is too small for s = 1.
mpz_class max_multiplier(const paillier::PublicKey& pub,
                         std::size_t max_distance, std::size_t theta);

Blinding draw_blinding(const paillier::PublicKey& pub,
                       std::size_t max_distance, std::size_t theta,
                       paillier::RandomSource& rng);

/// E(s * (dist - theta - 1) + r) from E(dist).
paillier::Ciphertext blind_difference(const paillier::PublicKey& pub,
                                      const paillier::Ciphertext& distance,
                                      std::size_t theta,
                                      const Blinding& blinding,
                                      paillier::RandomSource& rng);

struct SignReply {
  bool negative = false;
  mpz_class observed;  // what the claimant decrypted (signed)
};

/// Claimant side: decrypt and report only the sign.
SignReply reveal_sign(const paillier::Keypair& key,
                      const paillier::Ciphertext& blinded);

/// Whole comparison in one process; true iff dist <= theta.
bool compare(const paillier::Keypair& claimant,
             const paillier::Ciphertext& distance, std::size_t max_distance,
             std::size_t theta, paillier::RandomSource& device_rng);

/// ceil(log2 N^2) bits per ciphertext, n + 1 ciphertexts.
std::size_t storage_bits(const EncryptedTemplate& tmpl,
                         const paillier::PublicKey& pub);

}  // namespace securebio::smc

#endif  // SECUREBIO_SMC_H_
