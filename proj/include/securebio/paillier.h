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

#ifndef SECUREBIO_PAILLIER_H_
#define SECUREBIO_PAILLIER_H_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "securebio/error.h"

// Paillier cryptosystem with generator g = N + 1.
//
//   E(m; r) = (1 + m N) r^N mod N^2
//   D(c)    = L(c^lambda mod N^2) * mu mod N,  L(u) = (u - 1) / N
//
// E(a) E(b) = E(a + b) and E(a)^k = E(k a), all modulo N.
namespace securebio::paillier {

class DecryptionError : public Error {
 public:
  using Error::Error;
};

/// Randomness for key generation and encryption. Seeded instances are
/// reproducible (tests, experiments); Entropy() draws from the OS.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);
  static RandomSource Entropy();

  /// Uniform in [0, bound).
  mpz_class below(const mpz_class& bound);
  /// Uniform with exactly `bits` bits (top bit set).
  mpz_class with_bits(unsigned bits);

 private:
  std::unique_ptr<gmp_randclass> state_;
};

struct PublicKey {
  mpz_class n;         // modulus N = p q
  mpz_class n_square;  // N^2
  mpz_class g;         // N + 1

  explicit PublicKey(mpz_class modulus);
  PublicKey() = default;
  /// Bits per ciphertext: ceil(log2 N^2).
  std::size_t ciphertext_bits() const;

  friend bool operator==(const PublicKey& a, const PublicKey& b) {
    return a.n == b.n;
  }
};

struct PrivateKey {
  mpz_class p;
  mpz_class q;
  mpz_class lambda;  // lcm(p - 1, q - 1)
  mpz_class mu;      // L(g^lambda mod N^2)^-1 mod N
  // CRT decryption.
  mpz_class p_square;
  mpz_class q_square;
  mpz_class hp;     // L_p(g^(p-1) mod p^2)^-1 mod p
  mpz_class hq;
  mpz_class q_inv;  // q^-1 mod p
};

struct Keypair {
  PublicKey pub;
  PrivateKey priv;
};

struct Ciphertext {
  mpz_class value;
  friend bool operator==(const Ciphertext& a, const Ciphertext& b) {
    return a.value == b.value;
  }
};

/// Keypair from two distinct primes. Throws InvalidArgument if they are not
/// distinct primes or gcd(N, (p-1)(q-1)) != 1.
Keypair keypair_from_primes(const mpz_class& p, const mpz_class& q);

/// Two distinct random primes of exactly `prime_bits` bits each.
/// Throws InvalidArgument for prime_bits < 4 and Error when the search gives up.
Keypair keygen(unsigned prime_bits, RandomSource& rng);
Keypair keygen(unsigned prime_bits, std::uint64_t seed);

/// m is reduced modulo N first.
Ciphertext encrypt(const PublicKey& pub, const mpz_class& m, RandomSource& rng);
/// Throws DecryptionError if c is out of range or shares a factor with N.
mpz_class decrypt(const Keypair& key, const Ciphertext& c);

Ciphertext add(const PublicKey& pub, const Ciphertext& a, const Ciphertext& b);
/// E(k m). Negative k uses the exponent (N + k) mod N.
Ciphertext scalar_mul(const PublicKey& pub, const Ciphertext& c,
                      const mpz_class& k);
/// E(-m), via the modular inverse of c.
Ciphertext negate(const PublicKey& pub, const Ciphertext& c);

/// Interprets x in [0, N) as signed: values >= N/2 are x - N.
mpz_class to_signed(const PublicKey& pub, const mpz_class& x);

std::string to_hex(const mpz_class& v);
mpz_class from_hex(const std::string& hex);

}  // namespace securebio::paillier

#endif  // SECUREBIO_PAILLIER_H_
