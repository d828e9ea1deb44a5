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

#include "securebio/paillier.h"

#include <array>
#include <random>

namespace securebio::paillier {

RandomSource::RandomSource(std::uint64_t seed)
    : state_(std::make_unique<gmp_randclass>(gmp_randinit_mt)) {
  mpz_class s;
  mpz_import(s.get_mpz_t(), 1, 1, sizeof(seed), 0, 0, &seed);
  state_->seed(s);
}

RandomSource RandomSource::Entropy() {
  std::random_device rd;
  std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  RandomSource out(seed);
  // Mix in 256 more bits so the state is not limited to a 64-bit seed.
  std::array<std::uint32_t, 8> extra{};
  for (auto& w : extra) w = rd();
  mpz_class s;
  mpz_import(s.get_mpz_t(), extra.size(), 1, sizeof(std::uint32_t), 0, 0,
             extra.data());
  out.state_->seed(s ^ mpz_class(static_cast<unsigned long>(seed)));
  return out;
}

mpz_class RandomSource::below(const mpz_class& bound) {
  if (bound <= 0) throw InvalidArgument("random bound must be positive");
  return state_->get_z_range(bound);
}

mpz_class RandomSource::with_bits(unsigned bits) {
  mpz_class v = state_->get_z_bits(bits);
  mpz_setbit(v.get_mpz_t(), bits - 1);
  return v;
}

PublicKey::PublicKey(mpz_class modulus)
    : n(std::move(modulus)), n_square(n * n), g(n + 1) {}

std::size_t PublicKey::ciphertext_bits() const {
  // ceil(log2 N^2): bit length, minus one when N^2 is a power of two.
  const std::size_t len = mpz_sizeinbase(n_square.get_mpz_t(), 2);
  return mpz_popcount(n_square.get_mpz_t()) == 1 ? len - 1 : len;
}

namespace {

mpz_class l_function(const mpz_class& u, const mpz_class& n) {
  return (u - 1) / n;
}

bool is_prime(const mpz_class& v) {
  return mpz_probab_prime_p(v.get_mpz_t(), 40) > 0;
}

}  // namespace

Keypair keypair_from_primes(const mpz_class& p, const mpz_class& q) {
  if (p == q) throw InvalidArgument("Paillier primes must be distinct");
  if (!is_prime(p) || !is_prime(q)) {
    throw InvalidArgument("Paillier factors must be prime");
  }
  const mpz_class n = p * q;
  const mpz_class phi = (p - 1) * (q - 1);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), phi.get_mpz_t());
  if (g != 1) throw InvalidArgument("gcd(N, (p-1)(q-1)) must be 1");

  Keypair kp;
  kp.pub = PublicKey(n);
  kp.priv.p = p;
  kp.priv.q = q;
  mpz_class pm1 = p - 1;
  mpz_class qm1 = q - 1;
  mpz_lcm(kp.priv.lambda.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
  mpz_class u;
  mpz_powm(u.get_mpz_t(), kp.pub.g.get_mpz_t(), kp.priv.lambda.get_mpz_t(),
           kp.pub.n_square.get_mpz_t());
  const mpz_class l = l_function(u, n);
  if (mpz_invert(kp.priv.mu.get_mpz_t(), l.get_mpz_t(), n.get_mpz_t()) == 0) {
    throw InvalidArgument("L(g^lambda) is not invertible modulo N");
  }
  auto& k = kp.priv;
  k.p_square = p * p;
  k.q_square = q * q;
  auto h = [&](const mpz_class& f, const mpz_class& f_square) {
    mpz_class fm1 = f - 1;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), kp.pub.g.get_mpz_t(), fm1.get_mpz_t(),
             f_square.get_mpz_t());
    mpz_class out = l_function(x, f);
    if (mpz_invert(out.get_mpz_t(), out.get_mpz_t(), f.get_mpz_t()) == 0) {
      throw InvalidArgument("degenerate Paillier prime");
    }
    return out;
  };
  k.hp = h(p, k.p_square);
  k.hq = h(q, k.q_square);
  if (mpz_invert(k.q_inv.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t()) == 0) {
    throw InvalidArgument("Paillier primes must be coprime");
  }
  return kp;
}

Keypair keygen(unsigned prime_bits, RandomSource& rng) {
  if (prime_bits < 4) throw InvalidArgument("prime_bits must be at least 4");
  auto draw_prime = [&]() -> mpz_class {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      mpz_class c = rng.with_bits(prime_bits);
      mpz_nextprime(c.get_mpz_t(), c.get_mpz_t());
      if (mpz_sizeinbase(c.get_mpz_t(), 2) == prime_bits) return c;
    }
    throw Error("prime search exhausted for " + std::to_string(prime_bits) +
                "-bit primes");
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const mpz_class p = draw_prime();
    const mpz_class q = draw_prime();
    if (p == q) continue;
    try {
      return keypair_from_primes(p, q);
    } catch (const InvalidArgument&) {
      continue;
    }
  }
  throw Error("could not find a valid Paillier prime pair");
}

Keypair keygen(unsigned prime_bits, std::uint64_t seed) {
  RandomSource rng(seed);
  return keygen(prime_bits, rng);
}

Ciphertext encrypt(const PublicKey& pub, const mpz_class& m,
                   RandomSource& rng) {
  mpz_class msg = m % pub.n;
  if (msg < 0) msg += pub.n;
  mpz_class r;
  mpz_class g;
  do {
    r = rng.below(pub.n);
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), pub.n.get_mpz_t());
  } while (r == 0 || g != 1);
  mpz_class rn;
  mpz_powm(rn.get_mpz_t(), r.get_mpz_t(), pub.n.get_mpz_t(),
           pub.n_square.get_mpz_t());
  mpz_class c = (1 + msg * pub.n) % pub.n_square;
  c = (c * rn) % pub.n_square;
  return Ciphertext{c};
}

mpz_class decrypt(const Keypair& key, const Ciphertext& c) {
  const PublicKey& pub = key.pub;
  if (c.value <= 0 || c.value >= pub.n_square) {
    throw DecryptionError("ciphertext out of range");
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), c.value.get_mpz_t(), pub.n.get_mpz_t());
  if (g != 1) throw DecryptionError("ciphertext is not coprime to N");
  const PrivateKey& k = key.priv;
  if (k.p == 0 || k.q == 0) throw DecryptionError("private key is empty");
  auto half = [&](const mpz_class& f, const mpz_class& f_square,
                  const mpz_class& hf) {
    mpz_class fm1 = f - 1;
    mpz_class cf = c.value % f_square;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), cf.get_mpz_t(), fm1.get_mpz_t(),
             f_square.get_mpz_t());
    return mpz_class((l_function(x, f) * hf) % f);
  };
  const mpz_class mp = half(k.p, k.p_square, k.hp);
  const mpz_class mq = half(k.q, k.q_square, k.hq);
  mpz_class t = ((mp - mq) * k.q_inv) % k.p;
  if (t < 0) t += k.p;
  return (mq + k.q * t) % pub.n;
}

Ciphertext add(const PublicKey& pub, const Ciphertext& a, const Ciphertext& b) {
  return Ciphertext{(a.value * b.value) % pub.n_square};
}

Ciphertext scalar_mul(const PublicKey& pub, const Ciphertext& c,
                      const mpz_class& k) {
  mpz_class e = k % pub.n;
  if (e < 0) e += pub.n;
  mpz_class out;
  mpz_powm(out.get_mpz_t(), c.value.get_mpz_t(), e.get_mpz_t(),
           pub.n_square.get_mpz_t());
  return Ciphertext{out};
}

Ciphertext negate(const PublicKey& pub, const Ciphertext& c) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), c.value.get_mpz_t(),
                 pub.n_square.get_mpz_t()) == 0) {
    throw DecryptionError("ciphertext is not invertible modulo N^2");
  }
  return Ciphertext{inv};
}

mpz_class to_signed(const PublicKey& pub, const mpz_class& x) {
  // x >= N/2 (i.e. 2x >= N) reads as negative.
  return 2 * x >= pub.n ? mpz_class(x - pub.n) : x;
}

std::string to_hex(const mpz_class& v) { return v.get_str(16); }

mpz_class from_hex(const std::string& hex) {
  mpz_class v;
  if (hex.empty() || v.set_str(hex, 16) != 0) {
    throw FormatError("invalid hex integer '" + hex + "'");
  }
  return v;
}

}  // namespace securebio::paillier
