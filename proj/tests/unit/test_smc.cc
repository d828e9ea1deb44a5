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
#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "doctest.h"

#include "common.h"
#include "securebio/error.h"
#include "securebio/paillier.h"
#include "securebio/rng.h"
#include "securebio/smc.h"
#include "securebio/smc_net.h"

using namespace securebio;
using namespace securebio::paillier;
using namespace securebio::smc;
using securebio::testing::all_vectors;
using securebio::testing::bv;

namespace {

// One request line, one reply line, over a plain socket.
std::string raw_exchange(std::uint16_t port, const std::string& line) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  REQUIRE(fd >= 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  REQUIRE(::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
  const std::string out = line + "\n";
  REQUIRE(::send(fd, out.data(), out.size(), 0) ==
          static_cast<ssize_t>(out.size()));
  std::string reply;
  char c;
  while (::recv(fd, &c, 1, 0) == 1 && c != '\n') reply += c;
  ::close(fd);
  return reply;
}

std::string error_code(const std::string& reply) {
  auto m = decode_message(reply);
  REQUIRE(m.type == msg::kError);
  return m.payload.at("code").get<std::string>();
}

}  // namespace

TEST_SUITE("smc") {
  TEST_CASE("tiny keypair") {
    auto k = keypair_from_primes(5, 7);
    CHECK(k.pub.n == 35);
    CHECK(k.pub.g == 36);
    CHECK(k.pub.n_square == 1225);
    CHECK(k.priv.lambda == 12);
    CHECK(k.pub.ciphertext_bits() == 11);
    RandomSource rng(1);
    CHECK(decrypt(k, encrypt(k.pub, 0, rng)) == 0);
    CHECK(decrypt(k, encrypt(k.pub, 34, rng)) == 34);
    CHECK(decrypt(k, add(k.pub, encrypt(k.pub, 3, rng),
                         encrypt(k.pub, 4, rng))) == 7);
    CHECK(decrypt(k, scalar_mul(k.pub, encrypt(k.pub, 2, rng), 5)) == 10);
    CHECK(decrypt(k, add(k.pub, encrypt(k.pub, 9, rng),
                         encrypt(k.pub, 0, rng))) == 9);
    CHECK(decrypt(k, negate(k.pub, encrypt(k.pub, 3, rng))) == 32);
    CHECK(to_signed(k.pub, 32) == -3);
    CHECK(to_signed(k.pub, 17) == 17);
    CHECK(decrypt(k, scalar_mul(k.pub, encrypt(k.pub, 4, rng), -2)) == 27);
    CHECK_THROWS_AS(decrypt(k, Ciphertext{7}), DecryptionError);
    CHECK_THROWS_AS(decrypt(k, Ciphertext{1225}), DecryptionError);
    CHECK_THROWS_AS(keypair_from_primes(7, 7), InvalidArgument);
    CHECK_THROWS_AS(keypair_from_primes(6, 7), InvalidArgument);
    // gcd(N, (p-1)(q-1)) != 1 for p = 3, q = 7.
    CHECK_THROWS_AS(keypair_from_primes(3, 7), InvalidArgument);
  }

  TEST_CASE("exhaustive tiny-key homomorphism") {
    auto k = keypair_from_primes(5, 7);
    RandomSource rng(2);
    for (int a = 0; a < 35; ++a) {
      for (int b = 0; b < 35; ++b) {
        REQUIRE(decrypt(k, add(k.pub, encrypt(k.pub, a, rng),
                               encrypt(k.pub, b, rng))) == (a + b) % 35);
      }
    }
  }

  TEST_CASE("keygen") {
    auto a = keygen(64, 3);
    auto b = keygen(64, 3);
    CHECK(a.pub.n == b.pub.n);
    CHECK(a.priv.p != a.priv.q);
    CHECK(mpz_sizeinbase(a.priv.p.get_mpz_t(), 2) == 64);
    CHECK_FALSE(keygen(64, 4).pub.n == a.pub.n);
    CHECK_THROWS_AS(keygen(3, 1), InvalidArgument);
    RandomSource rng(5);
    for (int i = 0; i < 200; ++i) {
      mpz_class x = rng.below(a.pub.n), y = rng.below(a.pub.n);
      REQUIRE(decrypt(a, add(a.pub, encrypt(a.pub, x, rng),
                             encrypt(a.pub, y, rng))) == (x + y) % a.pub.n);
    }
  }

  TEST_CASE("hex") {
    CHECK(to_hex(255) == "ff");
    CHECK(from_hex("ff") == 255);
    CHECK(from_hex(to_hex(mpz_class("123456789012345678901234567890"))) ==
          mpz_class("123456789012345678901234567890"));
    CHECK_THROWS_AS(from_hex("xyz"), FormatError);
  }

  TEST_CASE("encrypted distance") {
    auto k = keypair_from_primes(5, 7);
    RandomSource rng(3);
    auto t = encrypt_template(k.pub, bv("1011"), rng);
    CHECK(t.size() == 4);
    CHECK(decrypt(k, encrypted_distance(k.pub, t, bv("1101"), rng)) == 2);
    CHECK(decrypt(k, encrypted_distance(k.pub, t, bv("1011"), rng)) == 0);
    auto z = encrypt_template(k.pub, bv("0000"), rng);
    CHECK(decrypt(k, encrypted_distance(k.pub, z, bv("1111"), rng)) == 4);
    CHECK_THROWS_AS(encrypted_distance(k.pub, t, bv("11"), rng),
                    LengthMismatch);
    CHECK(storage_bits(t, k.pub) == 5 * 11);
  }

  TEST_CASE("encrypted distance is exact for every pair at n = 8") {
    auto k = keypair_from_primes(251, 241);
    RandomSource rng(4);
    for (const auto& a : all_vectors(8)) {
      auto t = encrypt_template(k.pub, a, rng);
      for (const auto& d : all_vectors(8)) {
        REQUIRE(decrypt(k, encrypted_distance(k.pub, t, d, rng)) ==
                static_cast<unsigned long>(squared_distance(a, d)));
      }
    }
  }

  TEST_CASE("blinded comparison arithmetic") {
    auto k = keypair_from_primes(251, 241);
    RandomSource rng(5);
    auto dist2 = encrypt(k.pub, 2, rng);
    auto c = blind_difference(k.pub, dist2, 3, Blinding{2, 1}, rng);
    auto reply = reveal_sign(k, c);
    CHECK(reply.observed == -3);
    CHECK(reply.negative);
    // dist = theta + 1 leaves only r >= 0.
    auto c4 = blind_difference(k.pub, encrypt(k.pub, 4, rng), 3, Blinding{5, 4},
                               rng);
    CHECK(reveal_sign(k, c4).observed == 4);
    CHECK_FALSE(reveal_sign(k, c4).negative);
    for (int i = 0; i < 50; ++i) {
      auto b = draw_blinding(k.pub, 8, 3, rng);
      CHECK(b.s >= 1);
      CHECK(b.r < b.s);
      auto cd = blind_difference(k.pub, encrypt(k.pub, 3, rng), 3, b, rng);
      CHECK(reveal_sign(k, cd).negative);
    }
    for (unsigned long d = 0; d <= 8; ++d) {
      for (std::size_t theta = 0; theta < 8; ++theta) {
        REQUIRE(compare(k, encrypt(k.pub, d, rng), 8, theta, rng) ==
                (d <= theta));
      }
    }
    CHECK_THROWS_AS(max_multiplier(keypair_from_primes(5, 7).pub, 30, 3),
                    InvalidArgument);
  }

  TEST_CASE("blinding hides the difference") {
    auto k = keygen(64, 9);
    RandomSource rng(6);
    std::set<std::string> seen;
    for (int i = 0; i < 20; ++i) {
      auto c = blind_difference(k.pub, encrypt(k.pub, 2, rng), 3,
                                draw_blinding(k.pub, 8, 3, rng), rng);
      seen.insert(reveal_sign(k, c).observed.get_str());
    }
    CHECK(seen.size() > 1);
  }

  TEST_CASE("wire messages") {
    Message m{1, msg::kHello, "s1", {{"id", "alice"}}};
    auto line = encode_message(m);
    CHECK(line.find('\n') == line.size() - 1);
    auto back = decode_message(line);
    CHECK(back.type == msg::kHello);
    CHECK(back.sid == "s1");
    CHECK(back.payload["id"] == "alice");
    CHECK_THROWS_AS(decode_message("{not json"), FormatError);
    CHECK_THROWS_AS(decode_message("{\"type\":\"HELLO\"}"), FormatError);
  }

  TEST_CASE("template store persists") {
    auto path = (std::filesystem::temp_directory_path() /
                 "securebio_store_test.json")
                    .string();
    std::filesystem::remove(path);
    auto k = keypair_from_primes(251, 241);
    RandomSource rng(1);
    {
      auto store = TemplateStore::Open(path);
      store->put("alice", StoredEntry{k.pub, encrypt_template(k.pub, bv("1011"), rng), 1});
      store->save();
    }
    auto again = TemplateStore::Open(path);
    CHECK(again->ids() == std::vector<std::string>{"alice"});
    auto e = again->get("alice");
    REQUIRE(e.has_value());
    CHECK(e->theta == 1);
    CHECK(e->pub.n == k.pub.n);
    CHECK(decrypt(k, e->tmpl.sum_squares) == 3);
    CHECK_FALSE(again->get("bob").has_value());
    std::filesystem::remove(path);
  }

  TEST_CASE("remote protocol") {
    auto store = std::make_shared<TemplateStore>();
    std::vector<std::string> log;
    std::mutex log_mu;
    SmcServer server(store, 7, [&](const std::string& s) {
      std::lock_guard lock(log_mu);
      log.push_back(s);
    });
    const auto port = server.start(0);
    auto key = keygen(64, 11);
    RandomSource rng(8);
    enroll_remote("127.0.0.1", port, "alice",
                  StoredEntry{key.pub, encrypt_template(key.pub, bv("1011"), rng), 0});
    enroll_remote("127.0.0.1", port, "bob",
                  StoredEntry{key.pub, encrypt_template(key.pub, bv("1011"), rng), 1});

    CHECK(authenticate_remote("127.0.0.1", port, "alice", bv("1011"), key).accepted);
    CHECK_FALSE(authenticate_remote("127.0.0.1", port, "alice", bv("1001"), key).accepted);
    CHECK(authenticate_remote("127.0.0.1", port, "bob", bv("1001"), key).accepted);
    // Squared distance 2 against theta 1.
    CHECK_FALSE(authenticate_remote("127.0.0.1", port, "bob", bv("1101"), key).accepted);

    try {
      authenticate_remote("127.0.0.1", port, "carol", bv("1011"), key);
      FAIL("expected unknown id");
    } catch (const RemoteError& e) {
      CHECK(e.code() == err::kUnknownId);
    }
    try {
      authenticate_remote("127.0.0.1", port, "alice", bv("1011"), keygen(64, 12));
      FAIL("expected key mismatch");
    } catch (const RemoteError& e) {
      CHECK(e.code() == err::kKeyMismatch);
    }
    try {
      authenticate_remote("127.0.0.1", port, "alice", bv("10"), key);
      FAIL("expected bad probe");
    } catch (const RemoteError& e) {
      CHECK(e.code() == err::kBadProbe);
    }

    // Right modulus, wrong private key: garbage decryptions.
    Keypair forged = key;
    forged.priv = keygen(64, 13).priv;
    auto r = authenticate_remote("127.0.0.1", port, "alice", bv("1011"), forged);
    CHECK_FALSE(r.accepted);
    CHECK(server.protocol_failures() == 1);

    CHECK(error_code(raw_exchange(port, "garbage")) == err::kMalformed);
    CHECK(error_code(raw_exchange(
              port, R"({"v":2,"type":"HELLO","sid":"","payload":{}})")) ==
          err::kVersion);
    CHECK(error_code(raw_exchange(
              port, R"({"v":1,"type":"SIGN_REPLY","sid":"","payload":{}})")) ==
          err::kUnexpected);

    server.stop();
    CHECK_THROWS_AS(authenticate_remote("127.0.0.1", port, "alice", bv("1011"), key),
                    ConnectionError);
    std::lock_guard lock(log_mu);
    bool logged = false;
    for (const auto& s : log) logged |= s.find("protocol failure") != std::string::npos;
    CHECK(logged);
  }
}
