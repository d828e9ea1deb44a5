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
#include <random>
#include <set>

#include "doctest.h"

#include "common.h"
#include "securebio/error.h"
#include "securebio/rng.h"

using namespace securebio;
using securebio::testing::bv;

TEST_SUITE("bitvec") {
  TEST_CASE("string round trip and bit order") {
    BitVector v = bv("1011");
    CHECK(v.size() == 4);
    CHECK(v.get(0));
    CHECK_FALSE(v.get(1));
    CHECK(v.to_string() == "1011");
    CHECK(v.to_integer() == 0b1101u);
    CHECK(BitVector::FromInteger(0b1101u, 4) == v);
    CHECK(v.weight() == 3);
    CHECK(v.parity());
  }

  TEST_CASE("long vectors cross word boundaries") {
    std::string s(130, '0');
    s[0] = s[63] = s[64] = s[129] = '1';
    BitVector v = BitVector::FromString(s);
    CHECK(v.weight() == 4);
    CHECK(v.to_string() == s);
    BitVector w = ~v;
    CHECK(w.weight() == 126);
    CHECK((v ^ w).weight() == 130);
    CHECK((v & w).weight() == 0);
    CHECK(BitVector::Ones(130).weight() == 130);
  }

  TEST_CASE("inner product and distances") {
    CHECK(bv("1011").dot(bv("1101")) == false);
    CHECK(bv("1011").dot(bv("1000")) == true);
    CHECK(hamming_distance(bv("1011"), bv("1101")) == 2);
    CHECK(hamming_distance3(bv("1100"), bv("1010"), bv("0000")) == 2);
    CHECK(hamming_distance3(bv("1100"), bv("1010"), bv("0110")) == 0);
    CHECK(hamming_distance3(bv("1100"), bv("1010"), bv("1111")) == 2);
  }

  TEST_CASE("ordering is lexicographic on the text") {
    CHECK(bv("0101") < bv("0110"));
    CHECK(bv("0111") < bv("1000"));
    CHECK_FALSE(bv("1000") < bv("0111"));
    CHECK(bv("01") < bv("010"));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(BitVector::FromString("10x1"), FormatError);
    CHECK_THROWS_AS(bv("101") ^ bv("1010"), LengthMismatch);
    CHECK_THROWS_AS(hamming_distance(bv("1"), bv("10")), LengthMismatch);
    CHECK_THROWS_AS(require_size(bv("10"), 3, "probe"), LengthMismatch);
    CHECK_THROWS_AS(BitVector(65).to_integer(), InvalidArgument);
  }

  TEST_CASE("hash separates vectors") {
    std::set<std::size_t> hashes;
    for (std::uint64_t i = 0; i < 256; ++i) {
      hashes.insert(BitVectorHash{}(BitVector::FromInteger(i, 8)));
    }
    CHECK(hashes.size() == 256);
  }
}

TEST_SUITE("rng") {
  TEST_CASE("engine is the standard 64-bit Mersenne twister") {
    // Reference value required of every conforming std::mt19937_64.
    Rng r(5489u);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = r.next();
    CHECK(v == 9981545732273789042ull);
  }

  TEST_CASE("streams are deterministic and label dependent") {
    Rng a = Rng::Stream(7, "enroll");
    Rng b = Rng::Stream(7, "enroll");
    Rng c = Rng::Stream(7, "probe");
    Rng d = Rng::Stream(7, "enroll", 1);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
  }

  TEST_CASE("below stays in range and hits every value") {
    Rng r(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
      auto v = r.below(7);
      CHECK(v < 7);
      seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK_THROWS(r.below(0));
  }

  TEST_CASE("permutations are bijections") {
    Rng r(11);
    for (int t = 0; t < 50; ++t) {
      auto p = r.permutation(13);
      std::set<std::size_t> s(p.begin(), p.end());
      CHECK(s.size() == 13);
      CHECK(*s.rbegin() == 12);
    }
  }

  TEST_CASE("bernoulli bits concentrate") {
    Rng r(1);
    BitVector v = r.bernoulli_bits(100000, 0.1);
    CHECK(v.weight() > 9700);
    CHECK(v.weight() < 10300);
    CHECK(r.bernoulli_bits(64, 0.0).weight() == 0);
  }
}
