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

#ifndef SECUREBIO_BITVEC_H_
#define SECUREBIO_BITVEC_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "securebio/error.h"

namespace securebio {

/// Fixed-length binary vector over GF(2).
///
/// Bit `i` is the i-th character of the textual form, so "1011" has bits
/// (1, 0, 1, 1). Ordering is lexicographic on that textual form. Used for
/// feature vectors (A, B, C, D), syndromes, salts and codewords alike.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  /// Parses a string of '0'/'1' characters. Throws FormatError otherwise.
  static BitVector FromString(std::string_view bits);
  /// Low `size` bits of `value`; bit i of the vector is bit i of `value`.
  static BitVector FromInteger(std::uint64_t value, std::size_t size);
  static BitVector Ones(std::size_t size);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  bool operator[](std::size_t i) const { return get(i); }

  std::size_t weight() const;
  /// Parity of the number of set bits.
  bool parity() const { return weight() & 1u; }
  /// Parity of popcount(*this & other); the GF(2) inner product.
  bool dot(const BitVector& other) const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  friend BitVector operator&(BitVector lhs, const BitVector& rhs) {
    lhs &= rhs;
    return lhs;
  }
  BitVector operator~() const;

  /// Integer whose bit i is bit i of the vector. Requires size() <= 64.
  std::uint64_t to_integer() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  /// Lexicographic order on the textual form (shorter prefixes first).
  friend bool operator<(const BitVector& a, const BitVector& b);

 private:
  void clear_tail();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Hamming distance. Throws LengthMismatch if sizes differ.
std::size_t hamming_distance(const BitVector& a, const BitVector& b);

/// Weight of a ^ b ^ c without materializing the sum. Sizes must agree.
std::size_t hamming_distance3(const BitVector& a, const BitVector& b,
                              const BitVector& c);

void require_size(const BitVector& v, std::size_t expected,
                  std::string_view what);

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept;
};

}  // namespace securebio

#endif  // SECUREBIO_BITVEC_H_
