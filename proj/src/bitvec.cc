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

#include "securebio/bitvec.h"

#include <algorithm>

namespace securebio {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t size)
    : size_(size), words_(word_count(size), 0) {}

BitVector BitVector::FromString(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw FormatError("bit string contains non-binary character '" +
                        std::string(1, bits[i]) + "'");
    }
  }
  return v;
}

BitVector BitVector::FromInteger(std::uint64_t value, std::size_t size) {
  if (size > 64) throw InvalidArgument("FromInteger supports at most 64 bits");
  BitVector v(size);
  if (size > 0) {
    v.words_[0] = value;
    v.clear_tail();
  }
  return v;
}

BitVector BitVector::Ones(std::size_t size) {
  BitVector v(size);
  std::fill(v.words_.begin(), v.words_.end(), ~std::uint64_t{0});
  v.clear_tail();
  return v;
}

void BitVector::clear_tail() {
  if (size_ % 64 != 0) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

std::size_t BitVector::weight() const {
  std::size_t w = 0;
  for (std::uint64_t word : words_) w += std::popcount(word);
  return w;
}

bool BitVector::dot(const BitVector& other) const {
  require_size(other, size_, "inner product operand");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    acc ^= words_[i] & other.words_[i];
  }
  return std::popcount(acc) & 1;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require_size(other, size_, "xor operand");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_size(other, size_, "and operand");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector out(*this);
  for (auto& w : out.words_) w = ~w;
  out.clear_tail();
  return out;
}

std::uint64_t BitVector::to_integer() const {
  if (size_ > 64) throw InvalidArgument("to_integer supports at most 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

bool operator<(const BitVector& a, const BitVector& b) {
  const std::size_t common = std::min(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < common; ++i) {
    std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff == 0) continue;
    const std::size_t bit = std::countr_zero(diff);
    const std::size_t index = i * 64 + bit;
    if (index < a.size_ && index < b.size_) {
      return ((a.words_[i] >> bit) & 1u) == 0;
    }
    break;
  }
  // One is a prefix of the other within the common length.
  const std::size_t n = std::min(a.size_, b.size_);
  for (std::size_t i = common * 64; i < n; ++i) {
    if (a.get(i) != b.get(i)) return !a.get(i);
  }
  return a.size_ < b.size_;
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
  require_size(b, a.size(), "hamming distance operand");
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t d = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) d += std::popcount(wa[i] ^ wb[i]);
  return d;
}

std::size_t hamming_distance3(const BitVector& a, const BitVector& b,
                              const BitVector& c) {
  const auto wa = a.words();
  const auto wb = b.words();
  const auto wc = c.words();
  std::size_t d = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    d += std::popcount(wa[i] ^ wb[i] ^ wc[i]);
  }
  return d;
}

void require_size(const BitVector& v, std::size_t expected,
                  std::string_view what) {
  if (v.size() != expected) {
    throw LengthMismatch(std::string(what) + ": expected " +
                         std::to_string(expected) + " bits, got " +
                         std::to_string(v.size()));
  }
}

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
  std::size_t h = std::hash<std::size_t>{}(v.size());
  for (std::uint64_t w : v.words()) {
    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

}  // namespace securebio
