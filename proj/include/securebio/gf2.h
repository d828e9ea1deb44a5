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

#ifndef SECUREBIO_GF2_H_
#define SECUREBIO_GF2_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "securebio/bitvec.h"
#include "securebio/rng.h"

namespace securebio::gf2 {

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

/// Dense binary matrix stored as row bit vectors.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  /// All rows must have equal length; an empty row list gives a 0 x cols matrix.
  static BitMatrix FromRows(std::vector<BitVector> rows, std::size_t cols);
  /// Rows given as '0'/'1' strings.
  static BitMatrix FromStrings(const std::vector<std::string>& rows);
  static BitMatrix Identity(std::size_t n);
  static BitMatrix Random(std::size_t rows, std::size_t cols, Rng& rng);
  /// Parses whitespace-separated rows of 0/1 characters (blank lines and
  /// lines starting with '#' are ignored; spaces inside a row are allowed).
  static BitMatrix ParseText(std::string_view text);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const BitVector& row(std::size_t i) const { return rows_[i]; }
  const std::vector<BitVector>& row_vectors() const { return rows_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

  /// M * x over GF(2); result has rows() bits.
  BitVector multiply(const BitVector& x) const;
  /// M^T * z over GF(2); z has rows() bits, result has cols() bits.
  BitVector multiply_transpose(const BitVector& z) const;
  BitMatrix transpose() const;
  /// Rows of this matrix followed by rows of `below`.
  BitMatrix stack(const BitMatrix& below) const;
  std::size_t rank() const;
  std::string to_text() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Reduced row echelon form together with pivot columns.
struct Echelon {
  BitMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
Echelon row_reduce(const BitMatrix& m);

/// Basis of the null space of `h`, one basis vector per free column of the
/// reduced form, in increasing free-column order. Throws InvalidArgument if
/// `h` is not of full row rank.
BitMatrix derive_generator(const BitMatrix& h);

/// Binary linear code defined by a full-row-rank m x n parity-check matrix.
///
/// Immutable after construction. When 2^k fits the default enumeration cap
/// the codeword list is materialized eagerly, indexed by message: codeword
/// j is sum of generator rows selected by the bits of j.
class LinearCode {
 public:
  explicit LinearCode(BitMatrix h);

  /// Random code with an m x n parity-check matrix of full row rank.
  static LinearCode Random(std::size_t n, std::size_t m, Rng& rng);

  const BitMatrix& parity_check() const { return h_; }
  const BitMatrix& generator() const { return g_; }
  std::size_t n() const { return h_.cols(); }
  std::size_t m() const { return h_.rows(); }
  std::size_t k() const { return g_.rows(); }
  double rate() const {
    return n() == 0 ? 0.0 : static_cast<double>(k()) / static_cast<double>(n());
  }

  /// Codewords indexed by message. Only materialized when 2^k is within the
  /// default cap; throws CapExceeded otherwise or when 2^k > cap.
  const std::vector<BitVector>& codewords(
      std::size_t cap = kDefaultEnumerationCap) const;
  /// Calls fn(codeword) for all 2^k codewords; throws CapExceeded if 2^k > cap.
  template <typename Fn>
  void for_each_codeword(Fn&& fn, std::size_t cap = kDefaultEnumerationCap) const;
  /// G^T z: the codeword carrying message z (k bits).
  BitVector encode(const BitVector& message) const;
  /// The message z with G^T z = c. `c` must be a codeword.
  BitVector message_of(const BitVector& codeword) const;
  /// Some x with H x = s (deterministic).
  BitVector coset_representative(const BitVector& syndrome) const;
  /// Minimum nonzero codeword weight; n + 1 when k = 0.
  std::size_t minimum_distance() const;

 private:
  BitMatrix h_;
  BitMatrix g_;
  // preimages_[j] satisfies H * preimages_[j] = e_j.
  std::vector<BitVector> preimages_;
  // Free columns of the reduced H; generator row j is the unit vector there.
  std::vector<std::size_t> free_columns_;
  std::vector<BitVector> codewords_;
  std::size_t min_distance_ = 0;
};

void check_enumeration(std::size_t dimension, std::size_t cap,
                       std::string_view what);

template <typename Fn>
void LinearCode::for_each_codeword(Fn&& fn, std::size_t cap) const {
  check_enumeration(k(), cap, "codeword enumeration");
  if (!codewords_.empty()) {
    for (const auto& c : codewords_) fn(c);
    return;
  }
  // Gray-code walk: consecutive codewords differ by one generator row.
  BitVector c(n());
  fn(c);
  const std::uint64_t count = std::uint64_t{1} << k();
  for (std::uint64_t i = 1; i < count; ++i) {
    c ^= g_.row(static_cast<std::size_t>(std::countr_zero(i)));
    fn(c);
  }
}

/// Solution set of H x = s.
struct Coset {
  BitVector syndrome;
  std::vector<BitVector> members;  // sorted lexicographically
};

/// H x over GF(2).
BitVector syndrome(const LinearCode& code, const BitVector& x);

Coset enumerate_coset(const LinearCode& code, const BitVector& syndrome,
                      std::size_t cap = kDefaultEnumerationCap);

struct DecodeResult {
  BitVector member;       // closest coset member (lexicographic tie-break)
  std::size_t distance;   // Hamming distance from probe to member
  std::size_t ties;       // number of coset members at that distance
};

/// Exhaustive minimum-distance decoding within the coset of `syndrome`.
DecodeResult decode_in_coset(const LinearCode& code, const BitVector& probe,
                             const BitVector& syndrome,
                             std::size_t cap = kDefaultEnumerationCap);

/// Closest member of the coset of `syndrome` to `probe`.
BitVector syndrome_decode(const LinearCode& code, const BitVector& probe,
                          const BitVector& syndrome,
                          std::size_t cap = kDefaultEnumerationCap);

/// Weight of the lightest vector (and how many attain it) in every coset,
/// indexed by syndrome. Built by a Gray-code walk over all 2^n vectors.
/// d_H(x, coset(s)) is then leader_weight(H x ^ s).
class CosetLeaderTable {
 public:
  /// Throws CapExceeded when 2^n exceeds `cap`; requires m < 64.
  explicit CosetLeaderTable(const LinearCode& code,
                            std::size_t cap = std::size_t{1} << 28);

  std::size_t weight(std::uint64_t syndrome) const { return weight_[syndrome]; }
  /// Number of minimum-weight members, saturated at 255.
  std::size_t multiplicity(std::uint64_t syndrome) const {
    return count_[syndrome];
  }
  /// Syndrome of x as an integer (bit i = row i).
  std::uint64_t syndrome_of(const BitVector& x) const;

 private:
  std::vector<std::uint64_t> columns_;
  std::vector<std::uint8_t> weight_;
  std::vector<std::uint8_t> count_;
};

}  // namespace securebio::gf2

#endif  // SECUREBIO_GF2_H_
