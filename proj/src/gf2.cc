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

#include "securebio/gf2.h"

#include <algorithm>
#include <sstream>

namespace securebio::gf2 {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::FromRows(std::vector<BitVector> rows, std::size_t cols) {
  for (const auto& r : rows) require_size(r, cols, "matrix row");
  BitMatrix m;
  m.cols_ = cols;
  m.rows_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::FromStrings(const std::vector<std::string>& rows) {
  if (rows.empty()) return BitMatrix();
  std::vector<BitVector> parsed;
  parsed.reserve(rows.size());
  for (const auto& r : rows) parsed.push_back(BitVector::FromString(r));
  const std::size_t cols = parsed.front().size();
  return FromRows(std::move(parsed), cols);
}

BitMatrix BitMatrix::Identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::Random(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m;
  m.cols_ = cols;
  m.rows_.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) m.rows_.push_back(rng.bits(cols));
  return m;
}

BitMatrix BitMatrix::ParseText(std::string_view text) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string bits;
    for (char c : line) {
      if (c == '0' || c == '1') {
        bits.push_back(c);
      } else if (c == '#') {
        break;
      } else if (c != ' ' && c != '\t' && c != '\r' && c != ',') {
        throw FormatError("unexpected character in matrix text: '" +
                          std::string(1, c) + "'");
      }
    }
    if (!bits.empty()) rows.push_back(std::move(bits));
  }
  if (rows.empty()) throw FormatError("matrix text has no rows");
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw FormatError("matrix rows have unequal lengths");
    }
  }
  return FromStrings(rows);
}

BitVector BitMatrix::multiply(const BitVector& x) const {
  require_size(x, cols_, "matrix-vector operand");
  BitVector out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out.set(i, rows_[i].dot(x));
  return out;
}

BitVector BitMatrix::multiply_transpose(const BitVector& z) const {
  require_size(z, rows_.size(), "transpose-vector operand");
  BitVector out(cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (z.get(i)) out ^= rows_[i];
  }
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

BitMatrix BitMatrix::stack(const BitMatrix& below) const {
  if (below.cols_ != cols_ && !below.rows_.empty() && !rows_.empty()) {
    throw LengthMismatch("stacked matrices must have equal column counts");
  }
  BitMatrix out = *this;
  if (rows_.empty()) out.cols_ = below.cols_;
  out.rows_.insert(out.rows_.end(), below.rows_.begin(), below.rows_.end());
  return out;
}

std::size_t BitMatrix::rank() const { return row_reduce(*this).pivots.size(); }

std::string BitMatrix::to_text() const {
  std::string out;
  for (const auto& r : rows_) {
    out += r.to_string();
    out += '\n';
  }
  return out;
}

Echelon row_reduce(const BitMatrix& m) {
  std::vector<BitVector> rows = m.row_vectors();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return Echelon{BitMatrix::FromRows(std::move(rows), m.cols()),
                 std::move(pivots)};
}

namespace {

std::vector<std::size_t> free_columns_of(const Echelon& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  return free;
}

void require_full_row_rank(const BitMatrix& h, const Echelon& e) {
  if (e.pivots.size() != h.rows()) {
    throw InvalidArgument("parity-check matrix is rank deficient: rank " +
                          std::to_string(e.pivots.size()) + " < " +
                          std::to_string(h.rows()) + " rows");
  }
}

}  // namespace

BitMatrix derive_generator(const BitMatrix& h) {
  const Echelon e = row_reduce(h);
  require_full_row_rank(h, e);
  const std::vector<std::size_t> free = free_columns_of(e, h.cols());
  std::vector<BitVector> basis;
  basis.reserve(free.size());
  for (std::size_t f : free) {
    BitVector g(h.cols());
    g.set(f, true);
    // Pivot variable of row r equals the coefficient of f in that row.
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (e.reduced.get(r, f)) g.set(e.pivots[r], true);
    }
    basis.push_back(std::move(g));
  }
  return BitMatrix::FromRows(std::move(basis), h.cols());
}

void check_enumeration(std::size_t dimension, std::size_t cap,
                       std::string_view what) {
  if (dimension >= 63 || (std::uint64_t{1} << dimension) > cap) {
    throw CapExceeded(std::string(what) + " needs 2^" +
                      std::to_string(dimension) +
                      " elements, above the cap of " + std::to_string(cap));
  }
}

LinearCode::LinearCode(BitMatrix h) : h_(std::move(h)) {
  const Echelon e = row_reduce(h_);
  require_full_row_rank(h_, e);
  g_ = derive_generator(h_);
  free_columns_ = free_columns_of(e, h_.cols());

  // Right inverse: reduce [H | I] and read off preimages of unit syndromes.
  const std::size_t m = h_.rows();
  const std::size_t n = h_.cols();
  std::vector<BitVector> aug;
  aug.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    BitVector row(n + m);
    for (std::size_t c = 0; c < n; ++c) row.set(c, h_.get(i, c));
    row.set(n + i, true);
    aug.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && !aug[p].get(c)) ++p;
    if (p == m) continue;
    std::swap(aug[r], aug[p]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i != r && aug[i].get(c)) aug[i] ^= aug[r];
    }
    pivots.push_back(c);
    ++r;
  }
  // Row r now reads: x_{pivot r} (+ free terms) = sum_j T[r][j] s_j, so with
  // free variables zero, the preimage of e_j sets pivot r iff T[r][j] = 1.
  preimages_.assign(m, BitVector(n));
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t j = 0; j < m; ++j) {
      if (aug[row].get(n + j)) preimages_[j].set(pivots[row], true);
    }
  }

  if (k() < 63 && (std::uint64_t{1} << k()) <= kDefaultEnumerationCap) {
    const std::size_t count = std::size_t{1} << k();
    codewords_.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
      codewords_.push_back(encode(BitVector::FromInteger(j, k())));
    }
    min_distance_ = n + 1;
    for (std::size_t j = 1; j < count; ++j) {
      min_distance_ = std::min(min_distance_, codewords_[j].weight());
    }
  } else {
    min_distance_ = 0;  // unknown
  }
}

LinearCode LinearCode::Random(std::size_t n, std::size_t m, Rng& rng) {
  if (m > n) throw InvalidArgument("random code needs m <= n");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    BitMatrix h = BitMatrix::Random(m, n, rng);
    if (h.rank() == m) return LinearCode(std::move(h));
  }
  throw InvalidArgument("could not draw a full-rank parity-check matrix");
}

const std::vector<BitVector>& LinearCode::codewords(std::size_t cap) const {
  check_enumeration(k(), cap, "codeword enumeration");
  if (codewords_.empty()) {
    throw CapExceeded("codeword list is not materialized for k = " +
                      std::to_string(k()));
  }
  return codewords_;
}

BitVector LinearCode::encode(const BitVector& message) const {
  require_size(message, k(), "message");
  return g_.multiply_transpose(message);
}

BitVector LinearCode::message_of(const BitVector& codeword) const {
  require_size(codeword, n(), "codeword");
  BitVector z(k());
  for (std::size_t j = 0; j < free_columns_.size(); ++j) {
    z.set(j, codeword.get(free_columns_[j]));
  }
  return z;
}

BitVector LinearCode::coset_representative(const BitVector& s) const {
  require_size(s, m(), "syndrome");
  BitVector x(n());
  for (std::size_t j = 0; j < m(); ++j) {
    if (s.get(j)) x ^= preimages_[j];
  }
  return x;
}

std::size_t LinearCode::minimum_distance() const {
  if (min_distance_ == 0) {
    throw CapExceeded("minimum distance unknown for k = " +
                      std::to_string(k()));
  }
  return min_distance_;
}

BitVector syndrome(const LinearCode& code, const BitVector& x) {
  require_size(x, code.n(), "feature vector");
  return code.parity_check().multiply(x);
}

Coset enumerate_coset(const LinearCode& code, const BitVector& s,
                      std::size_t cap) {
  const BitVector rep = code.coset_representative(s);
  Coset coset{s, {}};
  check_enumeration(code.k(), cap, "coset enumeration");
  coset.members.reserve(std::size_t{1} << code.k());
  code.for_each_codeword([&](const BitVector& c) {
    coset.members.push_back(rep ^ c);
  }, cap);
  std::sort(coset.members.begin(), coset.members.end());
  return coset;
}

DecodeResult decode_in_coset(const LinearCode& code, const BitVector& probe,
                             const BitVector& s, std::size_t cap) {
  require_size(probe, code.n(), "probe");
  const BitVector rep = code.coset_representative(s);
  DecodeResult best{BitVector(), code.n() + 1, 0};
  code.for_each_codeword([&](const BitVector& c) {
    const std::size_t d = hamming_distance3(probe, rep, c);
    if (d > best.distance) return;
    BitVector member = rep ^ c;
    if (d < best.distance) {
      best = DecodeResult{std::move(member), d, 1};
    } else {
      ++best.ties;
      if (member < best.member) best.member = std::move(member);
    }
  }, cap);
  return best;
}

BitVector syndrome_decode(const LinearCode& code, const BitVector& probe,
                          const BitVector& s, std::size_t cap) {
  return decode_in_coset(code, probe, s, cap).member;
}

CosetLeaderTable::CosetLeaderTable(const LinearCode& code, std::size_t cap) {
  const std::size_t n = code.n();
  const std::size_t m = code.m();
  if (m >= 64) throw CapExceeded("coset table needs fewer than 64 checks");
  check_enumeration(n, cap, "coset leader table");
  columns_.assign(n, 0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (code.parity_check().get(r, c)) columns_[c] |= std::uint64_t{1} << r;
    }
  }
  const std::size_t entries = std::size_t{1} << m;
  weight_.assign(entries, 0xff);
  count_.assign(entries, 0);
  // Gray-code walk over all x, tracking H x and w(x).
  std::uint64_t s = 0;
  std::uint64_t x = 0;
  std::size_t w = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (i != 0) {
      const int j = std::countr_zero(i);
      x ^= std::uint64_t{1} << j;
      s ^= columns_[static_cast<std::size_t>(j)];
      w = (x >> j) & 1u ? w + 1 : w - 1;
    }
    if (w < weight_[s]) {
      weight_[s] = static_cast<std::uint8_t>(w);
      count_[s] = 1;
    } else if (w == weight_[s] && count_[s] < 255) {
      ++count_[s];
    }
  }
}

std::uint64_t CosetLeaderTable::syndrome_of(const BitVector& x) const {
  require_size(x, columns_.size(), "vector");
  std::uint64_t s = 0;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (x.get(c)) s ^= columns_[c];
  }
  return s;
}

}  // namespace securebio::gf2
