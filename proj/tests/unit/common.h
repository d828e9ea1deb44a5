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

#ifndef SECUREBIO_TESTS_COMMON_H_
#define SECUREBIO_TESTS_COMMON_H_

#include <memory>
#include <string>
#include <vector>

#include "securebio/bitvec.h"
#include "securebio/gf2.h"

namespace securebio::testing {

inline BitVector bv(const std::string& s) { return BitVector::FromString(s); }

inline std::shared_ptr<const gf2::LinearCode> code_of(
    const std::vector<std::string>& rows) {
  return std::make_shared<const gf2::LinearCode>(
      gf2::BitMatrix::FromStrings(rows));
}

// The four-bit worked example and its two companion systems.
inline const std::vector<std::string> kH1 = {"1011", "0111"};
inline const std::vector<std::string> kH2 = {"1011", "0101"};
inline const std::vector<std::string> kH3 = {"1110", "1101"};

// Fixed codes whose reference metrics come from tests/oracle/oracle.py.
inline const std::vector<std::string> kH8 = {"10110100", "01101010",
                                             "11010001"};
inline const std::vector<std::string> kH10 = {"1011000110", "0110101001",
                                              "1100110010", "0001011111"};

inline std::vector<BitVector> all_vectors(std::size_t n) {
  std::vector<BitVector> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    out.push_back(BitVector::FromInteger(i, n));
  }
  return out;
}

}  // namespace securebio::testing

#endif  // SECUREBIO_TESTS_COMMON_H_
