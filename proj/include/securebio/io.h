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

#ifndef SECUREBIO_IO_H_
#define SECUREBIO_IO_H_

#include <string>

#include "json.hpp"

#include "securebio/cancelable.h"
#include "securebio/gf2.h"
#include "securebio/paillier.h"
#include "securebio/source.h"

// JSON encodings of matrices, keys and feature data, plus file helpers.
// Decoders throw FormatError on malformed input.
namespace securebio::io {

/// Raised for unreadable or unwritable files.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Accepts either a list of row strings ["1011", "0111"] or an object
/// {"rows": r, "cols": c, "bits": "<r*c bits, row-major>"}, or a string in
/// the plain-text matrix format.
gf2::BitMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const gf2::BitMatrix& m);

BitVector bits_from_json(const nlohmann::json& j, std::string_view what);

/// {"kind": "permute_salt", "permutation": [...], "salt": "0101"} or
/// {"kind": "projection", "projection": [[1, -1, ...], ...]}.
nlohmann::json key_to_json(const cancelable::TransformKey& key);
cancelable::TransformKey key_from_json(const nlohmann::json& j);

/// {"p": hex, "q": hex}; the public part is rebuilt from the primes.
nlohmann::json keypair_to_json(const paillier::Keypair& key);
paillier::Keypair keypair_from_json(const nlohmann::json& j);

/// [{"x": .., "y": .., "theta": ..}, ...]
nlohmann::json minutiae_to_json(const source::MinutiaMap& map);
source::MinutiaMap minutiae_from_json(const nlohmann::json& j,
                                      const source::Bounds& bounds);

std::string read_file(const std::string& path);
/// Writes atomically (temporary file plus rename).
void write_file(const std::string& path, const std::string& content);
nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace securebio::io

#endif  // SECUREBIO_IO_H_
