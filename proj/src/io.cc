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

#include "securebio/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace securebio::io {

using nlohmann::json;

gf2::BitMatrix matrix_from_json(const json& j) {
  if (j.is_string()) return gf2::BitMatrix::ParseText(j.get<std::string>());
  if (j.is_array()) {
    std::vector<std::string> rows;
    for (const auto& r : j) {
      if (!r.is_string()) throw FormatError("matrix rows must be bit strings");
      rows.push_back(r.get<std::string>());
    }
    if (rows.empty()) throw FormatError("matrix has no rows");
    return gf2::BitMatrix::FromStrings(rows);
  }
  if (j.is_object()) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("bits")) {
      throw FormatError("matrix object needs rows, cols and bits");
    }
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const json& bits = j.at("bits");
    std::vector<BitVector> out;
    if (bits.is_string()) {
      // Flat row-major string.
      const auto flat = bits.get<std::string>();
      if (flat.size() != rows * cols) {
        throw FormatError("matrix bits length " + std::to_string(flat.size()) +
                          " does not match " + std::to_string(rows) + "x" +
                          std::to_string(cols));
      }
      for (std::size_t r = 0; r < rows; ++r) {
        out.push_back(BitVector::FromString(flat.substr(r * cols, cols)));
      }
    } else if (bits.is_array()) {
      if (bits.size() != rows) {
        throw FormatError("matrix declares " + std::to_string(rows) +
                          " rows but lists " + std::to_string(bits.size()));
      }
      for (const auto& row : bits) {
        if (!row.is_array() || row.size() != cols) {
          throw FormatError("matrix row must list " + std::to_string(cols) +
                            " entries");
        }
        BitVector v(cols);
        for (std::size_t c = 0; c < cols; ++c) {
          const json& e = row[c];
          if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1)) {
            throw FormatError("matrix entries must be 0 or 1");
          }
          v.set(c, e.get<int>() == 1);
        }
        out.push_back(std::move(v));
      }
    } else {
      throw FormatError("matrix bits must be a string or an array of rows");
    }
    return gf2::BitMatrix::FromRows(std::move(out), cols);
  }
  throw FormatError("unsupported matrix encoding");
}

json matrix_to_json(const gf2::BitMatrix& m) {
  json rows = json::array();
  for (const auto& r : m.row_vectors()) rows.push_back(r.to_string());
  return rows;
}

BitVector bits_from_json(const json& j, std::string_view what) {
  if (!j.is_string()) {
    throw FormatError(std::string(what) + " must be a string of 0/1");
  }
  return BitVector::FromString(j.get<std::string>());
}

json key_to_json(const cancelable::TransformKey& key) {
  if (key.kind == cancelable::TransformKind::kPermuteSalt) {
    return json{{"kind", "permute_salt"},
                {"permutation", key.permutation},
                {"salt", key.salt.to_string()}};
  }
  return json{{"kind", "projection"}, {"projection", key.projection}};
}

cancelable::TransformKey key_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "permute_salt") {
      return cancelable::make_permute_salt_key(
          j.at("permutation").get<std::vector<std::size_t>>(),
          bits_from_json(j.at("salt"), "salt"));
    }
    if (kind == "projection") {
      cancelable::TransformKey key;
      key.kind = cancelable::TransformKind::kRandomProjection;
      key.projection = j.at("projection").get<std::vector<std::vector<int>>>();
      key.validate();
      return key;
    }
    throw FormatError("unknown key kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed key: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid key: ") + e.what());
  }
}

json keypair_to_json(const paillier::Keypair& key) {
  return json{{"p", paillier::to_hex(key.priv.p)},
              {"q", paillier::to_hex(key.priv.q)},
              {"n", paillier::to_hex(key.pub.n)}};
}

paillier::Keypair keypair_from_json(const json& j) {
  try {
    return paillier::keypair_from_primes(
        paillier::from_hex(j.at("p").get<std::string>()),
        paillier::from_hex(j.at("q").get<std::string>()));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed keypair: ") + e.what());
  }
}

json minutiae_to_json(const source::MinutiaMap& map) {
  json out = json::array();
  for (const auto& m : map.points()) {
    out.push_back({{"x", m.x}, {"y", m.y}, {"theta", m.theta}});
  }
  return out;
}

source::MinutiaMap minutiae_from_json(const json& j,
                                      const source::Bounds& bounds) {
  try {
    std::vector<source::Minutia> points;
    for (const auto& p : j) {
      points.push_back({p.at("x").get<double>(), p.at("y").get<double>(),
                        p.at("theta").get<double>()});
    }
    return source::MinutiaMap(std::move(points), bounds);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed minutia map: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("error writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot move '" + tmp + "' to '" + path + "'");
  }
}

json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
}

}  // namespace securebio::io
