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
// Python extension. Structured values cross the boundary as JSON text; the
// package's __init__ converts to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "securebio/config.h"
#include "securebio/error.h"
#include "securebio/experiment.h"
#include "securebio/gf2.h"
#include "securebio/io.h"
#include "securebio/metrics.h"
#include "securebio/paillier.h"
#include "securebio/rng.h"
#include "securebio/schemes.h"
#include "securebio/sketch.h"
#include "securebio/smc.h"

namespace py = pybind11;
using nlohmann::json;
using namespace securebio;

namespace {

gf2::LinearCode code_from(const std::vector<std::string>& h) {
  return gf2::LinearCode(gf2::BitMatrix::FromStrings(h));
}

std::vector<std::string> strings_of(const std::vector<BitVector>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

config::ExperimentConfig config_from(const std::string& text) {
  return config::from_json(json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Secure biometric authentication toolkit (native core)";

  static py::exception<Error> base(m, "Error", PyExc_ValueError);
  static py::exception<io::IoError> io_error(m, "IoError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const io::IoError& e) {
      py::set_error(io_error, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    } catch (const json::exception& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def("syndrome", [](const std::vector<std::string>& h, const std::string& x) {
    return gf2::syndrome(code_from(h), BitVector::FromString(x)).to_string();
  }, py::arg("h"), py::arg("x"));

  m.def("enumerate_coset", [](const std::vector<std::string>& h,
                              const std::string& s) {
    return strings_of(gf2::enumerate_coset(code_from(h), BitVector::FromString(s))
                          .members);
  }, py::arg("h"), py::arg("syndrome"));

  m.def("syndrome_decode", [](const std::vector<std::string>& h,
                              const std::string& probe, const std::string& s) {
    return gf2::syndrome_decode(code_from(h), BitVector::FromString(probe),
                                BitVector::FromString(s))
        .to_string();
  }, py::arg("h"), py::arg("probe"), py::arg("syndrome"));

  m.def("rank", [](const std::vector<std::string>& h) {
    return gf2::BitMatrix::FromStrings(h).rank();
  }, py::arg("h"));

  m.def("preset_names", &config::preset_names);
  m.def("_preset", [](const std::string& name) {
    return config::to_json(config::preset(name)).dump();
  });
  m.def("_validate_config", [](const std::string& cfg) {
    return config::to_json(config_from(cfg)).dump();
  });

  m.def("_enroll", [](const std::string& cfg, const std::string& biometric) {
    const auto e = experiment::enroll(config_from(cfg), BitVector::FromString(biometric));
    json out = {{"template", e.tmpl}};
    if (e.key) out["key"] = *e.key;
    if (e.secret) out["secret"] = *e.secret;
    return out.dump();
  });

  m.def("_authenticate", [](const std::string& cfg, const std::string& tmpl,
                            const std::string& probe,
                            const std::optional<std::string>& key) {
    std::optional<json> k;
    if (key) k = json::parse(*key);
    const auto d = experiment::authenticate(config_from(cfg), json::parse(tmpl),
                                            BitVector::FromString(probe), k);
    return std::make_tuple(d.accepted, d.detail.dump());
  });

  m.def("_metrics", [](const std::string& cfg) {
    const auto out = experiment::run_metrics(config_from(cfg));
    return std::make_tuple(experiment::to_json(out).dump(),
                           metrics::to_csv(out.report));
  });
  m.def("_attack", [](const std::string& cfg) {
    return experiment::run_attacks(config_from(cfg)).dump();
  });
  m.def("_linkage", [](const std::string& cfg) {
    return experiment::linkage_report(config_from(cfg)).dump();
  });

  m.def("paper_check", []() {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : experiment::paper_check(experiment::default_worked_example())) {
      out.emplace_back(r.name, r.passed, r.detail);
    }
    return out;
  });

  m.def("sketch_leakage", [](const std::vector<std::string>& h, const std::string& view,
                             bool two_factor) {
    auto code = std::make_shared<const gf2::LinearCode>(code_from(h));
    metrics::SketchScheme scheme(sketch::SketchSystem(code, 0.0, two_factor));
    return metrics::privacy_leakage(metrics::enumerator_of(scheme), scheme.n(),
                                    metrics::AttackView::Parse(view));
  }, py::arg("h"), py::arg("view") = "S", py::arg("two_factor") = false);

  m.def("bit_negation", [](std::size_t n) {
    const metrics::AttackView s{true, false, false};
    return std::make_tuple(
        metrics::privacy_leakage(metrics::bit_negation_enumerator(), n, s),
        metrics::reconstruction_distortion(metrics::bit_negation_enumerator(), n, s));
  }, py::arg("n") = 4);

  m.def("_paillier_keygen", [](unsigned prime_bits, std::uint64_t seed) {
    return io::keypair_to_json(paillier::keygen(prime_bits, seed)).dump();
  });

  m.def("_encrypted_distance", [](const std::string& key, const std::string& a,
                                  const std::string& d, std::uint64_t seed) {
    const auto kp = io::keypair_from_json(json::parse(key));
    paillier::RandomSource rng(seed);
    const auto t = smc::encrypt_template(kp.pub, BitVector::FromString(a), rng);
    const auto c = smc::encrypted_distance(kp.pub, t, BitVector::FromString(d), rng);
    return paillier::decrypt(kp, c).get_str();
  });
}
