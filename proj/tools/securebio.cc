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

// Command-line front end. Exit codes: 0 accept/success, 1 reject/check
// failure, 2 bad configuration or usage, 3 I/O or network failure.

#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "securebio/config.h"
#include "securebio/experiment.h"
#include "securebio/io.h"
#include "securebio/smc_net.h"

namespace {

using namespace securebio;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kBadConfig = 2;
constexpr int kIoFailure = 3;

struct Common {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> tau;
  bool exact = false;
  bool monte_carlo = false;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "Experiment config (JSON)");
  cmd->add_option("--preset", c.preset, "Built-in config: sidebar-b, bsc16");
  cmd->add_option("--seed", c.seed, "Override the config seed");
  cmd->add_option("--trials", c.trials, "Monte Carlo trials");
  cmd->add_option("--tau", c.tau, "Override the decision threshold");
  auto* exact = cmd->add_flag("--exact", c.exact, "Exact enumeration");
  cmd->add_flag("--monte-carlo", c.monte_carlo, "Monte Carlo estimation")
      ->excludes(exact);
  cmd->add_option("--out", c.out, "Output path");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

config::ExperimentConfig load_config(const Common& c) {
  if (!c.config_path.empty() && !c.preset.empty()) {
    throw InvalidArgument("use either --config or --preset, not both");
  }
  config::ExperimentConfig cfg;
  if (!c.config_path.empty()) {
    cfg = config::from_json(io::read_json(c.config_path));
  } else if (!c.preset.empty()) {
    cfg = config::preset(c.preset);
  } else {
    throw InvalidArgument("a --config file or --preset is required");
  }
  if (c.seed) cfg.seed = *c.seed;
  if (c.trials) cfg.trials = *c.trials;
  if (c.tau) cfg.tau = *c.tau;
  if (c.exact) cfg.exact = true;
  if (c.monte_carlo) cfg.exact = false;
  cfg.validate();
  return cfg;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_enroll(const Common& c, const std::string& biometric,
               const std::string& key_out) {
  const auto cfg = load_config(c);
  const auto e = experiment::enroll(cfg, BitVector::FromString(biometric));
  if (!c.out.empty()) io::write_json(c.out, e.tmpl);
  if (e.key && !key_out.empty()) io::write_json(key_out, *e.key);
  json out = {{"template", e.tmpl}};
  if (e.key) out["key"] = *e.key;
  if (e.secret) out["secret"] = *e.secret;
  emit(out);
  return kOk;
}

int cmd_auth(const Common& c, const std::string& template_path,
             const std::string& probe, const std::string& key_path) {
  const auto cfg = load_config(c);
  std::optional<json> key;
  if (!key_path.empty()) key = io::read_json(key_path);
  const auto d = experiment::authenticate(cfg, io::read_json(template_path),
                                          BitVector::FromString(probe), key);
  emit(d.detail);
  return d.accepted ? kOk : kReject;
}

int cmd_metrics(const Common& c) {
  const auto cfg = load_config(c);
  const auto out = experiment::run_metrics(cfg);
  const std::string csv = metrics::to_csv(out.report);
  const json j = experiment::to_json(out);
  if (!c.out.empty()) {
    std::filesystem::create_directories(c.out);
    io::write_file((std::filesystem::path(c.out) / "roc.csv").string(), csv);
    io::write_json((std::filesystem::path(c.out) / "metrics.json").string(), j);
  }
  if (c.format == "csv") {
    std::cout << csv;
  } else {
    emit(j);
  }
  return kOk;
}

int cmd_attack(const Common& c, const std::vector<std::string>& views) {
  auto cfg = load_config(c);
  if (!views.empty()) {
    cfg.views.clear();
    for (const auto& v : views) cfg.views.push_back(metrics::AttackView::Parse(v));
  }
  const json j = experiment::run_attacks(cfg);
  if (!c.out.empty()) io::write_json(c.out, j);
  emit(j);
  return kOk;
}

int cmd_smc_serve(const std::string& host, std::uint16_t port,
                  const std::string& store_path, std::uint64_t seed) {
  // Wait for SIGINT/SIGTERM on this thread; workers never see them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto store = store_path.empty() ? std::make_shared<smc::TemplateStore>()
                                  : smc::TemplateStore::Open(store_path);
  smc::SmcServer server(store, seed,
                        [](const std::string& line) { std::cerr << line << "\n"; });
  const std::uint16_t bound = server.start(port, host);
  std::cout << "listening on " << host << ":" << bound << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  std::cerr << "stopped; protocol failures: " << server.protocol_failures()
            << "\n";
  return kOk;
}

struct SmcAuthArgs {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::string id;
  std::string probe;
  std::string keyfile;
  bool enroll = false;
  std::string biometric;
  std::size_t theta = 0;
  unsigned prime_bits = 512;
  std::optional<std::uint64_t> seed;
};

int cmd_smc_auth(const SmcAuthArgs& a) {
  if (a.enroll) {
    if (a.biometric.empty()) throw InvalidArgument("--enroll needs --biometric");
    const BitVector bio = BitVector::FromString(a.biometric);
    auto rng = a.seed ? paillier::RandomSource(*a.seed)
                      : paillier::RandomSource::Entropy();
    const auto key = paillier::keygen(a.prime_bits, rng);
    smc::StoredEntry entry{key.pub, smc::encrypt_template(key.pub, bio, rng),
                           a.theta};
    smc::enroll_remote(a.host, a.port, a.id, entry);
    io::write_json(a.keyfile, io::keypair_to_json(key));
    emit(json{{"enrolled", a.id}, {"n", bio.size()}, {"theta", a.theta},
              {"storage_bits", smc::storage_bits(entry.tmpl, key.pub)}});
    return kOk;
  }
  if (a.probe.empty()) throw InvalidArgument("--probe is required");
  const auto key = io::keypair_from_json(io::read_json(a.keyfile));
  const auto d = smc::authenticate_remote(a.host, a.port, a.id,
                                          BitVector::FromString(a.probe), key);
  emit(json{{"accepted", d.accepted}, {"reason", d.reason}});
  return d.accepted ? kOk : kReject;
}

int cmd_paper_check(const Common& c) {
  experiment::WorkedExample ex = experiment::default_worked_example();
  if (!c.config_path.empty() || !c.preset.empty()) {
    ex = experiment::worked_example_from(load_config(c));
  }
  const auto results = experiment::paper_check(ex);
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.passed) {
      std::cout << "PASS " << r.name << "\n";
    } else {
      ++failed;
      std::cout << "FAIL " << r.name << ": " << r.detail << "\n";
    }
  }
  std::cout << (results.size() - failed) << "/" << results.size()
            << " checks passed\n";
  return failed == 0 ? kOk : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure biometric template protection toolkit"};
  app.require_subcommand(1);

  Common enroll_opts, auth_opts, metrics_opts, attack_opts, check_opts;
  std::string biometric, key_out, template_path, probe, key_path;
  std::vector<std::string> views;

  auto* enroll = app.add_subcommand("enroll", "Enroll a biometric");
  add_common(enroll, enroll_opts);
  enroll->add_option("--biometric", biometric, "Feature vector, e.g. 1011")
      ->required();
  enroll->add_option("--key-out", key_out, "Where to write the user key");

  auto* auth = app.add_subcommand("auth", "Authenticate a probe");
  add_common(auth, auth_opts);
  auth->add_option("--template", template_path, "Template file")->required();
  auth->add_option("--probe", probe, "Probe vector")->required();
  auth->add_option("--key", key_path, "User key file");

  auto* metrics_cmd = app.add_subcommand("metrics", "FAR/FRR/ROC, leakage, SAR, storage");
  add_common(metrics_cmd, metrics_opts);

  auto* attack = app.add_subcommand("attack", "Attack success rates and linkage");
  add_common(attack, attack_opts);
  attack->add_option("--view", views, "Adversary view, e.g. S, A, S+K");

  std::string serve_host = "127.0.0.1";
  std::uint16_t serve_port = 0;
  std::string store_path;
  std::uint64_t serve_seed = 0;
  auto* serve = app.add_subcommand("smc-serve", "Run the encrypted-matching device");
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--port", serve_port, "Port (0 picks a free one)");
  serve->add_option("--store", store_path, "Template store file");
  serve->add_option("--seed", serve_seed, "Blinding RNG seed");

  SmcAuthArgs smc_args;
  auto* smc_auth = app.add_subcommand("smc-auth", "Encrypted-matching client");
  smc_auth->add_option("--host", smc_args.host, "Device address");
  smc_auth->add_option("--port", smc_args.port, "Device port")->required();
  smc_auth->add_option("--id", smc_args.id, "User id")->required();
  smc_auth->add_option("--keyfile", smc_args.keyfile, "Paillier keypair file")
      ->required();
  smc_auth->add_option("--probe", smc_args.probe, "Probe vector");
  smc_auth->add_flag("--enroll", smc_args.enroll,
                     "Generate a keypair and enroll --biometric");
  smc_auth->add_option("--biometric", smc_args.biometric, "Enrollment vector");
  smc_auth->add_option("--theta", smc_args.theta, "Accept iff distance <= theta");
  smc_auth->add_option("--prime-bits", smc_args.prime_bits, "Bits per prime");
  smc_auth->add_option("--seed", smc_args.seed, "Deterministic key generation");

  auto* check = app.add_subcommand("paper-check", "Reproduce the published examples");
  add_common(check, check_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadConfig;
  }

  try {
    if (*enroll) return cmd_enroll(enroll_opts, biometric, key_out);
    if (*auth) return cmd_auth(auth_opts, template_path, probe, key_path);
    if (*metrics_cmd) return cmd_metrics(metrics_opts);
    if (*attack) return cmd_attack(attack_opts, views);
    if (*serve) return cmd_smc_serve(serve_host, serve_port, store_path, serve_seed);
    if (*smc_auth) return cmd_smc_auth(smc_args);
    if (*check) return cmd_paper_check(check_opts);
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const smc::ConnectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kBadConfig;
  }
  return kBadConfig;
}
