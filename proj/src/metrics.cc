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

#include "securebio/metrics.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace securebio::metrics {

namespace {

double pow2(std::size_t e) { return std::ldexp(1.0, static_cast<int>(e)); }

void check_cap(std::size_t bits, const EvalOptions& opt, std::string_view what) {
  gf2::check_enumeration(bits, opt.cap, what);
}

void require_invariant(const AuthScheme& scheme, std::string_view what) {
  if (!scheme.translation_invariant()) {
    throw Unsupported(scheme.name() + ": exact " + std::string(what) +
                      " needs a translation-invariant scheme; use Monte Carlo");
  }
}

// The enrollment every exact computation is carried out on.
Enrolled reference_enrollment(const AuthScheme& scheme, const EvalOptions& opt) {
  Rng rng = Rng::Stream(opt.seed, "metrics.reference_enrollment");
  return scheme.enroll(BitVector(scheme.n()), rng);
}

// Calls fn(v) for every v in {0,1}^len, mutating one bit at a time.
template <typename Fn>
void for_each_vector(std::size_t len, Fn&& fn) {
  BitVector v(len);
  fn(v);
  const std::uint64_t count = std::uint64_t{1} << len;
  for (std::uint64_t i = 1; i < count; ++i) {
    v.flip(static_cast<std::size_t>(std::countr_zero(i)));
    fn(v);
  }
}

// Splits opt.trials over opt.chunks derived streams and calls
// chunk_fn(chunk, rng, count) for each, on up to opt.threads threads.
template <typename Fn>
void run_chunks(const EvalOptions& opt, std::string_view label,
                Fn&& chunk_fn) {
  if (opt.trials == 0) throw InvalidArgument("Monte Carlo needs trials > 0");
  const std::size_t chunks = std::max<std::size_t>(1, opt.chunks);
  std::size_t threads =
      opt.threads ? opt.threads
                  : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, chunks);

  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run_chunk = [&](std::size_t c) {
    try {
      const std::size_t count =
          opt.trials / chunks + (c < opt.trials % chunks ? 1 : 0);
      Rng rng = Rng::Stream(opt.seed, label, c);
      chunk_fn(c, rng, count);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

// Histogram of fn(rng) -> distance over opt.trials trials.
template <typename Fn>
DistanceHistogram monte_carlo(std::size_t length, const EvalOptions& opt,
                              std::string_view label, Fn&& fn) {
  std::vector<DistanceHistogram> parts(std::max<std::size_t>(1, opt.chunks),
                                       DistanceHistogram(length));
  run_chunks(opt, label, [&](std::size_t c, Rng& rng, std::size_t count) {
    for (std::size_t t = 0; t < count; ++t) parts[c].add(fn(rng));
  });
  DistanceHistogram out(length);
  out.method = Method::kMonteCarlo;
  for (const auto& part : parts) out.merge(part);
  out.trials = opt.trials;
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string to_string(Method m) {
  return m == Method::kExact ? "exact" : "monte_carlo";
}

std::vector<Estimate> monte_carlo_means(
    const EvalOptions& opt, std::string_view label, std::size_t outputs,
    const std::function<void(Rng&, std::vector<double>&)>& fn) {
  const std::size_t chunks = std::max<std::size_t>(1, opt.chunks);
  std::vector<std::vector<double>> sums(chunks, std::vector<double>(outputs));
  std::vector<std::vector<double>> squares(chunks, std::vector<double>(outputs));
  run_chunks(opt, label, [&](std::size_t c, Rng& rng, std::size_t count) {
    std::vector<double> values(outputs);
    for (std::size_t t = 0; t < count; ++t) {
      std::fill(values.begin(), values.end(), 0.0);
      fn(rng, values);
      for (std::size_t i = 0; i < outputs; ++i) {
        sums[c][i] += values[i];
        squares[c][i] += values[i] * values[i];
      }
    }
  });
  std::vector<Estimate> out(outputs);
  const double trials = static_cast<double>(opt.trials);
  for (std::size_t i = 0; i < outputs; ++i) {
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
      sum += sums[c][i];
      sq += squares[c][i];
    }
    const double mean = sum / trials;
    const double var = std::max(0.0, sq / trials - mean * mean);
    out[i] = Estimate{mean, std::sqrt(var / trials), Method::kMonteCarlo,
                      opt.trials};
  }
  return out;
}

// ------------------------------------------------------------------ histogram

void DistanceHistogram::add(const std::optional<std::size_t>& d, double w) {
  mass[d ? std::min(*d, length) : length + 1] += w;
}

void DistanceHistogram::merge(const DistanceHistogram& other) {
  if (other.length != length) throw LengthMismatch("histogram lengths differ");
  for (std::size_t i = 0; i < mass.size(); ++i) mass[i] += other.mass[i];
}

Estimate DistanceHistogram::accept_probability(double tau) const {
  double accepted = 0.0;
  double total = 0.0;
  for (std::size_t d = 0; d < mass.size(); ++d) {
    total += mass[d];
    if (d <= length && cancelable::within_threshold(d, length, tau)) {
      accepted += mass[d];
    }
  }
  Estimate e;
  e.method = method;
  e.trials = trials;
  if (method == Method::kExact) {
    e.value = accepted;
  } else {
    e.value = total > 0 ? accepted / total : 0.0;
    e.std_error = total > 0 ? std::sqrt(e.value * (1.0 - e.value) / total) : 0.0;
  }
  return e;
}

// ------------------------------------------------------------------ accuracy

DistanceHistogram impostor_histogram(const AuthScheme& scheme,
                                     const EvalOptions& opt) {
  const std::size_t len = scheme.matching_length();
  if (opt.exact) {
    require_invariant(scheme, "FAR");
    if (!scheme.uniform_presentation()) {
      throw Unsupported(scheme.name() + ": exact FAR needs uniform presentations");
    }
    check_cap(len, opt, "exact FAR");
    const Enrolled e = reference_enrollment(scheme, opt);
    DistanceHistogram h(len);
    const double w = 1.0 / pow2(len);
    for_each_vector(len, [&](const BitVector& u) {
      h.add(scheme.match_distance(e.stored, u), w);
    });
    return h;
  }
  const std::size_t n = scheme.n();
  return monte_carlo(len, opt, "metrics.far", [&](Rng& rng) {
    const Enrolled e = scheme.enroll(rng.bits(n), rng);
    const BitVector probe = rng.bits(n);
    return scheme.match_distance(e.stored,
                                 scheme.present(probe, scheme.random_key(rng)));
  });
}

DistanceHistogram genuine_histogram(const AuthScheme& scheme, double p,
                                    const EvalOptions& opt) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
  const std::size_t n = scheme.n();
  const std::size_t len = scheme.matching_length();
  if (opt.exact) {
    require_invariant(scheme, "FRR");
    check_cap(n, opt, "exact FRR");
    const Enrolled e = reference_enrollment(scheme, opt);
    // Noise patterns of equal weight share a probability.
    std::vector<double> by_weight(n + 1);
    for (std::size_t w = 0; w <= n; ++w) {
      by_weight[w] = std::pow(p, static_cast<double>(w)) *
                     std::pow(1.0 - p, static_cast<double>(n - w));
    }
    DistanceHistogram h(len);
    for_each_vector(n, [&](const BitVector& noise) {
      h.add(scheme.match_distance(e.stored, scheme.present(noise, e.key)),
            by_weight[noise.weight()]);
    });
    return h;
  }
  return monte_carlo(len, opt, "metrics.frr", [&](Rng& rng) {
    const BitVector a = rng.bits(n);
    const Enrolled e = scheme.enroll(a, rng);
    const BitVector probe = a ^ rng.bernoulli_bits(n, p);
    return scheme.match_distance(e.stored, scheme.present(probe, e.key));
  });
}

Estimate far(const AuthScheme& scheme, double tau, const EvalOptions& opt) {
  return impostor_histogram(scheme, opt).accept_probability(tau);
}

Estimate frr(const AuthScheme& scheme, double tau, double p,
             const EvalOptions& opt) {
  Estimate e = genuine_histogram(scheme, p, opt).accept_probability(tau);
  e.value = 1.0 - e.value;
  return e;
}

std::vector<RocPoint> roc(const AuthScheme& scheme, double p,
                          const std::vector<double>& taus,
                          const EvalOptions& opt) {
  const DistanceHistogram impostor = impostor_histogram(scheme, opt);
  const DistanceHistogram genuine = genuine_histogram(scheme, p, opt);
  std::vector<RocPoint> out;
  for (double tau : taus) {
    RocPoint pt;
    pt.tau = tau;
    pt.far = impostor.accept_probability(tau);
    pt.frr = genuine.accept_probability(tau);
    pt.frr.value = 1.0 - pt.frr.value;
    out.push_back(pt);
  }
  return out;
}

std::vector<double> threshold_grid(const AuthScheme& scheme, double tau_max) {
  const std::size_t len = scheme.matching_length();
  std::vector<double> out;
  for (std::size_t d = 0; d <= len; ++d) {
    const double tau = static_cast<double>(d) / static_cast<double>(len);
    if (tau >= tau_max) break;
    out.push_back(tau);
  }
  return out;
}

Eer equal_error_rate(const std::vector<RocPoint>& curve) {
  if (curve.empty()) throw InvalidArgument("empty ROC curve");
  auto diff = [&](std::size_t i) {
    return curve[i].far.value - curve[i].frr.value;
  };
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (diff(i) == 0.0) return Eer{curve[i].far.value, curve[i].tau, true};
    if (i + 1 < curve.size() && (diff(i) < 0) != (diff(i + 1) < 0) &&
        diff(i + 1) != 0.0) {
      const double t = diff(i) / (diff(i) - diff(i + 1));
      const auto& a = curve[i];
      const auto& b = curve[i + 1];
      return Eer{a.far.value + t * (b.far.value - a.far.value),
                 a.tau + t * (b.tau - a.tau), true};
    }
  }
  // No crossing: FAR > FRR everywhere puts it below the grid, else above.
  const RocPoint& end = diff(0) > 0 ? curve.front() : curve.back();
  return Eer{(end.far.value + end.frr.value) / 2.0, end.tau, false};
}

// ------------------------------------------------------------------ privacy

std::string AttackView::label() const {
  std::string out;
  auto append = [&](const char* part) {
    if (!out.empty()) out += '+';
    out += part;
  };
  if (stored) append("S");
  if (biometric) append("A");
  if (key) append("K");
  return out.empty() ? "none" : out;
}

AttackView AttackView::Parse(const std::string& label) {
  AttackView v;
  if (label == "none" || label.empty()) return v;
  std::stringstream ss(label);
  std::string part;
  while (std::getline(ss, part, '+')) {
    if (part == "S") {
      v.stored = true;
    } else if (part == "K") {
      v.key = true;
    } else if (part == "A") {
      v.biometric = true;
    } else {
      throw InvalidArgument("unknown view component '" + part +
                            "' (expected S, A, K joined by '+')");
    }
  }
  return v;
}

EnrollmentEnumerator enumerator_of(const AuthScheme& scheme) {
  return [&scheme](const BitVector& a) { return scheme.enumerate_enrollment(a); };
}

EnrollmentEnumerator bit_negation_enumerator() {
  return [](const BitVector& a) {
    return std::vector<EnrollmentOutcome>{{0.5, a, BitVector()},
                                          {0.5, ~a, BitVector()}};
  };
}

void JointDistribution::add(const std::string& x, const std::string& y,
                            double p) {
  if (p > 0) joint_[{x, y}] += p;
}

namespace {

template <typename Map>
double entropy_of(const Map& m) {
  double h = 0.0;
  for (const auto& [k, p] : m) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double JointDistribution::entropy_x() const {
  std::map<std::string, double> px;
  for (const auto& [xy, p] : joint_) px[xy.first] += p;
  return entropy_of(px);
}

double JointDistribution::entropy_y() const {
  std::map<std::string, double> py;
  for (const auto& [xy, p] : joint_) py[xy.second] += p;
  return entropy_of(py);
}

double JointDistribution::joint_entropy() const { return entropy_of(joint_); }

double JointDistribution::mutual_information() const {
  // Clamp rounding noise around zero.
  return std::max(0.0, entropy_x() + entropy_y() - joint_entropy());
}

double JointDistribution::total() const {
  double t = 0.0;
  for (const auto& [xy, p] : joint_) t += p;
  return t;
}

namespace {

constexpr std::size_t kMaxOutcomes = std::size_t{1} << 22;

std::string observation(const EnrollmentOutcome& o, const AttackView& view) {
  std::string v;
  if (view.stored) v += o.stored.to_string();
  v += '|';
  if (view.key) v += o.key.to_string();
  return v;
}

// Calls fn(a, outcome, P(a)) over uniform A.
template <typename Fn>
void for_each_outcome(const EnrollmentEnumerator& enumerate, std::size_t n,
                      std::size_t cap, Fn&& fn) {
  gf2::check_enumeration(n, cap, "biometric enumeration");
  const double pa = 1.0 / pow2(n);
  std::size_t seen = 0;
  for_each_vector(n, [&](const BitVector& a) {
    const auto outcomes = enumerate(a);
    seen += outcomes.size();
    if (seen > kMaxOutcomes) {
      throw CapExceeded("enrollment outcome enumeration exceeds 2^22");
    }
    for (const auto& o : outcomes) fn(a, o, pa);
  });
}

}  // namespace

double privacy_leakage(const EnrollmentEnumerator& enumerate, std::size_t n,
                       const AttackView& view, std::size_t cap) {
  if (view.biometric) return static_cast<double>(n);
  JointDistribution joint;
  for_each_outcome(enumerate, n, cap,
                   [&](const BitVector& a, const EnrollmentOutcome& o, double pa) {
                     joint.add(a.to_string(), observation(o, view),
                               pa * o.probability);
                   });
  return joint.mutual_information();
}

double reconstruction_distortion(const EnrollmentEnumerator& enumerate,
                                 std::size_t n, const AttackView& view,
                                 std::size_t cap) {
  if (view.biometric) return 0.0;
  // Per observation: P(v) and P(a_i = 1, v).
  std::map<std::string, std::pair<double, std::vector<double>>> acc;
  for_each_outcome(enumerate, n, cap,
                   [&](const BitVector& a, const EnrollmentOutcome& o, double pa) {
                     auto& [pv, ones] = acc[observation(o, view)];
                     if (ones.empty()) ones.assign(n, 0.0);
                     const double w = pa * o.probability;
                     pv += w;
                     for (std::size_t i = 0; i < n; ++i) {
                       if (a.get(i)) ones[i] += w;
                     }
                   });
  double errors = 0.0;
  for (const auto& [v, entry] : acc) {
    const auto& [pv, ones] = entry;
    for (double p1 : ones) errors += std::min(p1, pv - p1);
  }
  return errors / static_cast<double>(n);
}

// ------------------------------------------------------------------ security

std::string to_string(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::kBlindGuess: return "blind_guess";
    case AttackStrategy::kReplayBiometric: return "replay_biometric";
    case AttackStrategy::kStoredDataForgery: return "stored_data_forgery";
    case AttackStrategy::kFullCompromise: return "full_compromise";
  }
  return "unknown";
}

AttackView requirements(AttackStrategy s) {
  switch (s) {
    case AttackStrategy::kBlindGuess: return {};
    case AttackStrategy::kReplayBiometric: return {false, false, true};
    case AttackStrategy::kStoredDataForgery: return {true, false, false};
    case AttackStrategy::kFullCompromise: return {false, true, true};
  }
  return {};
}

bool available(AttackStrategy s, const AttackView& view) {
  const AttackView r = requirements(s);
  return (!r.stored || view.stored) && (!r.key || view.key) &&
         (!r.biometric || view.biometric);
}

std::vector<AttackStrategy> strategies_for(const AttackView& view) {
  std::vector<AttackStrategy> out;
  for (auto s : {AttackStrategy::kBlindGuess, AttackStrategy::kReplayBiometric,
                 AttackStrategy::kStoredDataForgery,
                 AttackStrategy::kFullCompromise}) {
    if (available(s, view)) out.push_back(s);
  }
  return out;
}

namespace {

// Turns a matching-domain target into an actual presentation the adversary
// can make, or nullopt when it cannot be realized.
std::optional<BitVector> realize(const AuthScheme& scheme, const BitVector& u,
                                 const Enrolled& e, const AttackView& view,
                                 Rng& rng, const EvalOptions& opt) {
  if (!scheme.keyed()) return scheme.present(u, std::nullopt);
  const BitVector probe = rng.bits(scheme.n());
  if (auto forged = scheme.forge_key(probe, u, rng)) {
    return scheme.present(probe, forged);
  }
  if (!view.key) return std::nullopt;
  // Preimage search under the real key.
  check_cap(scheme.n(), opt, "preimage search");
  std::optional<BitVector> found;
  const std::uint64_t count = std::uint64_t{1} << scheme.n();
  for (std::uint64_t v = 0; v < count && !found; ++v) {
    const BitVector d = BitVector::FromInteger(v, scheme.n());
    if (scheme.present(d, e.key) == u) found = d;
  }
  if (!found) return std::nullopt;
  return scheme.present(*found, e.key);
}

}  // namespace

DistanceHistogram strategy_histogram(const AuthScheme& scheme,
                                     AttackStrategy strategy,
                                     const AttackView& view,
                                     const EvalOptions& opt) {
  if (!available(strategy, view)) {
    throw InvalidArgument(to_string(strategy) + " is not available under view " +
                          view.label());
  }
  const std::size_t n = scheme.n();
  const std::size_t len = scheme.matching_length();
  // Replay with the genuine key is full compromise.
  if (strategy == AttackStrategy::kReplayBiometric && view.key) {
    strategy = AttackStrategy::kFullCompromise;
  }
  if (strategy == AttackStrategy::kBlindGuess) {
    return impostor_histogram(scheme, opt);
  }

  if (!opt.exact) {
    return monte_carlo(len, opt, "metrics.attack." + to_string(strategy),
                       [&](Rng& rng) -> std::optional<std::size_t> {
      const BitVector a = rng.bits(n);
      const Enrolled e = scheme.enroll(a, rng);
      switch (strategy) {
        case AttackStrategy::kReplayBiometric:
          return scheme.match_distance(
              e.stored, scheme.present(a, scheme.random_key(rng)));
        case AttackStrategy::kFullCompromise:
          return scheme.match_distance(e.stored, scheme.present(a, e.key));
        default: {
          const BitVector target = scheme.zero_distance_point(e.stored, rng);
          const auto presented = realize(scheme, target, e, view, rng, opt);
          if (!presented) {
            throw Unsupported(scheme.name() + ": " + to_string(strategy) +
                              " cannot realize a presentation without K");
          }
          return scheme.match_distance(e.stored, *presented);
        }
      }
    });
  }

  require_invariant(scheme, "attack success");
  const Enrolled e = reference_enrollment(scheme, opt);
  const BitVector a(n);
  DistanceHistogram h(len);
  Rng rng = Rng::Stream(opt.seed, "metrics.attack.exact");
  switch (strategy) {
    case AttackStrategy::kFullCompromise:
      h.add(scheme.match_distance(e.stored, scheme.present(a, e.key)));
      return h;
    case AttackStrategy::kReplayBiometric: {
      if (!scheme.keyed()) {
        h.add(scheme.match_distance(e.stored, scheme.present(a, std::nullopt)));
        return h;
      }
      const auto sample = scheme.random_key(rng);
      if (!sample || sample->kind != cancelable::TransformKind::kPermuteSalt) {
        throw Unsupported(scheme.name() + ": exact replay needs salted keys");
      }
      // Guessed key: a random permutation with every salt.
      check_cap(n, opt, "exact replay");
      const double w = 1.0 / pow2(n);
      for_each_vector(n, [&](const BitVector& salt) {
        const auto key = cancelable::make_permute_salt_key(sample->permutation, salt);
        h.add(scheme.match_distance(e.stored, scheme.present(a, key)), w);
      });
      return h;
    }
    default: {
      // Uniform over the realizable zero-distance targets.
      check_cap(len, opt, "exact forgery");
      std::vector<BitVector> presented;
      for_each_vector(len, [&](const BitVector& u) {
        if (scheme.match_distance(e.stored, u) != std::optional<std::size_t>(0)) {
          return;
        }
        if (auto p = realize(scheme, u, e, view, rng, opt)) {
          presented.push_back(std::move(*p));
        }
      });
      if (presented.empty()) {
        throw Unsupported(scheme.name() + ": " + to_string(strategy) +
                          " cannot realize a presentation");
      }
      const double w = 1.0 / static_cast<double>(presented.size());
      for (const auto& p : presented) h.add(scheme.match_distance(e.stored, p), w);
      return h;
    }
  }
}

Estimate attack_success(const AuthScheme& scheme, AttackStrategy strategy,
                        const AttackView& view, double tau,
                        const EvalOptions& opt) {
  return strategy_histogram(scheme, strategy, view, opt).accept_probability(tau);
}

SarResult success_rate(const AuthScheme& scheme, const AttackView& view,
                       double tau, const EvalOptions& opt) {
  SarResult best;
  bool any = false;
  for (auto s : strategies_for(view)) {
    Estimate e;
    try {
      e = attack_success(scheme, s, view, tau, opt);
    } catch (const Unsupported&) {
      continue;
    }
    if (!any || e.value > best.sar.value) {
      best = SarResult{e, s};
      any = true;
    }
  }
  if (!any) throw Unsupported("no attack strategy applies under " + view.label());
  return best;
}

// ------------------------------------------------------------------ reports

Report evaluate(const AuthScheme& scheme, const ReportOptions& opt) {
  Report r;
  r.scheme = scheme.name();
  r.n = scheme.n();
  r.p = opt.p;
  r.method = opt.eval.exact ? Method::kExact : Method::kMonteCarlo;
  r.trials = opt.eval.exact ? 0 : opt.eval.trials;
  r.seed = opt.eval.seed;
  r.views = opt.views;

  const std::vector<double> taus =
      opt.taus.empty() ? threshold_grid(scheme) : opt.taus;
  const DistanceHistogram impostor = impostor_histogram(scheme, opt.eval);
  const DistanceHistogram genuine = genuine_histogram(scheme, opt.p, opt.eval);

  // Per view, the histograms of every applicable strategy.
  std::vector<std::vector<DistanceHistogram>> attacks(opt.views.size());
  for (std::size_t v = 0; v < opt.views.size(); ++v) {
    for (auto s : strategies_for(opt.views[v])) {
      if (s == AttackStrategy::kBlindGuess) {
        attacks[v].push_back(impostor);
        continue;
      }
      try {
        attacks[v].push_back(strategy_histogram(scheme, s, opt.views[v], opt.eval));
      } catch (const Unsupported&) {
      }
    }
  }

  std::vector<RocPoint> curve;
  for (double tau : taus) {
    ReportRow row;
    row.tau = tau;
    row.far = impostor.accept_probability(tau);
    row.frr = genuine.accept_probability(tau);
    row.frr.value = 1.0 - row.frr.value;
    for (const auto& hs : attacks) {
      Estimate best;
      for (const auto& h : hs) {
        const Estimate e = h.accept_probability(tau);
        if (e.value >= best.value) best = e;
      }
      row.sar.push_back(best);
    }
    curve.push_back(RocPoint{tau, row.far, row.frr});
    r.rows.push_back(std::move(row));
  }
  r.eer = equal_error_rate(curve);

  for (const auto& view : opt.views) {
    try {
      r.leakage.push_back(privacy_leakage(enumerator_of(scheme), scheme.n(), view));
    } catch (const Unsupported&) {
      r.leakage.push_back(std::nullopt);
    } catch (const CapExceeded&) {
      r.leakage.push_back(std::nullopt);
    }
  }
  r.storage_bits = scheme.storage_bits(reference_enrollment(scheme, opt.eval));
  return r;
}

nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  json j;
  j["scheme"] = r.scheme;
  j["n"] = r.n;
  j["p"] = r.p;
  j["method"] = to_string(r.method);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["storage_bits"] = r.storage_bits;
  j["eer"] = {{"value", r.eer.value}, {"tau", r.eer.tau},
              {"bracketed", r.eer.bracketed}};
  json leakage = json::object();
  for (std::size_t v = 0; v < r.views.size(); ++v) {
    leakage[r.views[v].label()] =
        r.leakage[v] ? json(*r.leakage[v]) : json(nullptr);
  }
  j["leakage_bits"] = leakage;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"tau", row.tau},
               {"far", row.far.value},
               {"frr", row.frr.value},
               {"far_stderr", row.far.std_error},
               {"frr_stderr", row.frr.std_error}};
    json sar = json::object();
    for (std::size_t v = 0; v < r.views.size(); ++v) {
      sar[r.views[v].label()] = row.sar[v].value;
    }
    jr["sar"] = sar;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  return j;
}

std::string to_csv(const Report& r) {
  std::ostringstream out;
  out << "tau,far,frr";
  for (const auto& v : r.views) out << ",sar_" << v.label();
  for (const auto& v : r.views) out << ",leakage_" << v.label();
  out << ",storage_bits,method,trials,stderr\n";
  for (const auto& row : r.rows) {
    double se = std::max(row.far.std_error, row.frr.std_error);
    out << format_double(row.tau) << ',' << format_double(row.far.value) << ','
        << format_double(row.frr.value);
    for (const auto& s : row.sar) {
      out << ',' << format_double(s.value);
      se = std::max(se, s.std_error);
    }
    for (const auto& l : r.leakage) {
      out << ',';
      if (l) out << format_double(*l);
    }
    out << ',' << r.storage_bits << ',' << to_string(r.method) << ','
        << r.trials << ',' << format_double(se) << '\n';
  }
  return out.str();
}

}  // namespace securebio::metrics
