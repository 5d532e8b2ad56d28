// Copyright 2026 The qcrowd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcrowd/tls_collision_mc.hpp"

#include <algorithm>
#include <cmath>

#include "qcrowd/errors.hpp"
#include "qcrowd/parallel.hpp"
#include "qcrowd/rng.hpp"

namespace qcrowd {

namespace {

const std::vector<double>& default_allocation() {
  static const std::vector<double> cell = {4.3,   4.404, 4.508, 4.612,
                                           4.988, 5.092, 5.196, 5.3};
  return cell;
}

void validate(const TlsMcConfig& c) {
  if (c.trials < 1) throw InputError("tls mc: trials must be >= 1");
  if (!(c.span_ghz > 0.0)) throw InputError("tls mc: span must be positive");
  if (!(c.bound_mhz * 1e-3 < c.span_ghz))
    throw InputError("tls mc: bound must be smaller than the span");
  if (c.bound_mhz < 0.0) throw InputError("tls mc: bound must be >= 0");
  if (c.n_qubits < 1) throw InputError("tls mc: n_qubits must be >= 1");
  if (c.rho_d_per_ghz_um2 < 0.0) throw InputError("tls mc: density must be >= 0");
  if (!(c.a_j_um2 > 0.0)) throw InputError("tls mc: junction area must be positive");
}

struct Frame {
  std::vector<double> freqs;  // per-qubit frequency
  double f_min = 0.0;
  double lambda = 0.0;        // mean TLS count
  int fixed_count = 0;
};

Frame make_frame(const TlsMcConfig& c) {
  const auto& alloc = c.qubit_freqs_ghz.empty() ? default_allocation() : c.qubit_freqs_ghz;
  Frame fr;
  fr.freqs.resize(c.n_qubits);
  for (int q = 0; q < c.n_qubits; ++q) fr.freqs[q] = alloc[q % alloc.size()];
  fr.f_min = *std::min_element(alloc.begin(), alloc.end());
  fr.lambda = c.rho_d_per_ghz_um2 * c.n_qubits * c.a_j_um2;
  fr.fixed_count = static_cast<int>(std::lround(fr.lambda));
  return fr;
}

int run_trial(const TlsMcConfig& c, const Frame& fr, Rng& rng) {
  int n_tls = c.mode == TlsCountMode::poisson ? rng.poisson(fr.lambda) : fr.fixed_count;
  const double b_ghz = c.bound_mhz * 1e-3;
  std::vector<bool> dead(c.n_qubits, false);
  for (int t = 0; t < n_tls; ++t) {
    int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(c.n_qubits)));
    double f_tls = rng.uniform(fr.f_min, fr.f_min + c.span_ghz);
    if (std::abs(fr.freqs[q] - f_tls) < b_ghz) dead[q] = true;
  }
  return static_cast<int>(std::count(dead.begin(), dead.end(), true));
}

TlsMcResult reduce(const std::vector<int>& counts) {
  TlsMcResult r;
  r.trials = static_cast<int>(counts.size());
  double s = 0.0;
  for (int c : counts) s += c;
  r.mean = s / r.trials;
  double ss = 0.0;
  for (int c : counts) ss += (c - r.mean) * (c - r.mean);
  r.stdev = r.trials > 1 ? std::sqrt(ss / (r.trials - 1)) : 0.0;
  double half = 1.959963984540054 * r.stdev / std::sqrt(static_cast<double>(r.trials));
  r.ci_low = r.mean - half;
  r.ci_high = r.mean + half;
  return r;
}

}  // namespace

TlsSweepAxis tls_axis_from_string(const std::string& s) {
  if (s == "n_qubits") return TlsSweepAxis::n_qubits;
  if (s == "b" || s == "bound") return TlsSweepAxis::bound;
  if (s == "rho_d") return TlsSweepAxis::rho_d;
  throw InputError("unknown tls sweep axis '" + s + "'");
}

std::string to_string(TlsSweepAxis axis) {
  switch (axis) {
    case TlsSweepAxis::n_qubits: return "n_qubits";
    case TlsSweepAxis::bound: return "b";
    case TlsSweepAxis::rho_d: return "rho_d";
  }
  return "?";
}

TlsMcResult simulate_dead_qubits(const TlsMcConfig& config) {
  validate(config);
  Frame frame = make_frame(config);
  std::vector<int> counts(config.trials);
  parallel_for(config.trials, config.jobs, [&](std::size_t trial) {
    Rng rng(derive_stream(config.seed, "tls_mc_trial", trial));
    counts[trial] = run_trial(config, frame, rng);
  });
  return reduce(counts);
}

std::vector<TlsSweepPoint> sweep_dead_qubits(const TlsMcConfig& config, TlsSweepAxis axis,
                                             std::span<const double> values) {
  if (values.empty()) throw InputError("tls sweep: values must be nonempty");
  std::vector<TlsSweepPoint> points;
  for (std::size_t i = 0; i < values.size(); ++i) {
    TlsMcConfig c = config;
    switch (axis) {
      case TlsSweepAxis::n_qubits: c.n_qubits = static_cast<int>(values[i]); break;
      case TlsSweepAxis::bound: c.bound_mhz = values[i]; break;
      case TlsSweepAxis::rho_d: c.rho_d_per_ghz_um2 = values[i]; break;
    }
    c.seed = derive_stream(config.seed, "tls_mc_sweep", i);
    points.push_back({values[i], simulate_dead_qubits(c)});
  }
  return points;
}

double expected_dead_qubits(const TlsMcConfig& config) {
  validate(config);
  Frame fr = make_frame(config);
  const double b = config.bound_mhz * 1e-3;
  const double per_qubit_rate = fr.lambda / config.n_qubits;  // TLSs per junction
  double expected = 0.0;
  for (double f : fr.freqs) {
    double lo = std::max(f - b, fr.f_min);
    double hi = std::min(f + b, fr.f_min + config.span_ghz);
    double window = std::max(hi - lo, 0.0);
    double hit = per_qubit_rate * window / config.span_ghz;
    expected += config.mode == TlsCountMode::poisson ? 1.0 - std::exp(-hit) : hit;
  }
  return expected;
}

double expected_dead_qubits_linear(const TlsMcConfig& config) {
  validate(config);
  return config.rho_d_per_ghz_um2 * config.n_qubits * config.a_j_um2 *
         (2.0 * config.bound_mhz * 1e-3 / config.span_ghz);
}

}  // namespace qcrowd
