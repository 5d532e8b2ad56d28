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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qcrowd {

/// How the per-trial junction-TLS count is drawn. The density relation gives
/// only the mean rho_d N_Q A_J; defects are independent rare events, so
/// Poisson is the default. Fixed (rounded mean) exists for sensitivity checks.
enum class TlsCountMode { poisson, fixed };

struct TlsMcConfig {
  int n_qubits = 100;
  double rho_d_per_ghz_um2 = 1.5;  // TLS density
  double a_j_um2 = 0.109;          // junction area per qubit
  double bound_mhz = 40.0;         // a qubit dies within this window of a TLS
  double span_ghz = 1.0;           // frequency window holding qubits and TLSs
  std::vector<double> qubit_freqs_ghz;  // allocation values, cycled over qubits;
                                        // empty = the standard 8-value cell
  int trials = 10000;
  std::uint64_t seed = 1;
  TlsCountMode mode = TlsCountMode::poisson;
  int jobs = 1;
};

struct TlsMcResult {
  double mean = 0.0;
  double stdev = 0.0;
  double ci_low = 0.0;   // 95% normal-approximation CI of the mean
  double ci_high = 0.0;
  int trials = 0;
};

/// Per trial: draw the TLS count, drop each TLS into a uniformly random
/// qubit's junction, draw its frequency uniformly over the span; a qubit is
/// dead iff one of its own TLSs lands within the bound of its frequency.
/// Trials run in parallel with per-trial RNG streams; the reduction is
/// deterministic.
TlsMcResult simulate_dead_qubits(const TlsMcConfig& config);

enum class TlsSweepAxis { n_qubits, bound, rho_d };
TlsSweepAxis tls_axis_from_string(const std::string& s);
std::string to_string(TlsSweepAxis axis);

struct TlsSweepPoint {
  double axis_value = 0.0;
  TlsMcResult stats;
};

/// Repeated simulate_dead_qubits along one axis; per-point seeds derive from
/// (config seed, axis value index) so the sweep is deterministic.
std::vector<TlsSweepPoint> sweep_dead_qubits(const TlsMcConfig& config, TlsSweepAxis axis,
                                             std::span<const double> values);

/// Closed-form expectation with edge correction: qubits within the bound of
/// a span boundary have a clipped collision window, and multiple TLSs on one
/// qubit overlap per Poisson statistics.
double expected_dead_qubits(const TlsMcConfig& config);

/// The same expectation ignoring edges and overlap: N rho A (2b / span).
double expected_dead_qubits_linear(const TlsMcConfig& config);

}  // namespace qcrowd
