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

#include <span>
#include <vector>

#include "qcrowd/units.hpp"

namespace qcrowd {

struct SpectroscopyPoint {
  double f_ghz = 0.0;
  double p1 = 0.0;  // |1> population at T_s = 0
  double ps = 0.0;  // population after the swap hold
  double p0 = 0.0;  // population without the pi-pulse
};

struct SpectroscopyTrace {
  std::vector<SpectroscopyPoint> points;  // sorted by frequency
  double swap_time_us = 0.0;
  double resolution_mhz = 1.0;
};

/// One fitted defect. g_d is quoted as g_d/2pi in kHz; gamma is the total
/// TLS decoherence rate in 1/us (angular); gamma_1q is the background qubit
/// relaxation rate the peak sits on.
struct TlsRecord {
  double f_d_ghz = 0.0;
  double g_d_khz = 0.0;
  double gamma_per_us = 1.0;
  double gamma_1q_per_us = 0.0;
  double fit_residual = 0.0;  // rms residual of the local fit, 1/us
  bool converged = true;
};

struct QualityFactors {
  double q_measured = 0.0;
  double q_purcell = 0.0;
  double q_tls = 0.0;
};

/// 3-point swap-spectroscopy lifetime: T1 = T_s / ln((P1-P0)/(Ps-P0)).
/// Requires the strict ordering P1 > Ps > P0; anything else means the
/// measurement noise exceeded the signal and raises NumericalError.
double three_point_t1_us(double p1, double ps, double p0, double ts_us);

/// Relaxation-rate Lorentzian of a single TLS at detuning delta (cyclic MHz):
/// Gamma1 = 2 g^2 Gamma / (Gamma^2 + delta^2) + Gamma_1Q, with g and delta
/// converted to angular rates internally.
double lorentzian_rate_per_us(double delta_mhz, const TlsRecord& tls);

struct RateTrace {
  std::vector<double> f_ghz;
  std::vector<double> gamma1_per_us;
};

/// Sum of the per-TLS Lorentzians plus the qubit baseline on a frequency grid.
RateTrace simulate_spectrum(std::span<const TlsRecord> tls_list, double gamma_1q_per_us,
                            std::span<const double> f_grid_ghz);

/// Converts a 3-point trace into a rate trace. Points whose populations
/// violate the 3-point ordering are skipped.
RateTrace rate_trace_from_spectroscopy(const SpectroscopyTrace& trace);

/// Detects local maxima above a prominence threshold (default: 3x the
/// MAD-based robust sigma of the trace) and fits each on a local window
/// (+-10 grid points, clipped at the nearest other peak) to the Lorentzian.
/// Non-convergent fits are returned flagged, never dropped. Results sorted
/// by f_d. Requires >= 10 points.
std::vector<TlsRecord> fit_tls_peaks(const RateTrace& trace, double min_prominence = 0.0);

struct CensusCurve {
  std::vector<double> f_ghz;     // step locations (record frequencies in span)
  std::vector<int> cumulative;   // count of records with f_d <= f and g_d > threshold
};

/// Monotone nondecreasing cumulative count of records above a coupling
/// threshold over [f_lo, f_hi].
CensusCurve tls_census(std::span<const TlsRecord> records, double g_threshold_khz,
                       double f_lo_ghz, double f_hi_ghz);

/// Expected number of junction TLSs for a density rho_d (1/(GHz um^2)),
/// junction area (um^2) and frequency span (GHz).
double expected_junction_tls(double rho_d, double area_um2, double span_ghz);

/// Purcell correction: T1P = Delta^2/(kappa g01^2) * (omega_r/omega_q),
/// Q_P = omega_q T1P, Q = omega_q T1, 1/Q = 1/Q_TLS + 1/Q_P.
/// Throws NumericalError when Q >= Q_P (measured better than the limit).
QualityFactors purcell_correction(double t1_us, double kappa_mhz, double g01_mhz,
                                  double delta_mhz, double omega_r_ghz, double omega_q_ghz);

}  // namespace qcrowd
