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

#include "qcrowd/tls_analysis.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qcrowd/errors.hpp"

namespace qcrowd {

namespace {

/// Lorentzian in trace coordinates. theta = (f_d GHz, s = g_angular 1/us,
/// gamma 1/us, base 1/us); detuning enters as angular rad/us.
double peak_eval(double f_ghz, double f_d, double g_ang, double gamma, double base) {
  double delta = kTwoPi * 1e3 * (f_ghz - f_d);  // GHz offset -> rad/us
  return 2.0 * g_ang * g_ang * gamma / (gamma * gamma + delta * delta) + base;
}

double robust_sigma(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  auto med = [](std::vector<double>& v) {
    std::size_t m = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + m, v.end());
    return v[m];
  };
  double m0 = med(xs);
  for (double& x : xs) x = std::abs(x - m0);
  return 1.4826 * med(xs);
}

struct PeakFit {
  double f_d, g_ang, gamma, base;
  double residual_rms;
  bool converged;
};

/// Levenberg-Marquardt on the 4-parameter Lorentzian. Small and dense; the
/// analytic Jacobian keeps it robust at ~1% noise.
PeakFit fit_window(std::span<const double> f, std::span<const double> y, double f0,
                   double g0_ang, double gamma0, double base0) {
  Eigen::Vector4d theta(f0, g0_ang, gamma0, base0);
  const int n = static_cast<int>(f.size());
  auto residuals = [&](const Eigen::Vector4d& th, Eigen::VectorXd& r) {
    for (int i = 0; i < n; ++i)
      r(i) = y[i] - peak_eval(f[i], th(0), th(1), th(2), th(3));
  };
  Eigen::VectorXd r(n), r_try(n);
  Eigen::MatrixXd jac(n, 4);
  residuals(theta, r);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  bool ok = false;
  for (int iter = 0; iter < 100; ++iter) {
    for (int i = 0; i < n; ++i) {
      double delta = kTwoPi * 1e3 * (f[i] - theta(0));
      double g = theta(1), gm = theta(2);
      double den = gm * gm + delta * delta;
      // d(model)/d(theta); residual = y - model, so rows get a minus sign.
      double d_fd = 2.0 * g * g * gm * (2.0 * delta * kTwoPi * 1e3) / (den * den);
      double d_g = 4.0 * g * gm / den;
      double d_gm = 2.0 * g * g * (den - 2.0 * gm * gm) / (den * den);
      jac(i, 0) = -d_fd;
      jac(i, 1) = -d_g;
      jac(i, 2) = -d_gm;
      jac(i, 3) = -1.0;
    }
    Eigen::Matrix4d jtj = jac.transpose() * jac;
    Eigen::Vector4d jtr = jac.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::Matrix4d damped = jtj;
      for (int k = 0; k < 4; ++k) damped(k, k) += lambda * std::max(jtj(k, k), 1e-12);
      Eigen::Vector4d step = damped.ldlt().solve(-jtr);
      Eigen::Vector4d trial = theta + step;
      trial(1) = std::abs(trial(1));
      trial(2) = std::max(std::abs(trial(2)), 1e-6);
      residuals(trial, r_try);
      double trial_cost = r_try.squaredNorm();
      if (trial_cost < cost) {
        double rel = (cost - trial_cost) / std::max(cost, 1e-300);
        theta = trial;
        r = r_try;
        cost = trial_cost;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        if (rel < 1e-12) ok = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) {
      ok = true;  // no descent direction left; treat as converged at minimum
      break;
    }
    if (ok) break;
  }
  PeakFit fit;
  fit.f_d = theta(0);
  fit.g_ang = std::abs(theta(1));
  fit.gamma = std::abs(theta(2));
  fit.base = theta(3);
  fit.residual_rms = std::sqrt(cost / n);
  fit.converged = ok && std::isfinite(cost);
  return fit;
}

}  // namespace

double three_point_t1_us(double p1, double ps, double p0, double ts_us) {
  if (!(ts_us > 0.0)) throw InputError("three_point_t1: swap time must be positive");
  if (!(p1 > ps && ps > p0))
    throw NumericalError("three_point_t1: populations must satisfy P1 > Ps > P0 "
                         "(noise exceeded signal)");
  return ts_us / std::log((p1 - p0) / (ps - p0));
}

double lorentzian_rate_per_us(double delta_mhz, const TlsRecord& tls) {
  double g_ang = khz_to_rad_per_us(tls.g_d_khz);
  double delta_ang = mhz_to_rad_per_us(delta_mhz);
  double gm = tls.gamma_per_us;
  return 2.0 * g_ang * g_ang * gm / (gm * gm + delta_ang * delta_ang) + tls.gamma_1q_per_us;
}

RateTrace simulate_spectrum(std::span<const TlsRecord> tls_list, double gamma_1q_per_us,
                            std::span<const double> f_grid_ghz) {
  if (f_grid_ghz.empty()) throw InputError("simulate_spectrum: empty frequency grid");
  RateTrace trace;
  trace.f_ghz.assign(f_grid_ghz.begin(), f_grid_ghz.end());
  trace.gamma1_per_us.resize(trace.f_ghz.size(), gamma_1q_per_us);
  for (std::size_t i = 0; i < trace.f_ghz.size(); ++i) {
    for (const auto& tls : tls_list) {
      TlsRecord peak_only = tls;
      peak_only.gamma_1q_per_us = 0.0;
      double delta_mhz = (trace.f_ghz[i] - tls.f_d_ghz) * 1e3;
      trace.gamma1_per_us[i] += lorentzian_rate_per_us(delta_mhz, peak_only);
    }
  }
  return trace;
}

RateTrace rate_trace_from_spectroscopy(const SpectroscopyTrace& trace) {
  RateTrace out;
  for (const auto& p : trace.points) {
    if (!(p.p1 > p.ps && p.ps > p.p0)) continue;
    double t1 = three_point_t1_us(p.p1, p.ps, p.p0, trace.swap_time_us);
    out.f_ghz.push_back(p.f_ghz);
    out.gamma1_per_us.push_back(1.0 / t1);
  }
  return out;
}

std::vector<TlsRecord> fit_tls_peaks(const RateTrace& trace, double min_prominence) {
  const auto& f = trace.f_ghz;
  const auto& y = trace.gamma1_per_us;
  if (f.size() != y.size() || f.size() < 10)
    throw InputError("fit_tls_peaks: trace needs >= 10 points");
  const int n = static_cast<int>(f.size());

  if (min_prominence <= 0.0) min_prominence = 3.0 * robust_sigma(y);

  std::vector<double> base_sorted(y.begin(), y.end());
  std::nth_element(base_sorted.begin(), base_sorted.begin() + n / 2, base_sorted.end());
  const double baseline = base_sorted[n / 2];

  // Local maxima with prominence above threshold. Prominence of i = height
  // above the higher of the two valley minima flanking it.
  std::vector<int> peak_idx;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(y[i] >= y[i - 1] && y[i] > y[i + 1])) continue;
    double left_min = y[i], right_min = y[i];
    for (int j = i - 1; j >= 0 && y[j] <= y[i]; --j) left_min = std::min(left_min, y[j]);
    for (int j = i + 1; j < n && y[j] <= y[i]; ++j) right_min = std::min(right_min, y[j]);
    double prominence = y[i] - std::max(left_min, right_min);
    if (prominence >= min_prominence && y[i] - baseline >= min_prominence)
      peak_idx.push_back(i);
  }

  std::vector<TlsRecord> records;
  for (std::size_t pi = 0; pi < peak_idx.size(); ++pi) {
    int i = peak_idx[pi];
    int lo = std::max(0, i - 10);
    int hi = std::min(n - 1, i + 10);
    if (pi > 0) lo = std::max(lo, (peak_idx[pi - 1] + i) / 2 + 1);
    if (pi + 1 < peak_idx.size()) hi = std::min(hi, (peak_idx[pi + 1] + i) / 2 - 1);
    if (hi - lo + 1 < 5) {
      lo = std::max(0, i - 2);
      hi = std::min(n - 1, i + 2);
    }

    // Initial guesses: half-width from the half-maximum crossing, coupling
    // from the on-resonance height 2 g^2 / Gamma.
    double height = y[i] - baseline;
    double half = baseline + height / 2.0;
    double hw_ghz = 0.0;
    for (int j = i; j <= hi; ++j)
      if (y[j] <= half) {
        hw_ghz = f[j] - f[i];
        break;
      }
    if (hw_ghz <= 0.0)
      for (int j = i; j >= lo; --j)
        if (y[j] <= half) {
          hw_ghz = f[i] - f[j];
          break;
        }
    if (hw_ghz <= 0.0) hw_ghz = std::max((f[hi] - f[lo]) / 4.0, 1e-4);
    double gamma0 = kTwoPi * 1e3 * hw_ghz;  // half-width in angular rad/us
    double g0 = std::sqrt(std::max(height, 1e-12) * gamma0 / 2.0);

    auto fit = fit_window(std::span(f).subspan(lo, hi - lo + 1),
                          std::span(y).subspan(lo, hi - lo + 1), f[i], g0, gamma0,
                          baseline);
    TlsRecord rec;
    rec.f_d_ghz = fit.f_d;
    rec.g_d_khz = fit.g_ang / kTwoPi * 1e3;  // rad/us -> kHz of g/2pi
    rec.gamma_per_us = fit.gamma;
    rec.gamma_1q_per_us = fit.base;
    rec.fit_residual = fit.residual_rms;
    rec.converged = fit.converged;
    records.push_back(rec);
  }
  std::sort(records.begin(), records.end(),
            [](const TlsRecord& a, const TlsRecord& b) { return a.f_d_ghz < b.f_d_ghz; });
  return records;
}

CensusCurve tls_census(std::span<const TlsRecord> records, double g_threshold_khz,
                       double f_lo_ghz, double f_hi_ghz) {
  std::vector<double> fs;
  for (const auto& r : records)
    if (r.g_d_khz > g_threshold_khz && r.f_d_ghz >= f_lo_ghz && r.f_d_ghz <= f_hi_ghz)
      fs.push_back(r.f_d_ghz);
  std::sort(fs.begin(), fs.end());
  CensusCurve curve;
  curve.f_ghz.push_back(f_lo_ghz);
  curve.cumulative.push_back(0);
  int count = 0;
  for (double fd : fs) {
    curve.f_ghz.push_back(fd);
    curve.cumulative.push_back(++count);
  }
  curve.f_ghz.push_back(f_hi_ghz);
  curve.cumulative.push_back(count);
  return curve;
}

double expected_junction_tls(double rho_d, double area_um2, double span_ghz) {
  return rho_d * area_um2 * span_ghz;
}

QualityFactors purcell_correction(double t1_us, double kappa_mhz, double g01_mhz,
                                  double delta_mhz, double omega_r_ghz, double omega_q_ghz) {
  if (!(t1_us > 0) || !(kappa_mhz > 0) || !(g01_mhz > 0) || !(delta_mhz > 0) ||
      !(omega_r_ghz > 0) || !(omega_q_ghz > 0))
    throw InputError("purcell_correction: all inputs must be positive");
  // T1P = Delta^2/(kappa g^2) in angular units; with cyclic MHz inputs that is
  // Delta^2/(2 pi kappa g^2) us, times the omega_r/omega_q correction.
  double t1p_us = delta_mhz * delta_mhz / (kTwoPi * kappa_mhz * g01_mhz * g01_mhz) *
                  (omega_r_ghz / omega_q_ghz);
  double wq = ghz_to_rad_per_ns(omega_q_ghz) * 1e3;  // rad/us
  QualityFactors qf;
  qf.q_measured = wq * t1_us;
  qf.q_purcell = wq * t1p_us;
  if (qf.q_measured >= qf.q_purcell)
    throw NumericalError("purcell_correction: measured Q exceeds the Purcell limit; "
                         "inputs are inconsistent");
  qf.q_tls = 1.0 / (1.0 / qf.q_measured - 1.0 / qf.q_purcell);
  return qf;
}

}  // namespace qcrowd
