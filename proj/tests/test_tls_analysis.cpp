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

#include <doctest.h>

#include <cmath>

#include "qcrowd/errors.hpp"
#include "qcrowd/rng.hpp"
#include "qcrowd/tls_analysis.hpp"

using namespace qcrowd;

TEST_CASE("three_point_t1: closed-form anchors") {
  // Ps at P0 + (P1-P0)/e makes the log argument e, so T1 = Ts.
  double p0 = 0.1, p1 = 0.9;
  double ps = p0 + (p1 - p0) / std::exp(1.0);
  CHECK(three_point_t1_us(p1, ps, p0, 7.5) == doctest::Approx(7.5).epsilon(1e-12));

  CHECK(three_point_t1_us(1.0, 0.5, 0.0, 10.0) ==
        doctest::Approx(10.0 / std::log(2.0)).epsilon(1e-12));

  // Ps -> P0+ sends T1 -> 0+.
  CHECK(three_point_t1_us(1.0, 1e-9, 0.0, 10.0) < 0.5);

  CHECK_THROWS_AS(three_point_t1_us(0.5, 0.6, 0.0, 10.0), NumericalError);
  CHECK_THROWS_AS(three_point_t1_us(0.9, 0.1, 0.2, 10.0), NumericalError);
  CHECK_THROWS_AS(three_point_t1_us(0.9, 0.5, 0.1, 0.0), InputError);
}

TEST_CASE("three_point_t1: exact round trip of exponential decay") {
  for (double t1 : {3.0, 14.43, 80.0}) {
    double ts = 0.6 * t1;
    double p0 = 0.07, p1 = 0.93;
    double ps = p0 + (p1 - p0) * std::exp(-ts / t1);
    CHECK(three_point_t1_us(p1, ps, p0, ts) == doctest::Approx(t1).epsilon(1e-12));
  }
}

TEST_CASE("lorentzian_rate: limits and half-width property") {
  TlsRecord tls;
  tls.f_d_ghz = 4.2;
  tls.g_d_khz = 200.0;
  tls.gamma_per_us = 10.0;
  tls.gamma_1q_per_us = 0.02;

  // Far detuned: only the qubit baseline survives.
  CHECK(lorentzian_rate_per_us(5e4, tls) == doctest::Approx(0.02).epsilon(1e-6));

  // On resonance: 2 g^2 / Gamma above baseline.
  double g_ang = khz_to_rad_per_us(tls.g_d_khz);
  double peak = 2.0 * g_ang * g_ang / tls.gamma_per_us;
  CHECK(lorentzian_rate_per_us(0.0, tls) == doctest::Approx(peak + 0.02).epsilon(1e-12));

  // Detuning delta = Gamma halves the peak contribution.
  double delta_mhz = tls.gamma_per_us / kTwoPi;  // angular Gamma as cyclic MHz
  double at_hw = lorentzian_rate_per_us(delta_mhz, tls);
  CHECK(at_hw - 0.02 == doctest::Approx(peak / 2).epsilon(1e-12));
}

TEST_CASE("simulate_spectrum: flat baseline, pointwise consistency, peak ordering") {
  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(4.0 + i * 5e-4);

  auto flat = simulate_spectrum({}, 0.05, grid);
  for (double v : flat.gamma1_per_us) CHECK(v == doctest::Approx(0.05));

  TlsRecord tls{4.25, 150.0, 12.0, 0.0, 0.0, true};
  auto one = simulate_spectrum(std::vector<TlsRecord>{tls}, 0.05, grid);
  for (std::size_t i = 0; i < grid.size(); i += 97) {
    TlsRecord probe = tls;
    probe.gamma_1q_per_us = 0.05;
    double expected = lorentzian_rate_per_us((grid[i] - tls.f_d_ghz) * 1e3, probe);
    CHECK(one.gamma1_per_us[i] == doctest::Approx(expected).epsilon(1e-12));
  }

  // Three well-separated TLSs: peak heights ordered by 2 g^2 / Gamma.
  std::vector<TlsRecord> three = {
      {4.10, 100.0, 1.0 / 0.05, 0.0, 0.0, true},   // Gamma^{-1} = 50 ns
      {4.25, 200.0, 1.0 / 0.10, 0.0, 0.0, true},   // 100 ns
      {4.40, 400.0, 1.0 / 0.20, 0.0, 0.0, true},   // 200 ns
  };
  auto spectrum = simulate_spectrum(three, 0.02, grid);
  auto peak_at = [&](double f_d) {
    double best = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (std::abs(grid[i] - f_d) < 0.01) best = std::max(best, spectrum.gamma1_per_us[i]);
    return best;
  };
  double h1 = peak_at(4.10), h2 = peak_at(4.25), h3 = peak_at(4.40);
  CHECK(h1 < h2);
  CHECK(h2 < h3);
  for (const auto& t : three) {
    double expect = 2.0 * std::pow(khz_to_rad_per_us(t.g_d_khz), 2) / t.gamma_per_us;
    CHECK(peak_at(t.f_d_ghz) == doctest::Approx(expect + 0.02).epsilon(0.01));
  }

  CHECK_THROWS_AS(simulate_spectrum(three, 0.02, std::vector<double>{}), InputError);
}

TEST_CASE("fit_tls_peaks: recovers a 3-TLS spectrum at 1% noise") {
  std::vector<TlsRecord> truth = {
      {4.10, 100.0, 1.0 / 0.05, 0.0, 0.0, true},
      {4.25, 200.0, 1.0 / 0.10, 0.0, 0.0, true},
      {4.40, 400.0, 1.0 / 0.20, 0.0, 0.0, true},
  };
  const double grid_step = 5e-4;  // 0.5 MHz
  std::vector<double> grid;
  for (double f = 4.0; f <= 4.5 + 1e-12; f += grid_step) grid.push_back(f);
  auto clean = simulate_spectrum(truth, 0.02, grid);

  Rng rng(31);
  RateTrace noisy = clean;
  for (auto& v : noisy.gamma1_per_us) v *= 1.0 + 0.01 * rng.gaussian();

  auto records = fit_tls_peaks(noisy);
  REQUIRE(records.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(records[i].f_d_ghz - truth[i].f_d_ghz) <= grid_step);
    CHECK(records[i].g_d_khz == doctest::Approx(truth[i].g_d_khz).epsilon(0.10));
    CHECK(records[i].converged);
  }
}

TEST_CASE("fit_tls_peaks: flat trace yields nothing; short trace errors") {
  RateTrace flat;
  for (int i = 0; i < 200; ++i) {
    flat.f_ghz.push_back(4.0 + i * 1e-3);
    flat.gamma1_per_us.push_back(0.05);
  }
  CHECK(fit_tls_peaks(flat).empty());

  RateTrace tiny;
  for (int i = 0; i < 5; ++i) {
    tiny.f_ghz.push_back(4.0 + i * 1e-3);
    tiny.gamma1_per_us.push_back(0.05);
  }
  CHECK_THROWS_AS(fit_tls_peaks(tiny), InputError);
}

TEST_CASE("rate_trace_from_spectroscopy: converts and skips unphysical points") {
  SpectroscopyTrace trace;
  trace.swap_time_us = 10.0;
  trace.points.push_back({4.0, 0.9, 0.5, 0.1});
  trace.points.push_back({4.1, 0.9, 0.95, 0.1});  // noise-violated ordering
  trace.points.push_back({4.2, 0.9, 0.4, 0.1});
  auto rt = rate_trace_from_spectroscopy(trace);
  REQUIRE(rt.f_ghz.size() == 2);
  CHECK(rt.gamma1_per_us[0] ==
        doctest::Approx(std::log(0.8 / 0.4) / 10.0).epsilon(1e-12));
}

TEST_CASE("tls_census: threshold filter, monotonicity, density expectation") {
  std::vector<TlsRecord> recs = {
      {4.05, 120.0, 10, 0, 0, true}, {4.20, 80.0, 10, 0, 0, true},
      {4.30, 91.0, 10, 0, 0, true},  {4.40, 300.0, 10, 0, 0, true},
      {4.45, 89.9, 10, 0, 0, true},
  };
  auto curve = tls_census(recs, 90.0, 4.0, 4.5);
  CHECK(curve.cumulative.back() == 3);  // manual filter: 120, 91, 300
  for (std::size_t i = 1; i < curve.cumulative.size(); ++i)
    CHECK(curve.cumulative[i] >= curve.cumulative[i - 1]);

  auto none = tls_census(recs, 1e6, 4.0, 4.5);
  for (int c : none.cumulative) CHECK(c == 0);

  // Nonincreasing in threshold.
  auto low = tls_census(recs, 10.0, 4.0, 4.5);
  CHECK(low.cumulative.back() >= curve.cumulative.back());

  // Two small-junction qubits: 2 x 1.5 GHz^-1 um^-2 x 0.044 um^2 ~ 0.13 per GHz.
  CHECK(2.0 * expected_junction_tls(1.5, 0.044, 1.0) == doctest::Approx(0.132).epsilon(1e-9));
  CHECK(2.0 * expected_junction_tls(1.5, 0.132, 1.0) == doctest::Approx(0.396).epsilon(1e-9));
}

TEST_CASE("purcell_correction: reciprocal-sum identity and anchors") {
  // Anchored to Q = 1.7e6 improving to Q_TLS = 2.7e6: the implied Purcell
  // limit is 1/(1/Q - 1/Q_TLS) ~ 4.59e6. Construct inputs that hit Q and Q_P,
  // then check Q_TLS comes out right.
  double f_q = 4.6;
  double wq = ghz_to_rad_per_ns(f_q) * 1e3;  // rad/us
  double q_target = 1.7e6, qp_target = 4.59e6;
  double t1 = q_target / wq;
  double t1p = qp_target / wq;
  // Choose kappa to land exactly on t1p at these couplings/detunings.
  double g01 = 50.0, delta = 1400.0, wr = f_q + delta * 1e-3;
  double kappa = delta * delta / (kTwoPi * g01 * g01 * t1p) * (wr / f_q);
  auto qf = purcell_correction(t1, kappa, g01, delta, wr, f_q);
  CHECK(qf.q_measured == doctest::Approx(1.7e6).epsilon(1e-9));
  CHECK(qf.q_purcell == doctest::Approx(4.59e6).epsilon(1e-9));
  CHECK(qf.q_tls == doctest::Approx(2.7e6).epsilon(1e-2));

  // Reciprocal-sum invariant holds to machine precision.
  CHECK(1.0 / qf.q_measured ==
        doctest::Approx(1.0 / qf.q_tls + 1.0 / qf.q_purcell).epsilon(1e-12));

  // Halving kappa doubles the Purcell limit.
  auto qf2 = purcell_correction(t1, kappa / 2, g01, delta, wr, f_q);
  CHECK(qf2.q_purcell == doctest::Approx(2.0 * qf.q_purcell).epsilon(1e-12));

  // Q_P -> infinity sends Q_TLS -> Q.
  auto qf3 = purcell_correction(t1, kappa * 1e-7, g01, delta, wr, f_q);
  CHECK(qf3.q_tls == doctest::Approx(qf3.q_measured).epsilon(1e-5));

  // Measured better than the limit: inconsistent inputs.
  CHECK_THROWS_AS(purcell_correction(t1 * 10, kappa, g01, delta, wr, f_q), NumericalError);
}
