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
#include "qcrowd/tls_collision_mc.hpp"

using namespace qcrowd;

namespace {

TlsMcConfig headline_config() {
  TlsMcConfig c;
  c.n_qubits = 100;
  c.rho_d_per_ghz_um2 = 1.5;
  c.a_j_um2 = 0.109;
  c.bound_mhz = 40.0;
  c.span_ghz = 1.0;
  c.trials = 4000;
  c.seed = 99;
  c.jobs = 4;
  return c;
}

}  // namespace

TEST_CASE("simulate_dead_qubits: zero density kills nobody") {
  auto config = headline_config();
  config.rho_d_per_ghz_um2 = 0.0;
  config.trials = 200;
  auto r = simulate_dead_qubits(config);
  CHECK(r.mean == 0.0);
  CHECK(r.stdev == 0.0);
}

TEST_CASE("simulate_dead_qubits: headline statistics match the analytic oracle") {
  auto config = headline_config();
  auto r = simulate_dead_qubits(config);
  double oracle = expected_dead_qubits(config);
  double stderrors = 3.0 * r.stdev / std::sqrt(static_cast<double>(config.trials));
  CHECK(std::abs(r.mean - oracle) < stderrors);
  CHECK(r.mean > 0.8);
  CHECK(r.mean < 1.8);
  // The no-edge linear reference sits near 1.31 for this configuration.
  CHECK(expected_dead_qubits_linear(config) == doctest::Approx(1.308).epsilon(1e-9));
}

TEST_CASE("simulate_dead_qubits: reproducible bit-for-bit and jobs-invariant") {
  auto config = headline_config();
  config.trials = 500;
  auto a = simulate_dead_qubits(config);
  auto b = simulate_dead_qubits(config);
  CHECK(a.mean == b.mean);
  CHECK(a.stdev == b.stdev);
  config.jobs = 1;
  auto c = simulate_dead_qubits(config);
  CHECK(a.mean == c.mean);
}

TEST_CASE("simulate_dead_qubits: monotone under common random numbers") {
  auto base = headline_config();
  base.trials = 1500;

  auto with = [&](auto&& tweak) {
    auto c = base;
    tweak(c);
    return simulate_dead_qubits(c).mean;
  };
  double reference = simulate_dead_qubits(base).mean;
  CHECK(with([](TlsMcConfig& c) { c.n_qubits = 150; }) >= reference);
  CHECK(with([](TlsMcConfig& c) { c.bound_mhz = 60.0; }) >= reference);
  CHECK(with([](TlsMcConfig& c) { c.rho_d_per_ghz_um2 = 2.0; }) >= reference);
  CHECK(with([](TlsMcConfig& c) { c.a_j_um2 = 0.15; }) >= reference);
}

TEST_CASE("simulate_dead_qubits: large junctions die about three times as often") {
  auto small = headline_config();
  small.a_j_um2 = 0.036;
  small.trials = 6000;
  auto large = headline_config();
  large.a_j_um2 = 0.109;
  large.trials = 6000;
  double ratio = simulate_dead_qubits(large).mean / simulate_dead_qubits(small).mean;
  CHECK(ratio > 2.4);
  CHECK(ratio < 3.7);
}

TEST_CASE("simulate_dead_qubits: fixed-count mode is close to poisson mode") {
  auto config = headline_config();
  config.trials = 3000;
  auto poisson = simulate_dead_qubits(config);
  config.mode = TlsCountMode::fixed;
  auto fixed = simulate_dead_qubits(config);
  CHECK(std::abs(poisson.mean - fixed.mean) < 0.2);
}

TEST_CASE("sweep_dead_qubits: deterministic curve, linear-in-b scaling") {
  auto config = headline_config();
  config.trials = 4000;
  std::vector<double> bs;
  for (double b = 10.0; b <= 100.0 + 1e-9; b += 10.0) bs.push_back(b);
  auto curve = sweep_dead_qubits(config, TlsSweepAxis::bound, bs);
  REQUIRE(curve.size() == bs.size());

  // Least-squares slope against 2 N rho A / span.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : curve) {
    sx += p.axis_value;
    sy += p.stats.mean;
    sxx += p.axis_value * p.axis_value;
    sxy += p.axis_value * p.stats.mean;
  }
  double n = static_cast<double>(curve.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double target = 2.0 * config.n_qubits * config.rho_d_per_ghz_um2 * config.a_j_um2 /
                  (config.span_ghz * 1e3);
  CHECK(std::abs(slope - target) / target < 0.15);

  auto again = sweep_dead_qubits(config, TlsSweepAxis::bound, bs);
  for (std::size_t i = 0; i < curve.size(); ++i)
    CHECK(curve[i].stats.mean == again[i].stats.mean);
}

TEST_CASE("sweep_dead_qubits: zero-density point on any axis is zero") {
  auto config = headline_config();
  config.trials = 300;
  std::vector<double> rho = {0.0, 1.5};
  auto curve = sweep_dead_qubits(config, TlsSweepAxis::rho_d, rho);
  CHECK(curve[0].stats.mean == 0.0);
  CHECK(curve[1].stats.mean > 0.0);
}

TEST_CASE("tls mc config validation") {
  auto config = headline_config();
  config.trials = 0;
  CHECK_THROWS_AS(simulate_dead_qubits(config), InputError);
  config = headline_config();
  config.bound_mhz = 1500.0;  // >= span
  CHECK_THROWS_AS(simulate_dead_qubits(config), InputError);
  config = headline_config();
  config.span_ghz = 0.0;
  CHECK_THROWS_AS(simulate_dead_qubits(config), InputError);
  CHECK_THROWS_AS(sweep_dead_qubits(headline_config(), TlsSweepAxis::bound, {}), InputError);
}
