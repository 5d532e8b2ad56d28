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

#include <benchmark/benchmark.h>

#include "qcrowd/collision_bounds.hpp"
#include "qcrowd/gate_dynamics.hpp"

using namespace qcrowd;

static void BM_PropagateExact(benchmark::State& state) {
  const auto& cse = catalog()[static_cast<std::size_t>(state.range(0))];
  auto h = build_hamiltonian(cse, 137.0, 0.5 * cse.g_wcs_mhz);
  for (auto _ : state) {
    auto u = propagate_exact(h, cse.t_g_ns);
    benchmark::DoNotOptimize(u.u.data());
  }
}
BENCHMARK(BM_PropagateExact)->Arg(0)->Arg(5)->Arg(9);

static void BM_PropagateRk4(benchmark::State& state) {
  const auto& cse = catalog()[static_cast<std::size_t>(state.range(0))];
  auto h = build_hamiltonian(cse, 137.0, 0.5 * cse.g_wcs_mhz);
  for (auto _ : state) {
    auto u = propagate(h, cse.t_g_ns, 1e-10);
    benchmark::DoNotOptimize(u.u.data());
  }
}
BENCHMARK(BM_PropagateRk4)->Arg(0)->Arg(5);

static void BM_CollisionFidelity(benchmark::State& state) {
  const auto& cse = find_case("CZ02_vs_CZ20_neighbor");
  double delta = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(collision_fidelity(cse, delta, cse.g_wcs_mhz));
    delta += 1.0;
    if (delta > 2500.0) delta = 10.0;
  }
}
BENCHMARK(BM_CollisionFidelity);

static void BM_MinimumDetuning(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        minimum_detuning({"iSWAP_vs_iSWAP_neighbor", 1.0, 0.999}, 1.0, 0.5));
  }
}
BENCHMARK(BM_MinimumDetuning);
