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

#include "qcrowd/lattice_allocation.hpp"
#include "qcrowd/qpu_mc.hpp"
#include "qcrowd/tls_collision_mc.hpp"

using namespace qcrowd;

static void BM_TlsMcTrials(benchmark::State& state) {
  TlsMcConfig config;
  config.trials = static_cast<int>(state.range(0));
  config.jobs = 1;
  for (auto _ : state) {
    auto r = simulate_dead_qubits(config);
    benchmark::DoNotOptimize(r.mean);
  }
  state.SetItemsProcessed(state.iterations() * config.trials);
}
BENCHMARK(BM_TlsMcTrials)->Arg(1000)->Arg(10000);

static void BM_EnumerateChecks(benchmark::State& state) {
  auto layout = tile_lattice(static_cast<int>(state.range(0)),
                             static_cast<int>(state.range(0)),
                             allocate_unit_cell({}).cell);
  for (auto _ : state) {
    auto checks = enumerate_checks(layout, NeighborPolicy::nearest_and_next, false);
    benchmark::DoNotOptimize(checks.size());
  }
}
BENCHMARK(BM_EnumerateChecks)->Arg(4)->Arg(10)->Arg(20);

static void BM_QpuMcTrial(benchmark::State& state) {
  auto layout = tile_lattice(10, 10, allocate_unit_cell({}).cell);
  auto checks = enumerate_checks(layout, NeighborPolicy::nearest_and_next, false);
  std::vector<double> bounds(checks.size(), 0.004);
  Rng rng(3);
  for (auto _ : state) {
    auto f = sample_frequencies(layout, 40.0, rng);
    benchmark::DoNotOptimize(count_collisions(f, layout, checks, bounds));
  }
}
BENCHMARK(BM_QpuMcTrial);
