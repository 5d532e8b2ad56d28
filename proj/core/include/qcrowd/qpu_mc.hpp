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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcrowd/collision_bounds.hpp"
#include "qcrowd/device_model.hpp"
#include "qcrowd/rng.hpp"

namespace qcrowd {

enum class NeighborPolicy { nearest_only, nearest_and_next };
NeighborPolicy neighbor_policy_from_string(const std::string& s);
std::string to_string(NeighborPolicy p);

struct QpuMcConfig {
  LatticeLayout layout;
  double sigma_f_mhz = 40.0;
  double x_ac = 0.02;
  double f_threshold = 0.999;
  int trials = 2000;
  std::uint64_t seed = 1;
  NeighborPolicy neighbor_policy = NeighborPolicy::nearest_and_next;
  /// Cross-gate (iSWAP vs CZ) checks between couplers sharing a qubit. The
  /// designed allocation interleaves those combs at half the qubit spacing,
  /// so enabling this class roughly doubles the counted collisions.
  bool include_cross_gate_checks = false;
  /// Crosstalk scale applied to next-nearest single-qubit checks (the drive
  /// leakage should be weaker at the larger distance; 1.0 is conservative).
  double next_nearest_xac_scale = 1.0;
  int jobs = 1;
};

/// One frequency comparison: |omega(g1) - omega(g2)| against the bound of
/// case_name (and alt_case_name when the colliding orientation differs; the
/// larger bound wins).
struct CollisionCheck {
  enum class Ref { qubit_f01, coupler_iswap, coupler_low_cz };
  Ref ref1 = Ref::qubit_f01;
  int index1 = 0;  // qubit or coupler index
  Ref ref2 = Ref::qubit_f01;
  int index2 = 0;
  std::string case_name;
  std::string alt_case_name;  // empty when one orientation covers the check
  bool next_nearest = false;
};

/// Materializes the check list for a validated layout: nearest (and
/// optionally next-nearest diagonal) single-qubit pairs, iSWAP-vs-low-CZ per
/// coupler, and same-gate (plus optionally cross-gate) pairs for couplers
/// sharing a qubit. High-frequency CZs are never enabled on couplers, so they
/// generate no checks.
std::vector<CollisionCheck> enumerate_checks(const LatticeLayout& layout,
                                             NeighborPolicy policy,
                                             bool include_cross_gate_checks);

/// Gaussian frequency scatter: realized f01 ~ N(design, sigma_f) per qubit;
/// anharmonicities stay at design values.
std::vector<double> sample_frequencies(const LatticeLayout& layout, double sigma_f_mhz,
                                       Rng& rng);

/// Per-check bound in GHz for the given crosstalk and fidelity threshold.
/// Extends the table with exact rows at the crosstalk fractions in use.
std::vector<double> resolve_bounds(std::span<const CollisionCheck> checks,
                                   BoundTable& table, double x_ac, double f_threshold,
                                   double next_nearest_xac_scale);

/// Collisions in one realized frequency draw; appends per-case violation
/// counts into per_type.
int count_collisions(std::span<const double> realized_f01, const LatticeLayout& layout,
                     std::span<const CollisionCheck> checks, std::span<const double> bounds,
                     std::map<std::string, long>* per_type = nullptr);

struct CollisionReport {
  std::vector<int> per_trial;
  std::map<std::string, long> per_type;
  double mean = 0.0;
  double stdev = 0.0;
  double yield = 0.0;  // fraction of trials with zero collisions
};

/// Full Monte Carlo over fabrication scatter. Deterministic per (config,
/// seed); trials run in parallel on per-trial RNG streams.
CollisionReport run_collision_mc(const QpuMcConfig& config, BoundTable& table);

enum class QpuSweepAxis { n_qubits, sigma_f, x_ac, f_threshold };
QpuSweepAxis qpu_axis_from_string(const std::string& s);
std::string to_string(QpuSweepAxis axis);

struct QpuSweepPoint {
  double axis_value = 0.0;
  CollisionReport report;
};

/// Seeded sweep along one axis. The n_qubits axis re-tiles the layout's own
/// 8-frequency unit cell to the nearest rows x cols grid per point.
std::vector<QpuSweepPoint> run_study(const QpuMcConfig& config, QpuSweepAxis axis,
                                     std::span<const double> values, BoundTable& table);

/// Extracts the 8 distinct (group, f01, alpha) specs a tiled layout repeats.
std::vector<TransmonSpec> unit_cell_of(const LatticeLayout& layout);

}  // namespace qcrowd
