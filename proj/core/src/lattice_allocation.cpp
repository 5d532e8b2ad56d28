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

#include "qcrowd/lattice_allocation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcrowd/errors.hpp"

namespace qcrowd {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  return (a % b != 0 && (a ^ b) < 0) ? q - 1 : q;
}

int mod2(int a) { return ((a % 2) + 2) % 2; }

}  // namespace

AllocationResult allocate_unit_cell(const AllocationRules& rules) {
  if (!(rules.delta_q_mhz > 0.0))
    throw InputError("allocation: delta_q must be positive");
  if (!(rules.bandwidth_ghz > 0.0))
    throw InputError("allocation: bandwidth must be positive");
  if (!(rules.base_f_ghz > 0.0))
    throw InputError("allocation: base frequency must be positive");
  double dq_ghz = rules.delta_q_mhz * 1e-3;
  if (rules.bandwidth_ghz < 6.0 * dq_ghz + 1e-12)
    throw InputError("allocation: bandwidth too narrow for two 4-level groups");

  const double alpha_a = -1.5 * rules.delta_q_mhz;
  const double alpha_b = -2.5 * rules.delta_q_mhz;
  // Group B occupies the top of the band: its lowest member sits at
  // base + bandwidth - 3 delta_q so the group ends exactly at the band edge.
  const double base_b = rules.base_f_ghz + rules.bandwidth_ghz - 3.0 * dq_ghz;

  AllocationResult result;
  for (int k = 0; k < 4; ++k)
    result.cell.push_back(make_transmon(k + 1, rules.base_f_ghz + k * dq_ghz, alpha_a,
                                        Group::A, rules.junction_area_um2));
  for (int k = 0; k < 4; ++k)
    result.cell.push_back(make_transmon(k + 5, base_b + k * dq_ghz, alpha_b, Group::B,
                                        rules.junction_area_um2));

  // Advisory constraint checks.
  for (const auto& q : result.cell) {
    if (q.f01_ghz < rules.base_f_ghz - 1e-12 ||
        q.f01_ghz > rules.base_f_ghz + rules.bandwidth_ghz + 1e-12) {
      std::ostringstream ss;
      ss << "qubit " << q.id << " at " << q.f01_ghz << " GHz falls outside the "
         << rules.bandwidth_ghz << " GHz band";
      result.warnings.push_back(ss.str());
    }
  }
  double min_low_cz = 1e300;
  for (int i = 0; i < 4; ++i) {
    for (int j = 4; j < 8; ++j) {
      auto gf = gate_frequencies(result.cell[i], result.cell[j]);
      double low = gf.low_cz == GateKind::CZ20 ? gf.cz20_ghz : gf.cz02_ghz;
      min_low_cz = std::min(min_low_cz, low);
    }
  }
  if (min_low_cz * 1e3 < rules.min_low_cz_mhz) {
    std::ostringstream ss;
    ss << "lowest low-frequency CZ is " << min_low_cz * 1e3 << " MHz, below the "
       << rules.min_low_cz_mhz << " MHz constraint";
    result.warnings.push_back(ss.str());
  }
  for (const auto& q : result.cell) {
    double ratio = ej_ec_ratio(q);
    if (ratio < rules.min_ej_ec) {
      std::ostringstream ss;
      ss << "qubit " << q.id << " has E_J/E_C = " << ratio << ", below the "
         << rules.min_ej_ec << " constraint (advisory; E_C = -alpha convention)";
      result.warnings.push_back(ss.str());
    }
  }
  return result;
}

GateFrequencies gate_frequencies(const TransmonSpec& a, const TransmonSpec& b) {
  GateFrequencies gf;
  double alpha_a_ghz = a.alpha_mhz * 1e-3;
  double alpha_b_ghz = b.alpha_mhz * 1e-3;
  gf.iswap_ghz = std::abs(a.f01_ghz - b.f01_ghz);
  gf.cz20_ghz = std::abs(b.f01_ghz - a.f01_ghz - alpha_a_ghz);
  gf.cz02_ghz = std::abs(a.f01_ghz - b.f01_ghz - alpha_b_ghz);
  // The CZ through the higher-frequency qubit's |2> lands below the iSWAP.
  gf.low_cz = a.f01_ghz > b.f01_ghz ? GateKind::CZ20 : GateKind::CZ02;
  return gf;
}

LatticeLayout tile_lattice(int rows, int cols, const std::vector<TransmonSpec>& unit_cell) {
  if (rows < 2 || cols < 2) throw InputError("tile_lattice: rows and cols must be >= 2");
  if (unit_cell.size() != 8)
    throw InputError("tile_lattice: unit cell must contain 8 specs (4 per group)");
  std::vector<TransmonSpec> group_a, group_b;
  for (const auto& q : unit_cell)
    (q.group == Group::A ? group_a : group_b).push_back(q);
  if (group_a.size() != 4 || group_b.size() != 4)
    throw InputError("tile_lattice: unit cell must hold 4 qubits per group");
  auto by_f01 = [](const TransmonSpec& x, const TransmonSpec& y) {
    return x.f01_ghz < y.f01_ghz;
  };
  std::sort(group_a.begin(), group_a.end(), by_f01);
  std::sort(group_b.begin(), group_b.end(), by_f01);

  LatticeLayout layout;
  layout.rows = rows;
  layout.cols = cols;
  layout.qubits.resize(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      bool is_a = mod2(r + c) == 0;
      // Within a sublattice, (u, v) = ((r+c)/2, (r-c)/2) is a square grid and
      // the four sublattice neighbors of any opposite-group site form one
      // 2x2 block of it, so a period-2 index in u and v makes those four
      // frequencies pairwise distinct.
      int u = floor_div(r + c, 2);
      int v = floor_div(r - c, 2);
      int idx = mod2(u) + 2 * mod2(v);
      TransmonSpec q = is_a ? group_a[idx] : group_b[idx];
      q.id = layout.qubit_index(r, c);
      layout.qubits[q.id] = q;
    }
  }

  int coupler_id = 0;
  auto add_edge = [&](int qa, int qb) {
    const auto& a = layout.qubits[qa];
    const auto& b = layout.qubits[qb];
    auto gf = gate_frequencies(a, b);
    CouplerSpec cp;
    cp.id = coupler_id++;
    cp.qubit_a = qa;
    cp.qubit_b = qb;
    cp.enabled_gates = {GateKind::iSWAP, gf.low_cz};
    layout.couplers.push_back(std::move(cp));
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) add_edge(layout.qubit_index(r, c), layout.qubit_index(r, c + 1));
      if (r + 1 < rows) add_edge(layout.qubit_index(r, c), layout.qubit_index(r + 1, c));
    }
  }
  return layout;
}

}  // namespace qcrowd
