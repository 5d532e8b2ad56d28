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

#include <string>
#include <vector>

#include "qcrowd/device_model.hpp"

namespace qcrowd {

/// Rules for the 8-frequency unit cell: group A sits at the bottom of the
/// band equispaced by delta_q with alpha_A = -1.5 delta_q, group B at the top
/// with alpha_B = -2.5 delta_q. Constraint fields are advisory thresholds.
struct AllocationRules {
  double delta_q_mhz = 104.0;
  double base_f_ghz = 4.3;
  double bandwidth_ghz = 1.0;
  double min_low_cz_mhz = 100.0;
  double min_ej_ec = 60.0;
  double junction_area_um2 = 0.109;  // carried onto the specs for downstream use
};

struct AllocationResult {
  std::vector<TransmonSpec> cell;      // 8 specs: A0..A3 then B0..B3, ids 1..8
  std::vector<std::string> warnings;   // advisory constraint violations
};

/// Builds the 8-qubit unit cell. Throws InputError on nonsensical inputs
/// (delta_q <= 0, bandwidth <= 0, band too narrow for 4 + 4 levels);
/// constraint violations (bandwidth edge, min low-CZ, min E_J/E_C) are
/// reported as warnings, not errors.
AllocationResult allocate_unit_cell(const AllocationRules& rules);

struct GateFrequencies {
  double iswap_ghz = 0.0;
  double cz20_ghz = 0.0;  // qubit a visits |2>
  double cz02_ghz = 0.0;  // qubit b visits |2>
  GateKind low_cz = GateKind::CZ02;
};

/// Coupler modulation frequencies from bare qubit parameters:
///   iswap = |f_a - f_b|, cz20 = |f_b - f_a - alpha_a|, cz02 = |f_a - f_b - alpha_b|.
/// The low-frequency CZ is the one whose |2>-visiting qubit has the higher
/// f01 (for an A-B pair with B on top, that is the B-excited CZ).
GateFrequencies gate_frequencies(const TransmonSpec& a, const TransmonSpec& b);

/// Tiles rows x cols with the unit cell: checkerboard groups, and within each
/// group the four frequencies cycle with period 2 along both diagonal
/// directions, so the 2-4 neighbors of any qubit carry distinct other-group
/// frequencies. Couplers are created on every edge with {iSWAP, low CZ}
/// enabled. Requires rows, cols >= 2.
LatticeLayout tile_lattice(int rows, int cols, const std::vector<TransmonSpec>& unit_cell);

}  // namespace qcrowd
