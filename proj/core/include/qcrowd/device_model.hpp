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

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "qcrowd/units.hpp"

namespace qcrowd {

enum class Group { A, B };

enum class GateKind { iSWAP, CZ20, CZ02 };

std::string to_string(Group g);
std::string to_string(GateKind k);
Group group_from_string(const std::string& s);
GateKind gate_from_string(const std::string& s);

/// One qubit's design record. Immutable after construction; E_C defaults to
/// -alpha (standard transmon leading-order identification) unless overridden.
struct TransmonSpec {
  int id = 0;
  double f01_ghz = 0.0;
  double alpha_mhz = 0.0;  // negative for transmons
  double ec_mhz = 0.0;
  Group group = Group::A;
  double junction_area_um2 = 0.0;
};

/// Validating constructor. Throws InputError on f01 <= 0, area <= 0,
/// alpha >= 0, or ec <= 0. Pass ec_mhz = 0 to adopt E_C = -alpha.
TransmonSpec make_transmon(int id, double f01_ghz, double alpha_mhz, Group group,
                           double junction_area_um2, double ec_mhz = 0.0);

struct CouplerSpec {
  int id = 0;
  int qubit_a = 0;
  int qubit_b = 0;
  std::set<GateKind> enabled_gates;
};

/// Square lattice of qubits (row-major, id = row*cols + col) plus couplers on
/// horizontal and vertical nearest-neighbor edges.
struct LatticeLayout {
  int rows = 0;
  int cols = 0;
  std::vector<TransmonSpec> qubits;
  std::vector<CouplerSpec> couplers;

  const TransmonSpec& at(int row, int col) const;
  int qubit_index(int row, int col) const { return row * cols + col; }
};

/// Checks every layout invariant (grid shape, per-qubit parameter ranges,
/// edge count, coupler endpoints, checkerboard group assignment). Violations
/// are data, not errors: returns one human-readable entry per violation with
/// lattice coordinates; empty means valid.
std::vector<std::string> validate_layout(const LatticeLayout& layout);

/// E_J/E_C from the first-order transmon dispersion h f01 = sqrt(8 E_J E_C) - E_C,
/// inverted as E_J = (h f01 + E_C)^2 / (8 E_C). Throws InputError if ec <= 0.
double ej_ec_ratio(const TransmonSpec& spec);

// Layout JSON document:
//   {rows, cols,
//    qubits:[{id,row,col,f01_ghz,alpha_mhz,ec_mhz,group,area_um2}],
//    couplers:[{id,a,b,gates:[...]}]}
std::string layout_to_json(const LatticeLayout& layout);
LatticeLayout layout_from_json(const std::string& text);
LatticeLayout load_layout(const std::filesystem::path& path);
void save_layout(const LatticeLayout& layout, const std::filesystem::path& path);

}  // namespace qcrowd
