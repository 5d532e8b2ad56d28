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

#include "qcrowd/device_model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcrowd/errors.hpp"

namespace qcrowd {

std::string to_string(Group g) { return g == Group::A ? "A" : "B"; }

std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::iSWAP: return "iSWAP";
    case GateKind::CZ20: return "CZ20";
    case GateKind::CZ02: return "CZ02";
  }
  return "?";
}

Group group_from_string(const std::string& s) {
  if (s == "A") return Group::A;
  if (s == "B") return Group::B;
  throw InputError("unknown qubit group '" + s + "'");
}

GateKind gate_from_string(const std::string& s) {
  if (s == "iSWAP") return GateKind::iSWAP;
  if (s == "CZ20") return GateKind::CZ20;
  if (s == "CZ02") return GateKind::CZ02;
  throw InputError("unknown gate kind '" + s + "'");
}

TransmonSpec make_transmon(int id, double f01_ghz, double alpha_mhz, Group group,
                           double junction_area_um2, double ec_mhz) {
  if (!(f01_ghz > 0.0))
    throw InputError("transmon f01 must be positive, got " + std::to_string(f01_ghz));
  if (!(alpha_mhz < 0.0))
    throw InputError("transmon anharmonicity must be negative, got " +
                     std::to_string(alpha_mhz));
  if (!(junction_area_um2 > 0.0))
    throw InputError("junction area must be positive, got " +
                     std::to_string(junction_area_um2));
  if (ec_mhz == 0.0) ec_mhz = -alpha_mhz;
  if (!(ec_mhz > 0.0))
    throw InputError("charging energy must be positive, got " + std::to_string(ec_mhz));
  return TransmonSpec{id, f01_ghz, alpha_mhz, ec_mhz, group, junction_area_um2};
}

const TransmonSpec& LatticeLayout::at(int row, int col) const {
  if (row < 0 || row >= rows || col < 0 || col >= cols)
    throw InputError("lattice coordinate out of range");
  return qubits[static_cast<std::size_t>(qubit_index(row, col))];
}

double ej_ec_ratio(const TransmonSpec& spec) {
  if (!(spec.ec_mhz > 0.0)) throw InputError("ej_ec_ratio: e_c must be positive");
  double ec_ghz = spec.ec_mhz * 1e-3;
  double ej_ghz = (spec.f01_ghz + ec_ghz) * (spec.f01_ghz + ec_ghz) / (8.0 * ec_ghz);
  return ej_ghz / ec_ghz;
}

std::vector<std::string> validate_layout(const LatticeLayout& layout) {
  std::vector<std::string> out;
  auto note = [&out](const std::string& s) { out.push_back(s); };

  if (layout.rows <= 0 || layout.cols <= 0) {
    note("grid dimensions must be positive");
    return out;
  }
  const std::size_t n = static_cast<std::size_t>(layout.rows) * layout.cols;
  if (layout.qubits.size() != n) {
    note("qubit count " + std::to_string(layout.qubits.size()) + " does not match " +
         std::to_string(layout.rows) + "x" + std::to_string(layout.cols) + " grid");
    return out;
  }

  for (int r = 0; r < layout.rows; ++r) {
    for (int c = 0; c < layout.cols; ++c) {
      const auto& q = layout.qubits[layout.qubit_index(r, c)];
      std::string where = " at (" + std::to_string(r) + "," + std::to_string(c) + ")";
      if (!(q.f01_ghz > 0)) note("non-positive f01" + where);
      if (!(q.junction_area_um2 > 0)) note("non-positive junction area" + where);
      if (!(q.alpha_mhz < 0)) note("non-negative anharmonicity" + where);
      if (!(q.ec_mhz > 0)) note("non-positive charging energy" + where);
    }
  }

  const std::size_t expected_edges =
      static_cast<std::size_t>(layout.rows) * (layout.cols - 1) +
      static_cast<std::size_t>(layout.cols) * (layout.rows - 1);
  if (layout.couplers.size() != expected_edges)
    note("coupler count " + std::to_string(layout.couplers.size()) + " differs from edge count " +
         std::to_string(expected_edges));

  for (const auto& cp : layout.couplers) {
    if (cp.qubit_a == cp.qubit_b) {
      note("coupler " + std::to_string(cp.id) + " joins a qubit to itself");
      continue;
    }
    if (cp.qubit_a < 0 || cp.qubit_a >= static_cast<int>(n) || cp.qubit_b < 0 ||
        cp.qubit_b >= static_cast<int>(n)) {
      note("coupler " + std::to_string(cp.id) + " references a missing qubit");
      continue;
    }
    int ra = cp.qubit_a / layout.cols, ca = cp.qubit_a % layout.cols;
    int rb = cp.qubit_b / layout.cols, cb = cp.qubit_b % layout.cols;
    if (std::abs(ra - rb) + std::abs(ca - cb) != 1)
      note("coupler " + std::to_string(cp.id) + " joins non-adjacent qubits (" +
           std::to_string(ra) + "," + std::to_string(ca) + ")-(" + std::to_string(rb) +
           "," + std::to_string(cb) + ")");
  }

  // Checkerboard: every lattice edge must join different groups.
  for (int r = 0; r < layout.rows; ++r) {
    for (int c = 0; c < layout.cols; ++c) {
      const auto& q = layout.at(r, c);
      if (c + 1 < layout.cols && layout.at(r, c + 1).group == q.group)
        note("same-group neighbors at (" + std::to_string(r) + "," + std::to_string(c) +
             ") and (" + std::to_string(r) + "," + std::to_string(c + 1) + ")");
      if (r + 1 < layout.rows && layout.at(r + 1, c).group == q.group)
        note("same-group neighbors at (" + std::to_string(r) + "," + std::to_string(c) +
             ") and (" + std::to_string(r + 1) + "," + std::to_string(c) + ")");
    }
  }
  return out;
}

std::string layout_to_json(const LatticeLayout& layout) {
  nlohmann::json j;
  j["rows"] = layout.rows;
  j["cols"] = layout.cols;
  j["qubits"] = nlohmann::json::array();
  for (int r = 0; r < layout.rows; ++r) {
    for (int c = 0; c < layout.cols; ++c) {
      const auto& q = layout.qubits[layout.qubit_index(r, c)];
      j["qubits"].push_back({{"id", q.id},
                             {"row", r},
                             {"col", c},
                             {"f01_ghz", q.f01_ghz},
                             {"alpha_mhz", q.alpha_mhz},
                             {"ec_mhz", q.ec_mhz},
                             {"group", to_string(q.group)},
                             {"area_um2", q.junction_area_um2}});
    }
  }
  j["couplers"] = nlohmann::json::array();
  for (const auto& cp : layout.couplers) {
    nlohmann::json gates = nlohmann::json::array();
    for (auto g : cp.enabled_gates) gates.push_back(to_string(g));
    j["couplers"].push_back({{"id", cp.id}, {"a", cp.qubit_a}, {"b", cp.qubit_b}, {"gates", gates}});
  }
  return j.dump(2);
}

LatticeLayout layout_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("layout json: ") + e.what());
  }
  try {
    LatticeLayout layout;
    layout.rows = j.at("rows").get<int>();
    layout.cols = j.at("cols").get<int>();
    if (layout.rows <= 0 || layout.cols <= 0)
      throw InputError("layout json: non-positive grid dimensions");
    layout.qubits.resize(static_cast<std::size_t>(layout.rows) * layout.cols);
    std::vector<bool> seen(layout.qubits.size(), false);
    for (const auto& q : j.at("qubits")) {
      int r = q.at("row").get<int>();
      int c = q.at("col").get<int>();
      if (r < 0 || r >= layout.rows || c < 0 || c >= layout.cols)
        throw InputError("layout json: qubit coordinate out of range");
      auto idx = static_cast<std::size_t>(layout.qubit_index(r, c));
      layout.qubits[idx] =
          make_transmon(q.at("id").get<int>(), q.at("f01_ghz").get<double>(),
                        q.at("alpha_mhz").get<double>(),
                        group_from_string(q.at("group").get<std::string>()),
                        q.at("area_um2").get<double>(), q.at("ec_mhz").get<double>());
      seen[idx] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (!seen[i]) throw InputError("layout json: missing qubit at linear index " + std::to_string(i));
    for (const auto& cp : j.at("couplers")) {
      CouplerSpec spec;
      spec.id = cp.at("id").get<int>();
      spec.qubit_a = cp.at("a").get<int>();
      spec.qubit_b = cp.at("b").get<int>();
      for (const auto& g : cp.at("gates"))
        spec.enabled_gates.insert(gate_from_string(g.get<std::string>()));
      layout.couplers.push_back(std::move(spec));
    }
    return layout;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("layout json: ") + e.what());
  }
}

LatticeLayout load_layout(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open layout file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return layout_from_json(ss.str());
}

void save_layout(const LatticeLayout& layout, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write layout file: " + path.string());
  out << layout_to_json(layout) << "\n";
}

}  // namespace qcrowd
