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

#include "qcrowd/collision_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qcrowd/errors.hpp"
#include "qcrowd/parallel.hpp"
#include "qcrowd/rng.hpp"

namespace qcrowd {

namespace {

/// F(Delta) on the scan grid for one (case, g) pair, via the exact
/// rotating-frame propagator. The ideal gate is computed once.
std::vector<double> fidelity_curve(const CollisionCase& cse, double g_mhz,
                                   double grid_step_mhz, double delta_max_ghz) {
  const int n = static_cast<int>(std::floor(delta_max_ghz * 1e3 / grid_step_mhz)) + 1;
  Eigen::MatrixXcd ug = project_to_computational(ideal_gate(cse), cse.n_qubits);
  std::vector<double> curve(n);
  for (int i = 0; i < n; ++i) {
    double delta_mhz = i * grid_step_mhz;
    HamiltonianSpec h = build_hamiltonian(cse, delta_mhz, g_mhz);
    Eigen::MatrixXcd m = project_to_computational(propagate_exact(h, cse.t_g_ns), cse.n_qubits);
    curve[i] = average_gate_fidelity(m, ug);
  }
  return curve;
}

double bound_from_curve(const std::vector<double>& curve, double threshold,
                        double grid_step_mhz, ScanRule rule, const std::string& what) {
  const int n = static_cast<int>(curve.size());
  if (rule == ScanRule::first_crossing) {
    for (int i = 0; i < n; ++i)
      if (curve[i] >= threshold) return i * grid_step_mhz * 1e-3;
    throw NumericalError("minimum_detuning: F stays below " + std::to_string(threshold) +
                         " up to delta_max for " + what + "; raise delta_max");
  }
  // last crossing: smallest grid point safe for every larger grid point
  if (curve.empty() || curve[n - 1] < threshold)
    throw NumericalError("minimum_detuning: F below " + std::to_string(threshold) +
                         " at delta_max for " + what + "; raise delta_max");
  int first_unsafe_above = -1;
  for (int i = n - 1; i >= 0; --i) {
    if (curve[i] < threshold) {
      first_unsafe_above = i;
      break;
    }
  }
  return (first_unsafe_above + 1) * grid_step_mhz * 1e-3;
}

long to_fixed(double v, double scale) { return std::lround(v * scale); }

}  // namespace

std::string to_string(ScanRule rule) {
  return rule == ScanRule::first_crossing ? "first_crossing" : "last_crossing";
}

ScanRule scan_rule_from_string(const std::string& s) {
  if (s == "first_crossing" || s == "first") return ScanRule::first_crossing;
  if (s == "last_crossing" || s == "last") return ScanRule::last_crossing;
  throw InputError("unknown scan rule '" + s + "'");
}

std::string BoundTableConfig::fingerprint() const {
  std::ostringstream ss;
  ss << grid_step_mhz << "|" << delta_max_ghz << "|" << to_string(rule) << "|";
  for (double f : g_fractions) ss << f << ",";
  ss << "|";
  for (double t : f_thresholds) ss << t << ",";
  ss << "|" << catalog_fingerprint();
  std::ostringstream out;
  out << std::hex << fnv1a64(ss.str());
  return out.str();
}

double minimum_detuning(const BoundQuery& query, double grid_step_mhz, double delta_max_ghz,
                        ScanRule rule) {
  if (!(query.f_threshold > 0.0 && query.f_threshold < 1.0))
    throw InputError("minimum_detuning: threshold must lie in (0, 1)");
  if (!(query.g_fraction >= 0.0 && query.g_fraction <= 1.0))
    throw InputError("minimum_detuning: g_fraction must lie in [0, 1]");
  if (!(grid_step_mhz > 0.0) || !(delta_max_ghz > 0.0))
    throw InputError("minimum_detuning: grid must be positive");
  const CollisionCase& cse = find_case(query.case_name);
  auto curve = fidelity_curve(cse, query.g_fraction * cse.g_wcs_mhz, grid_step_mhz,
                              delta_max_ghz);
  return bound_from_curve(curve, query.f_threshold, grid_step_mhz, rule,
                          query.case_name + " @ g=" + std::to_string(query.g_fraction));
}

BoundTable::Key BoundTable::key_of(const std::string& name, double fraction,
                                   double threshold) {
  return {name, to_fixed(fraction, 1e6), to_fixed(threshold, 1e8)};
}

BoundTable BoundTable::build(const BoundTableConfig& config) {
  BoundTable table;
  table.config_ = config;
  table.extend_fractions(config.g_fractions);
  return table;
}

void BoundTable::extend_fractions(const std::vector<double>& fractions) {
  std::vector<std::pair<const CollisionCase*, double>> work;
  for (const auto& cse : catalog()) {
    for (double frac : fractions) {
      bool missing = false;
      for (double th : config_.f_thresholds)
        if (!cells_.count(key_of(cse.name, frac, th))) missing = true;
      if (missing) work.push_back({&cse, frac});
    }
  }
  if (work.empty()) return;

  std::vector<std::vector<double>> bounds(work.size());
  parallel_for(work.size(), config_.jobs, [&](std::size_t i) {
    const auto& [cse, frac] = work[i];
    auto curve = fidelity_curve(*cse, frac * cse->g_wcs_mhz, config_.grid_step_mhz,
                                config_.delta_max_ghz);
    for (double th : config_.f_thresholds)
      bounds[i].push_back(bound_from_curve(curve, th, config_.grid_step_mhz, config_.rule,
                                           cse->name + " @ g=" + std::to_string(frac)));
  });
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t k = 0; k < config_.f_thresholds.size(); ++k)
      cells_[key_of(work[i].first->name, work[i].second, config_.f_thresholds[k])] =
          bounds[i][k];
}

bool BoundTable::has(const BoundQuery& q) const {
  return cells_.count(key_of(q.case_name, q.g_fraction, q.f_threshold)) > 0;
}

double BoundTable::at(const BoundQuery& q) const {
  auto it = cells_.find(key_of(q.case_name, q.g_fraction, q.f_threshold));
  if (it == cells_.end())
    throw InputError("bound table has no cell (" + q.case_name + ", g=" +
                     std::to_string(q.g_fraction) + ", F=" + std::to_string(q.f_threshold) +
                     ")");
  return it->second;
}

std::vector<double> BoundTable::tabulated_fractions() const {
  std::set<long> fs;
  for (const auto& [key, _] : cells_) fs.insert(std::get<1>(key));
  std::vector<double> out;
  for (long f : fs) out.push_back(f * 1e-6);
  return out;
}

double BoundTable::bound_for(const std::string& case_name, double x_ac,
                             double f_threshold) const {
  const CollisionCase& cse = find_case(case_name);
  double fraction = cse.same_coupler ? 1.0 : x_ac;
  if (fraction < 0.0 || fraction > 1.0)
    throw InputError("bound_for: crosstalk fraction must lie in [0, 1]");
  if (fraction == 0.0) return 0.0;

  auto value_at = [&](double f) { return at({case_name, f, f_threshold}); };

  // Linear interpolation over the standard rows, with (0, 0) as the anchor
  // below the lowest one.
  std::vector<double> fracs = config_.g_fractions;
  std::sort(fracs.begin(), fracs.end());
  if (fracs.empty())
    throw InputError("bound_for: table has no configured g fractions");
  double interpolated;
  auto hi = std::lower_bound(fracs.begin(), fracs.end(), fraction - 1e-12);
  if (hi == fracs.begin()) {
    interpolated = fraction / fracs.front() * value_at(fracs.front());
  } else if (hi == fracs.end()) {
    interpolated = value_at(fracs.back());
  } else {
    double f1 = *(hi - 1), f2 = *hi;
    if (std::abs(f2 - fraction) < 1e-9) {
      interpolated = value_at(f2);
    } else {
      double b1 = value_at(f1), b2 = value_at(f2);
      interpolated = b1 + (b2 - b1) * (fraction - f1) / (f2 - f1);
    }
  }

  // When the exact fraction has its own tabulated row (extend_fractions adds
  // rows for the crosstalk values in use), never return less than it: the
  // threshold response at small g is nonlinear and interpolation can
  // under-estimate there.
  BoundQuery exact{case_name, fraction, f_threshold};
  if (has(exact)) return std::max(interpolated, at(exact));
  return interpolated;
}

void BoundTable::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["version"] = 1;
  j["config"] = {{"grid_step_mhz", config_.grid_step_mhz},
                 {"delta_max_ghz", config_.delta_max_ghz},
                 {"g_fractions", config_.g_fractions},
                 {"f_thresholds", config_.f_thresholds},
                 {"rule", to_string(config_.rule)},
                 {"catalog", catalog_fingerprint()}};
  j["config_hash"] = config_.fingerprint();
  j["cells"] = nlohmann::json::array();
  for (const auto& [key, value] : cells_) {
    j["cells"].push_back({{"case", std::get<0>(key)},
                          {"g_fraction", std::get<1>(key) * 1e-6},
                          {"f_threshold", std::get<2>(key) * 1e-8},
                          {"delta_min_ghz", value}});
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw CacheError("cannot write bound cache: " + path.string());
  out << j.dump(1) << "\n";
}

BoundTable BoundTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CacheError("cannot open bound cache: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(std::string("bound cache is corrupt: ") + e.what());
  }
  try {
    BoundTable table;
    const auto& jc = j.at("config");
    table.config_.grid_step_mhz = jc.at("grid_step_mhz").get<double>();
    table.config_.delta_max_ghz = jc.at("delta_max_ghz").get<double>();
    table.config_.g_fractions = jc.at("g_fractions").get<std::vector<double>>();
    table.config_.f_thresholds = jc.at("f_thresholds").get<std::vector<double>>();
    table.config_.rule = scan_rule_from_string(jc.at("rule").get<std::string>());
    if (jc.at("catalog").get<std::string>() != catalog_fingerprint())
      throw CacheError("bound cache was built against a different case catalog");
    if (j.at("config_hash").get<std::string>() != table.config_.fingerprint())
      throw CacheError("bound cache config hash mismatch");
    for (const auto& cell : j.at("cells")) {
      table.cells_[key_of(cell.at("case").get<std::string>(),
                          cell.at("g_fraction").get<double>(),
                          cell.at("f_threshold").get<double>())] =
          cell.at("delta_min_ghz").get<double>();
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(std::string("bound cache is malformed: ") + e.what());
  }
}

std::optional<BoundTable> BoundTable::try_load_matching(const std::filesystem::path& path,
                                                        const BoundTableConfig& config) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    BoundTable table = load(path);
    if (table.config_.fingerprint() != config.fingerprint()) return std::nullopt;
    table.config_.jobs = config.jobs;
    return table;
  } catch (const CacheError&) {
    return std::nullopt;
  }
}

std::vector<std::pair<std::string, std::vector<std::string>>> table_families() {
  return {
      {"single_qubit_gates", {"1qg_vs_1qg_nn", "1qg_vs_1qg_nnn"}},
      {"cz_vs_cz_same_coupler", {"CZ20_vs_CZ02_same_coupler"}},
      {"cz_vs_iswap_same_coupler", {"CZ_vs_iSWAP_same_coupler"}},
      {"iswap_vs_cz_same_coupler", {"iSWAP_vs_CZ_same_coupler"}},
      {"cz_vs_cz_neighbor",
       {"CZ20_vs_CZ20_neighbor", "CZ20_vs_CZ02_neighbor", "CZ02_vs_CZ02_neighbor"}},
      {"cz02_vs_cz20_neighbor", {"CZ02_vs_CZ20_neighbor"}},
      {"cz_vs_iswap_neighbor", {"CZ_vs_iSWAP_neighbor"}},
      {"iswap_vs_cz20_neighbor", {"iSWAP_vs_CZ20_neighbor"}},
      {"iswap_vs_cz02_neighbor", {"iSWAP_vs_CZ02_neighbor"}},
      {"iswap_vs_iswap_neighbor", {"iSWAP_vs_iSWAP_neighbor"}},
  };
}

}  // namespace qcrowd
