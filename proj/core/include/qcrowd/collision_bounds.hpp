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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcrowd/gate_dynamics.hpp"

namespace qcrowd {

/// How the detuning scan turns the oscillating F(Delta) curve into one bound.
///  - first_crossing: smallest grid Delta with F >= threshold. Reproduces the
///    published minimum-detuning tables.
///  - last_crossing: smallest grid Delta safe for every larger grid Delta;
///    conservative, never certifies a detuning whose fidelity dips later.
enum class ScanRule { first_crossing, last_crossing };

std::string to_string(ScanRule rule);
ScanRule scan_rule_from_string(const std::string& s);

struct BoundQuery {
  std::string case_name;
  double g_fraction = 1.0;   // of the case's g_wcs, in [0, 1]
  double f_threshold = 0.999;  // in (0, 1)
};

struct BoundTableConfig {
  double grid_step_mhz = 1.0;
  double delta_max_ghz = 2.5;
  std::vector<double> g_fractions = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> f_thresholds = {0.99, 0.999, 0.9999};
  ScanRule rule = ScanRule::first_crossing;
  int jobs = 1;

  std::string fingerprint() const;  // includes the case-catalog hash
};

/// Scans F(Delta) for one query on the grid. Throws NumericalError when the
/// threshold is never satisfied up to delta_max (raise delta_max).
double minimum_detuning(const BoundQuery& query, double grid_step_mhz = 1.0,
                        double delta_max_ghz = 2.5,
                        ScanRule rule = ScanRule::first_crossing);

/// Cacheable table of minimum detunings over cases x g_fractions x
/// thresholds. Thresholds within a (case, fraction) pair share one F scan.
class BoundTable {
 public:
  BoundTable() = default;

  static BoundTable build(const BoundTableConfig& config);

  /// Adds exact rows at extra coupling fractions (e.g. the crosstalk values a
  /// Monte Carlo run needs) without recomputing existing cells.
  void extend_fractions(const std::vector<double>& fractions);

  /// Bound for a check of this case at crosstalk x_ac. Same-coupler cases pin
  /// the fraction to 1.0 (crosstalk does not apply there). Off-grid fractions
  /// interpolate linearly between bracketing tabulated rows, with (0, 0) as
  /// the anchor below the lowest row; when the exact fraction is tabulated
  /// the tabulated value wins if larger (interpolation may under-estimate at
  /// small g where the threshold response is nonlinear).
  double bound_for(const std::string& case_name, double x_ac, double f_threshold) const;

  /// Exact cell lookup; throws InputError when absent.
  double at(const BoundQuery& query) const;
  bool has(const BoundQuery& query) const;

  const BoundTableConfig& config() const { return config_; }
  std::vector<double> tabulated_fractions() const;

  // JSON cache with an embedded config hash; load rejects mismatches with
  // CacheError.
  void save(const std::filesystem::path& path) const;
  static BoundTable load(const std::filesystem::path& path);
  static std::optional<BoundTable> try_load_matching(const std::filesystem::path& path,
                                                     const BoundTableConfig& config);

 private:
  friend struct BoundTableBuilder;
  using Key = std::tuple<std::string, long, long>;  // case, fraction*1e6, threshold*1e8
  static Key key_of(const std::string& name, double fraction, double threshold);

  BoundTableConfig config_;
  std::map<Key, double> cells_;
};

/// Names of the distinct bound-table families (cases with identical
/// dynamics share one family; 10 families for the 13 cases) with their
/// member cases. Used by the CSV export.
std::vector<std::pair<std::string, std::vector<std::string>>> table_families();

}  // namespace qcrowd
