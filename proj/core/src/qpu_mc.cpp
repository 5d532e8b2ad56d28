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

#include "qcrowd/qpu_mc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "qcrowd/errors.hpp"
#include "qcrowd/lattice_allocation.hpp"
#include "qcrowd/parallel.hpp"

namespace qcrowd {

namespace {

struct CouplerGeometry {
  int qubit_a = 0;
  int qubit_b = 0;
  int excited = 0;          // qubit visiting |2> for the enabled low CZ
  double alpha_exc_ghz = 0; // its anharmonicity
};

std::vector<CouplerGeometry> coupler_geometry(const LatticeLayout& layout) {
  std::vector<CouplerGeometry> geo(layout.couplers.size());
  for (std::size_t i = 0; i < layout.couplers.size(); ++i) {
    const auto& cp = layout.couplers[i];
    CouplerGeometry g;
    g.qubit_a = cp.qubit_a;
    g.qubit_b = cp.qubit_b;
    bool cz20 = cp.enabled_gates.count(GateKind::CZ20) > 0;
    bool cz02 = cp.enabled_gates.count(GateKind::CZ02) > 0;
    if (cz20 == cz02)
      throw InputError("qpu mc: coupler " + std::to_string(cp.id) +
                       " must enable exactly one CZ flavor");
    g.excited = cz20 ? cp.qubit_a : cp.qubit_b;
    g.alpha_exc_ghz = layout.qubits[g.excited].alpha_mhz * 1e-3;
    geo[i] = g;
  }
  return geo;
}

double gate_value(const CollisionCheck::Ref ref, int index,
                  std::span<const double> f, std::span<const CouplerGeometry> geo) {
  switch (ref) {
    case CollisionCheck::Ref::qubit_f01:
      return f[index];
    case CollisionCheck::Ref::coupler_iswap:
      return std::abs(f[geo[index].qubit_a] - f[geo[index].qubit_b]);
    case CollisionCheck::Ref::coupler_low_cz: {
      const auto& g = geo[index];
      int other = g.excited == g.qubit_a ? g.qubit_b : g.qubit_a;
      return std::abs(f[other] - f[g.excited] - g.alpha_exc_ghz);
    }
  }
  return 0.0;
}

}  // namespace

NeighborPolicy neighbor_policy_from_string(const std::string& s) {
  if (s == "nearest_only") return NeighborPolicy::nearest_only;
  if (s == "nearest_and_next") return NeighborPolicy::nearest_and_next;
  throw InputError("unknown neighbor policy '" + s + "'");
}

std::string to_string(NeighborPolicy p) {
  return p == NeighborPolicy::nearest_only ? "nearest_only" : "nearest_and_next";
}

QpuSweepAxis qpu_axis_from_string(const std::string& s) {
  if (s == "n_qubits") return QpuSweepAxis::n_qubits;
  if (s == "sigma_f") return QpuSweepAxis::sigma_f;
  if (s == "x_ac") return QpuSweepAxis::x_ac;
  if (s == "f_threshold") return QpuSweepAxis::f_threshold;
  throw InputError("unknown qpu sweep axis '" + s + "'");
}

std::string to_string(QpuSweepAxis axis) {
  switch (axis) {
    case QpuSweepAxis::n_qubits: return "n_qubits";
    case QpuSweepAxis::sigma_f: return "sigma_f";
    case QpuSweepAxis::x_ac: return "x_ac";
    case QpuSweepAxis::f_threshold: return "f_threshold";
  }
  return "?";
}

std::vector<CollisionCheck> enumerate_checks(const LatticeLayout& layout,
                                             NeighborPolicy policy,
                                             bool include_cross_gate_checks) {
  auto violations = validate_layout(layout);
  if (!violations.empty())
    throw InputError("enumerate_checks: layout invalid: " + violations.front());

  std::vector<CollisionCheck> checks;
  using Ref = CollisionCheck::Ref;

  // (i) single-qubit pairs
  for (int r = 0; r < layout.rows; ++r) {
    for (int c = 0; c < layout.cols; ++c) {
      int q = layout.qubit_index(r, c);
      if (c + 1 < layout.cols)
        checks.push_back({Ref::qubit_f01, q, Ref::qubit_f01, layout.qubit_index(r, c + 1),
                          "1qg_vs_1qg_nn", "", false});
      if (r + 1 < layout.rows)
        checks.push_back({Ref::qubit_f01, q, Ref::qubit_f01, layout.qubit_index(r + 1, c),
                          "1qg_vs_1qg_nn", "", false});
      if (policy == NeighborPolicy::nearest_and_next && r + 1 < layout.rows) {
        if (c + 1 < layout.cols)
          checks.push_back({Ref::qubit_f01, q, Ref::qubit_f01,
                            layout.qubit_index(r + 1, c + 1), "1qg_vs_1qg_nnn", "", true});
        if (c - 1 >= 0)
          checks.push_back({Ref::qubit_f01, q, Ref::qubit_f01,
                            layout.qubit_index(r + 1, c - 1), "1qg_vs_1qg_nnn", "", true});
      }
    }
  }

  // (ii) same-coupler: the enabled iSWAP against the enabled low CZ. Both
  // drives live on one line, so crosstalk does not scale them; both desired
  // orientations are real constraints and the larger bound applies.
  for (std::size_t ci = 0; ci < layout.couplers.size(); ++ci) {
    checks.push_back({Ref::coupler_iswap, static_cast<int>(ci), Ref::coupler_low_cz,
                      static_cast<int>(ci), "iSWAP_vs_CZ_same_coupler",
                      "CZ_vs_iSWAP_same_coupler", false});
  }

  // (iii) couplers sharing a qubit
  auto geo = coupler_geometry(layout);
  std::vector<std::vector<int>> incident(layout.qubits.size());
  for (std::size_t ci = 0; ci < layout.couplers.size(); ++ci) {
    incident[layout.couplers[ci].qubit_a].push_back(static_cast<int>(ci));
    incident[layout.couplers[ci].qubit_b].push_back(static_cast<int>(ci));
  }
  for (std::size_t v = 0; v < incident.size(); ++v) {
    const auto& inc = incident[v];
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        int c1 = inc[i], c2 = inc[j];
        checks.push_back({Ref::coupler_iswap, c1, Ref::coupler_iswap, c2,
                          "iSWAP_vs_iSWAP_neighbor", "", false});
        bool exc1_shared = geo[c1].excited == static_cast<int>(v);
        bool exc2_shared = geo[c2].excited == static_cast<int>(v);
        std::string czcz;
        if (exc1_shared && exc2_shared)
          czcz = "CZ02_vs_CZ20_neighbor";  // both pump the shared qubit's |2>
        else if (exc1_shared || exc2_shared)
          czcz = "CZ20_vs_CZ20_neighbor";
        else
          czcz = "CZ20_vs_CZ02_neighbor";
        checks.push_back({Ref::coupler_low_cz, c1, Ref::coupler_low_cz, c2, czcz, "", false});
        if (include_cross_gate_checks) {
          auto iswap_case = [&](bool colliding_cz_pumps_shared) {
            return colliding_cz_pumps_shared ? std::string("iSWAP_vs_CZ20_neighbor")
                                             : std::string("iSWAP_vs_CZ02_neighbor");
          };
          checks.push_back({Ref::coupler_iswap, c1, Ref::coupler_low_cz, c2,
                            iswap_case(exc2_shared), "CZ_vs_iSWAP_neighbor", false});
          checks.push_back({Ref::coupler_low_cz, c1, Ref::coupler_iswap, c2,
                            iswap_case(exc1_shared), "CZ_vs_iSWAP_neighbor", false});
        }
      }
    }
  }
  return checks;
}

std::vector<double> sample_frequencies(const LatticeLayout& layout, double sigma_f_mhz,
                                       Rng& rng) {
  if (sigma_f_mhz < 0.0) throw InputError("sample_frequencies: sigma must be >= 0");
  std::vector<double> f(layout.qubits.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = layout.qubits[i].f01_ghz + sigma_f_mhz * 1e-3 * rng.gaussian();
  return f;
}

std::vector<double> resolve_bounds(std::span<const CollisionCheck> checks, BoundTable& table,
                                   double x_ac, double f_threshold,
                                   double next_nearest_xac_scale) {
  std::set<double> fractions;
  for (const auto& ch : checks) {
    double x = ch.next_nearest ? x_ac * next_nearest_xac_scale : x_ac;
    if (x > 0.0 && x <= 1.0) fractions.insert(x);
  }
  table.extend_fractions({fractions.begin(), fractions.end()});

  std::vector<double> bounds;
  bounds.reserve(checks.size());
  for (const auto& ch : checks) {
    double x = ch.next_nearest ? x_ac * next_nearest_xac_scale : x_ac;
    double b = table.bound_for(ch.case_name, x, f_threshold);
    if (!ch.alt_case_name.empty())
      b = std::max(b, table.bound_for(ch.alt_case_name, x, f_threshold));
    bounds.push_back(b);
  }
  return bounds;
}

int count_collisions(std::span<const double> realized_f01, const LatticeLayout& layout,
                     std::span<const CollisionCheck> checks, std::span<const double> bounds,
                     std::map<std::string, long>* per_type) {
  if (checks.size() != bounds.size())
    throw InputError("count_collisions: bounds/checks size mismatch");
  auto geo = coupler_geometry(layout);
  int n = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& ch = checks[i];
    double w1 = gate_value(ch.ref1, ch.index1, realized_f01, geo);
    double w2 = gate_value(ch.ref2, ch.index2, realized_f01, geo);
    if (std::abs(w1 - w2) < bounds[i]) {
      ++n;
      if (per_type) ++(*per_type)[ch.case_name];
    }
  }
  return n;
}

CollisionReport run_collision_mc(const QpuMcConfig& config, BoundTable& table) {
  if (config.trials < 1) throw InputError("qpu mc: trials must be >= 1");
  if (config.sigma_f_mhz < 0.0) throw InputError("qpu mc: sigma_f must be >= 0");
  if (config.x_ac < 0.0 || config.x_ac > 1.0)
    throw InputError("qpu mc: x_ac must lie in [0, 1]");
  if (!(config.f_threshold > 0.0 && config.f_threshold < 1.0))
    throw InputError("qpu mc: f_threshold must lie in (0, 1)");

  auto checks = enumerate_checks(config.layout, config.neighbor_policy,
                                 config.include_cross_gate_checks);
  auto bounds = resolve_bounds(checks, table, config.x_ac, config.f_threshold,
                               config.next_nearest_xac_scale);

  CollisionReport report;
  report.per_trial.resize(config.trials);
  std::vector<std::map<std::string, long>> per_type(config.trials);
  parallel_for(config.trials, config.jobs, [&](std::size_t trial) {
    Rng rng(derive_stream(config.seed, "qpu_mc_trial", trial));
    auto f = sample_frequencies(config.layout, config.sigma_f_mhz, rng);
    report.per_trial[trial] =
        count_collisions(f, config.layout, checks, bounds, &per_type[trial]);
  });
  // Ordered reduction keeps the report identical however trials were scheduled.
  for (const auto& m : per_type)
    for (const auto& [name, count] : m) report.per_type[name] += count;

  double s = 0.0;
  int zero = 0;
  for (int c : report.per_trial) {
    s += c;
    if (c == 0) ++zero;
  }
  report.mean = s / config.trials;
  double ss = 0.0;
  for (int c : report.per_trial) ss += (c - report.mean) * (c - report.mean);
  report.stdev = config.trials > 1 ? std::sqrt(ss / (config.trials - 1)) : 0.0;
  report.yield = static_cast<double>(zero) / config.trials;
  return report;
}

std::vector<TransmonSpec> unit_cell_of(const LatticeLayout& layout) {
  std::map<std::tuple<int, long, long>, TransmonSpec> distinct;
  for (const auto& q : layout.qubits) {
    auto key = std::make_tuple(q.group == Group::A ? 0 : 1,
                               std::lround(q.f01_ghz * 1e9), std::lround(q.alpha_mhz * 1e6));
    distinct.emplace(key, q);
  }
  if (distinct.size() != 8)
    throw InputError("unit_cell_of: layout repeats " + std::to_string(distinct.size()) +
                     " distinct specs, expected 8");
  std::vector<TransmonSpec> cell;
  for (const auto& [_, q] : distinct) cell.push_back(q);
  return cell;
}

std::vector<QpuSweepPoint> run_study(const QpuMcConfig& config, QpuSweepAxis axis,
                                     std::span<const double> values, BoundTable& table) {
  if (values.empty()) throw InputError("qpu study: values must be nonempty");
  std::vector<TransmonSpec> cell;
  if (axis == QpuSweepAxis::n_qubits) cell = unit_cell_of(config.layout);

  std::vector<QpuSweepPoint> points;
  for (std::size_t i = 0; i < values.size(); ++i) {
    QpuMcConfig c = config;
    switch (axis) {
      case QpuSweepAxis::n_qubits: {
        int n = static_cast<int>(values[i]);
        int rows = std::max(2, static_cast<int>(std::floor(std::sqrt(double(n)))));
        int cols = std::max(2, (n + rows - 1) / rows);
        c.layout = tile_lattice(rows, cols, cell);
        break;
      }
      case QpuSweepAxis::sigma_f: c.sigma_f_mhz = values[i]; break;
      case QpuSweepAxis::x_ac: c.x_ac = values[i]; break;
      case QpuSweepAxis::f_threshold: c.f_threshold = values[i]; break;
    }
    c.seed = derive_stream(config.seed, "qpu_mc_sweep", i);
    points.push_back({values[i], run_collision_mc(c, table)});
  }
  return points;
}

}  // namespace qcrowd
