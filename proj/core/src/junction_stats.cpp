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

#include "qcrowd/junction_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

#include "qcrowd/csv.hpp"
#include "qcrowd/errors.hpp"

namespace qcrowd {

namespace {

struct MeanStdev {
  double mean = 0.0;
  double stdev = 0.0;  // unbiased (n-1)
  int n = 0;
};

MeanStdev mean_stdev(const std::vector<double>& xs) {
  MeanStdev ms;
  ms.n = static_cast<int>(xs.size());
  if (ms.n == 0) return ms;
  double s = 0.0;
  for (double x : xs) s += x;
  ms.mean = s / ms.n;
  if (ms.n >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - ms.mean) * (x - ms.mean);
    ms.stdev = std::sqrt(ss / (ms.n - 1));
  }
  return ms;
}

bool keep(const JunctionSample& s, int day, double open_circuit_ohm) {
  return s.day == day && s.r_n_ohm > 0.0 && s.r_n_ohm < open_circuit_ohm &&
         s.width_um > 0.0;
}

}  // namespace

std::vector<CvPoint> per_area_cv(const WaferMap& wafer, int day, double open_circuit_ohm) {
  std::map<double, std::vector<double>> by_width;
  for (const auto& s : wafer.samples)
    if (keep(s, day, open_circuit_ohm)) by_width[s.width_um].push_back(s.r_n_ohm);
  std::vector<CvPoint> out;
  for (const auto& [w, rs] : by_width) {
    auto ms = mean_stdev(rs);
    if (ms.n < 2 || ms.mean <= 0.0) continue;
    out.push_back({w * w, ms.stdev / ms.mean});
  }
  return out;
}

ResistanceModel fit_resistance_model(const WaferMap& wafer, int day, double open_circuit_ohm) {
  std::map<double, std::vector<double>> by_width;
  for (const auto& s : wafer.samples)
    if (keep(s, day, open_circuit_ohm)) by_width[s.width_um].push_back(1.0 / std::sqrt(s.r_n_ohm));
  if (by_width.size() < 2)
    throw InputError("fit_resistance_model: need samples at >= 2 distinct widths, have " +
                     std::to_string(by_width.size()));

  // Mean R_N^{-1/2} per width, then ordinary least squares y = m d + c.
  std::vector<double> d, y;
  for (const auto& [w, ys] : by_width) {
    d.push_back(w);
    y.push_back(mean_stdev(ys).mean);
  }
  const std::size_t n = d.size();
  double sd = 0, sy = 0, sdd = 0, sdy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sd += d[i];
    sy += y[i];
    sdd += d[i] * d[i];
    sdy += d[i] * y[i];
  }
  double denom = n * sdd - sd * sd;
  if (std::abs(denom) < 1e-30)
    throw InputError("fit_resistance_model: widths are degenerate");
  double m = (n * sdy - sd * sy) / denom;
  double c = (sy - m * sd) / n;
  if (!(m > 0.0))
    throw NumericalError("fit_resistance_model: non-physical fit (slope <= 0)");

  ResistanceModel model;
  model.r_j_ohm_um2 = 1.0 / (m * m);
  model.delta_d_nm = -(c / m) * 1e3;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (m * d[i] + c);
    ss += r * r;
  }
  model.residual_rms = std::sqrt(ss / n) / (sy / n);
  return model;
}

CvModel fit_cv_model(std::span<const CvPoint> points) {
  std::set<double> areas;
  for (const auto& p : points) areas.insert(p.area_um2);
  if (areas.size() < 2)
    throw InputError("fit_cv_model: need >= 2 distinct areas, have " +
                     std::to_string(areas.size()));

  // CV_RN^2 = u + c / A with u = CV_RJ^2 and c = 4 sigma_d^2 (1 + u).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& p : points) {
    double x = 1.0 / p.area_um2;
    double yy = p.cv_rn * p.cv_rn;
    sx += x;
    sy += yy;
    sxx += x * x;
    sxy += x * yy;
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) throw InputError("fit_cv_model: degenerate areas");
  double c = (n * sxy - sx * sy) / denom;
  double u = (sy - c * sx) / n;
  if (u < 0.0) {  // noise can push the intercept slightly negative
    u = 0.0;
    c = sxy / sxx;
  }
  if (c < 0.0) c = 0.0;

  CvModel model;
  model.cv_rj = std::sqrt(u);
  model.sigma_d_nm = std::sqrt(c / (4.0 * (1.0 + u))) * 1e3;
  return model;
}

double cv_model_eval(const CvModel& model, double area_um2) {
  double u = model.cv_rj * model.cv_rj;
  double cv_a = 2.0 * (model.sigma_d_nm * 1e-3) / std::sqrt(area_um2);
  double v = cv_a * cv_a;
  return std::sqrt(u * v + u + v);
}

double transmon_frequency_ghz(double r_n_ohm, double e_c_mhz, double delta_gap_uev) {
  if (!(r_n_ohm > 0.0) || !(e_c_mhz > 0.0) || !(delta_gap_uev > 0.0))
    throw InputError("transmon_frequency: all inputs must be positive");
  const double h = PhysicalConstants::planck_js;
  const double e = PhysicalConstants::electron_charge_c;
  const double phi0 = PhysicalConstants::flux_quantum_wb;
  const double delta_j = delta_gap_uev * 1e-6 * e;  // ueV -> J
  const double ec_j = h * e_c_mhz * 1e6;
  const double hf = std::sqrt(2.0 * delta_j * phi0 * ec_j / (e * r_n_ohm)) - ec_j;
  return hf / h * 1e-9;
}

double frequency_stdev_mhz(double f01_ghz, double cv_rn) {
  if (cv_rn < 0.0) throw InputError("frequency_stdev: cv must be >= 0");
  return 0.5 * cv_rn * f01_ghz * 1e3;
}

ChipWindowResult chip_window_cv(const WaferMap& wafer, int k, double width_um, int day,
                                double open_circuit_ohm) {
  if (k < 1) throw InputError("chip_window_cv: window size must be >= 1");
  std::map<std::pair<int, int>, std::vector<double>> dies;
  for (const auto& s : wafer.samples) {
    if (!keep(s, day, open_circuit_ohm)) continue;
    if (std::abs(s.width_um - width_um) > 1e-9) continue;
    dies[{s.die_row, s.die_col}].push_back(s.r_n_ohm);
  }
  if (dies.empty())
    throw InputError("chip_window_cv: no samples at width " + std::to_string(width_um));

  int rmin = dies.begin()->first.first, rmax = rmin;
  int cmin = dies.begin()->first.second, cmax = cmin;
  for (const auto& [rc, _] : dies) {
    rmin = std::min(rmin, rc.first);
    rmax = std::max(rmax, rc.first);
    cmin = std::min(cmin, rc.second);
    cmax = std::max(cmax, rc.second);
  }

  ChipWindowResult result;
  for (int r0 = rmin; r0 + k - 1 <= rmax; ++r0) {
    for (int c0 = cmin; c0 + k - 1 <= cmax; ++c0) {
      std::vector<double> pooled;
      bool complete = true;
      for (int dr = 0; dr < k && complete; ++dr) {
        for (int dc = 0; dc < k; ++dc) {
          auto it = dies.find({r0 + dr, c0 + dc});
          if (it == dies.end()) {
            complete = false;
            break;
          }
          pooled.insert(pooled.end(), it->second.begin(), it->second.end());
        }
      }
      if (!complete || pooled.size() < 2) continue;
      auto ms = mean_stdev(pooled);
      result.windows.push_back({r0, c0, ms.stdev / ms.mean, ms.n});
    }
  }
  if (result.windows.empty())
    throw InputError("chip_window_cv: no fully populated " + std::to_string(k) + "x" +
                     std::to_string(k) + " window fits this wafer");

  std::vector<double> cvs;
  for (const auto& w : result.windows) cvs.push_back(w.cv_rn);
  auto ms = mean_stdev(cvs);
  result.mean_cv = ms.mean;
  result.stdev_cv = ms.stdev;
  return result;
}

AgingReport aging_deltas(const WaferMap& wafer, double open_circuit_ohm) {
  AgingReport report;
  std::set<int> day_set;
  for (const auto& s : wafer.samples) day_set.insert(s.day);
  std::vector<int> days(day_set.begin(), day_set.end());
  if (days.size() < 2) {
    report.unmatched_samples = static_cast<int>(wafer.samples.size());
    return report;
  }

  using Key = std::tuple<int, int, double>;  // die_row, die_col, width
  std::map<int, std::map<Key, double>> by_day;
  std::map<int, std::map<double, std::vector<double>>> day_area_rs;
  for (const auto& s : wafer.samples) {
    if (!(s.r_n_ohm > 0.0) || s.r_n_ohm >= open_circuit_ohm || !(s.width_um > 0.0)) {
      ++report.unmatched_samples;
      continue;
    }
    by_day[s.day][{s.die_row, s.die_col, s.width_um}] = s.r_n_ohm;
    day_area_rs[s.day][s.width_um * s.width_um].push_back(s.r_n_ohm);
  }

  for (std::size_t di = 0; di + 1 < days.size(); ++di) {
    int d1 = days[di], d2 = days[di + 1];
    const auto& m1 = by_day[d1];
    const auto& m2 = by_day[d2];
    std::map<double, std::vector<double>> per_area_changes;
    for (const auto& [key, r1] : m1) {
      auto it = m2.find(key);
      if (it == m2.end()) {
        ++report.unmatched_samples;
        continue;
      }
      double w = std::get<2>(key);
      per_area_changes[w * w].push_back((it->second - r1) / r1);
    }
    for (const auto& [key, _] : m2)
      if (m1.find(key) == m1.end()) ++report.unmatched_samples;

    for (const auto& [area, changes] : per_area_changes) {
      AgingEntry entry;
      entry.area_um2 = area;
      entry.day_from = d1;
      entry.day_to = d2;
      entry.matched_pairs = static_cast<int>(changes.size());
      entry.mean_rel_change = mean_stdev(changes).mean;
      for (int d : days) {
        auto it = day_area_rs[d].find(area);
        if (it != day_area_rs[d].end() && it->second.size() >= 2) {
          auto ms = mean_stdev(it->second);
          entry.cv_per_timepoint[d] = ms.stdev / ms.mean;
        }
      }
      report.entries.push_back(std::move(entry));
    }
  }
  std::sort(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.area_um2, a.day_from) < std::tie(b.area_um2, b.day_from);
  });
  return report;
}

WaferMap load_wafer_csv(const std::filesystem::path& path) {
  auto table = csv::read_file(path);
  int c_row = table.column("die_row");
  int c_col = table.column("die_col");
  int c_w = table.column("width_um");
  int c_r = table.column("r_n_ohm");
  int c_day = table.column("day");
  if (c_row < 0 || c_col < 0 || c_w < 0 || c_r < 0 || c_day < 0)
    throw InputError("wafer csv must have columns die_row,die_col,width_um,r_n_ohm,day: " +
                     path.string());
  WaferMap wafer;
  wafer.label = path.stem().string();
  auto meta = table.metadata();
  if (auto it = meta.find("die_pitch_mm"); it != meta.end())
    wafer.die_pitch_mm = std::stod(it->second);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    JunctionSample s;
    s.die_row = static_cast<int>(table.number(i, c_row));
    s.die_col = static_cast<int>(table.number(i, c_col));
    s.width_um = table.number(i, c_w);
    s.r_n_ohm = table.number(i, c_r);
    s.day = static_cast<int>(table.number(i, c_day));
    if (!(s.width_um > 0.0))
      throw InputError("wafer csv: non-positive width at data row " + std::to_string(i + 1));
    if (!(s.r_n_ohm > 0.0))
      throw InputError("wafer csv: non-positive resistance at data row " + std::to_string(i + 1));
    wafer.samples.push_back(s);
  }
  return wafer;
}

}  // namespace qcrowd
