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

// qcrowd: frequency-crowding toolkit for fixed-frequency transmon lattices.
// Subcommands: junction-fit, tls-fit, tls-sim, tls-mc, bounds, allocate,
// qpu-mc, validate. See SCHEMAS.md for every file format.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcrowd/collision_bounds.hpp"
#include "qcrowd/csv.hpp"
#include "qcrowd/device_model.hpp"
#include "qcrowd/errors.hpp"
#include "qcrowd/gate_dynamics.hpp"
#include "qcrowd/junction_stats.hpp"
#include "qcrowd/lattice_allocation.hpp"
#include "qcrowd/manifest.hpp"
#include "qcrowd/qpu_mc.hpp"
#include "qcrowd/svg.hpp"
#include "qcrowd/tls_analysis.hpp"
#include "qcrowd/tls_collision_mc.hpp"
#include "qcrowd/tomlite.hpp"

namespace fs = std::filesystem;
using namespace qcrowd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCache = 4;

struct GlobalOptions {
  std::uint64_t seed = 1;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  fs::path out_dir = ".";
  std::string format = "csv";
};

/// Uniform view over a TOML or JSON config file, keyed "section.key".
class ConfigView {
 public:
  static ConfigView load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    ConfigView view;
    view.raw_ = text;
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (path.extension() == ".json" || (first != std::string::npos && text[first] == '{')) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config json: ") + e.what());
      }
      view.flatten_json(j, "");
    } else {
      view.doc_ = tomlite::Document::parse(text);
    }
    return view;
  }

  double get_double(const std::string& key, double fallback) const {
    if (auto it = json_values_.find(key); it != json_values_.end())
      return it->second.get<double>();
    return doc_.get_double(key, fallback);
  }
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
    if (auto it = json_values_.find(key); it != json_values_.end())
      return it->second.get<std::int64_t>();
    return doc_.get_int(key, fallback);
  }
  bool get_bool(const std::string& key, bool fallback) const {
    if (auto it = json_values_.find(key); it != json_values_.end())
      return it->second.get<bool>();
    return doc_.get_bool(key, fallback);
  }
  std::string get_string(const std::string& key, const std::string& fallback) const {
    if (auto it = json_values_.find(key); it != json_values_.end())
      return it->second.get<std::string>();
    return doc_.get_string(key, fallback);
  }
  std::optional<std::vector<double>> get_double_array(const std::string& key) const {
    if (auto it = json_values_.find(key); it != json_values_.end()) {
      std::vector<double> out;
      for (const auto& v : it->second) out.push_back(v.get<double>());
      return out;
    }
    return doc_.get_double_array(key);
  }
  const std::string& raw() const { return raw_; }

 private:
  void flatten_json(const nlohmann::json& j, const std::string& prefix) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (it->is_object())
        flatten_json(*it, key);
      else
        json_values_[key] = *it;
    }
  }
  tomlite::Document doc_;
  std::map<std::string, nlohmann::json> json_values_;
  std::string raw_;
};

fs::path cache_dir(const GlobalOptions& global) {
  if (const char* env = std::getenv("QCROWD_CACHE_DIR"); env && *env) return env;
  return global.out_dir / "cache";
}

RunManifest start_manifest(const std::string& command, const GlobalOptions& global,
                           const std::string& config_text) {
  RunManifest m;
  m.command = command;
  m.seed = global.seed;
  m.config_hash = fnv64_hex(config_text);
  m.stamp_start();
  return m;
}

void finish_manifest(RunManifest& m, const GlobalOptions& global) {
  m.stamp_finish();
  m.write(global.out_dir / (m.command + "_manifest.json"));
}

// ---------------------------------------------------------------------------
// junction-fit

int cmd_junction_fit(const GlobalOptions& global, const fs::path& csv_path, int day,
                     int window_k, double width_filter, double open_circuit_ohm,
                     double ec_mhz, double delta_gap_uev) {
  auto manifest = start_manifest("junction_fit", global,
                                 csv_path.string() + "|" + std::to_string(day));
  manifest.add_input(csv_path);

  WaferMap wafer = load_wafer_csv(csv_path);
  if (wafer.samples.empty()) throw InputError("wafer csv has no samples");

  auto outliers = [&] {
    int n = 0;
    for (const auto& s : wafer.samples)
      if (s.r_n_ohm >= open_circuit_ohm) ++n;
    return n;
  }();

  auto model = fit_resistance_model(wafer, day, open_circuit_ohm);
  auto cv_points = per_area_cv(wafer, day, open_circuit_ohm);
  if (cv_points.empty()) throw InputError("no per-area CV points after filtering");
  auto cv_model = fit_cv_model(cv_points);

  // Per-width means feed the frequency pipeline.
  std::map<double, std::pair<double, int>> rn_by_width;
  for (const auto& s : wafer.samples) {
    if (s.day != day || s.r_n_ohm <= 0 || s.r_n_ohm >= open_circuit_ohm) continue;
    auto& [sum, n] = rn_by_width[s.width_um];
    sum += s.r_n_ohm;
    ++n;
  }

  nlohmann::json report;
  report["wafer"] = wafer.label;
  report["resistance_model"] = {{"r_j_ohm_um2", model.r_j_ohm_um2},
                                {"delta_d_nm", model.delta_d_nm},
                                {"residual_rms", model.residual_rms}};
  report["cv_model"] = {{"cv_rj", cv_model.cv_rj}, {"sigma_d_nm", cv_model.sigma_d_nm}};
  report["excluded_open_circuits"] = outliers;

  {
    csv::Writer w(global.out_dir / "cv_vs_area.csv");
    w.row({"area_um2", "cv_rn_measured", "cv_rn_model"});
    for (const auto& p : cv_points)
      w.row_numeric({p.area_um2, p.cv_rn, cv_model_eval(cv_model, p.area_um2)});
  }
  {
    csv::Writer w(global.out_dir / "sigma_f01_vs_f01.csv");
    w.row({"width_um", "area_um2", "r_n_ohm_mean", "f01_ghz", "sigma_f01_mhz"});
    for (const auto& [width, acc] : rn_by_width) {
      double rn = acc.first / acc.second;
      double f01 = transmon_frequency_ghz(rn, ec_mhz, delta_gap_uev);
      double cv = cv_model_eval(cv_model, width * width);
      w.row_numeric({width, width * width, rn, f01, frequency_stdev_mhz(f01, cv)});
    }
  }

  // Plots mirroring the wafer-report figures.
  {
    svg::Plot plot;
    plot.title = "R_N^{-1/2} vs designed width";
    plot.xlabel = "width (um)";
    plot.ylabel = "R_N^-1/2 (Ohm^-1/2)";
    svg::Series pts{{}, {}, "per-width mean", "#d62728", true};
    svg::Series fit{{}, {}, "fit", "#1f77b4", false};
    for (const auto& [width, acc] : rn_by_width) {
      pts.x.push_back(width);
      pts.y.push_back(1.0 / std::sqrt(acc.first / acc.second));
    }
    for (double d = pts.x.front(); d <= pts.x.back() + 1e-12;
         d += (pts.x.back() - pts.x.front()) / 64.0) {
      fit.x.push_back(d);
      fit.y.push_back((d - model.delta_d_nm * 1e-3) / std::sqrt(model.r_j_ohm_um2));
    }
    plot.add(fit);
    plot.add(pts);
    plot.write(global.out_dir / "rn_invsqrt_vs_width.svg");
  }
  {
    svg::Plot plot;
    plot.title = "CV of R_N vs junction area";
    plot.xlabel = "area (um^2)";
    plot.ylabel = "CV_RN";
    svg::Series pts{{}, {}, "measured", "#d62728", true};
    svg::Series fit{{}, {}, "model", "#1f77b4", false};
    for (const auto& p : cv_points) {
      pts.x.push_back(p.area_um2);
      pts.y.push_back(p.cv_rn);
    }
    for (double a = pts.x.front(); a <= pts.x.back() + 1e-12;
         a += (pts.x.back() - pts.x.front()) / 64.0) {
      fit.x.push_back(a);
      fit.y.push_back(cv_model_eval(cv_model, a));
    }
    plot.add(fit);
    plot.add(pts);
    plot.write(global.out_dir / "cv_vs_area.svg");
  }
  {
    svg::Plot plot;
    plot.title = "Inferred qubit-frequency spread";
    plot.xlabel = "f01 (GHz)";
    plot.ylabel = "sigma_f01 (MHz)";
    svg::Series pts{{}, {}, "per width", "#2ca02c", true};
    for (const auto& [width, acc] : rn_by_width) {
      double rn = acc.first / acc.second;
      double f01 = transmon_frequency_ghz(rn, ec_mhz, delta_gap_uev);
      pts.x.push_back(f01);
      pts.y.push_back(frequency_stdev_mhz(f01, cv_model_eval(cv_model, width * width)));
    }
    plot.add(pts);
    plot.write(global.out_dir / "sigma_f01_vs_f01.svg");
  }

  // Chip-window CV histogram for the requested (or smallest) width.
  double win_width = width_filter;
  if (win_width <= 0.0) win_width = rn_by_width.begin()->first;
  try {
    auto windows = chip_window_cv(wafer, window_k, win_width, day, open_circuit_ohm);
    report["chip_windows"] = {{"k", window_k},
                              {"width_um", win_width},
                              {"count", windows.windows.size()},
                              {"mean_cv", windows.mean_cv},
                              {"stdev_cv", windows.stdev_cv}};
    svg::Histogram hist;
    hist.title = "Chip-window CV_RN (" + std::to_string(window_k) + "x" +
                 std::to_string(window_k) + " dies)";
    hist.xlabel = "CV_RN";
    for (const auto& w : windows.windows) hist.values.push_back(w.cv_rn);
    hist.write(global.out_dir / "cv_windows_hist.svg");
  } catch (const InputError&) {
    report["chip_windows"] = nullptr;  // wafer too small for the window size
  }

  auto aging = aging_deltas(wafer, open_circuit_ohm);
  if (!aging.entries.empty()) {
    nlohmann::json ja = nlohmann::json::array();
    for (const auto& e : aging.entries) {
      ja.push_back({{"area_um2", e.area_um2},
                    {"day_from", e.day_from},
                    {"day_to", e.day_to},
                    {"mean_rel_change", e.mean_rel_change},
                    {"matched_pairs", e.matched_pairs}});
    }
    report["aging"] = ja;
    report["aging_unmatched_samples"] = aging.unmatched_samples;
  }

  std::ofstream(global.out_dir / "junction_fit.json") << report.dump(2) << "\n";
  std::cout << "R_J = " << model.r_j_ohm_um2 << " Ohm um^2, delta_d = " << model.delta_d_nm
            << " nm, CV_RJ = " << cv_model.cv_rj << ", sigma_d = " << cv_model.sigma_d_nm
            << " nm\n";
  finish_manifest(manifest, global);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tls-fit / tls-sim

RateTrace load_rate_trace(const fs::path& path) {
  auto table = csv::read_file(path);
  int c_f = table.column("f_ghz");
  if (c_f < 0) throw InputError("tls csv needs an f_ghz column: " + path.string());
  RateTrace trace;
  if (int c_g = table.column("gamma1_per_us"); c_g >= 0) {
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      trace.f_ghz.push_back(table.number(i, c_f));
      trace.gamma1_per_us.push_back(table.number(i, c_g));
    }
    return trace;
  }
  int c_p1 = table.column("p1"), c_ps = table.column("ps"), c_p0 = table.column("p0");
  if (c_p1 < 0 || c_ps < 0 || c_p0 < 0)
    throw InputError("tls csv needs gamma1_per_us or p1,ps,p0 columns: " + path.string());
  auto meta = table.metadata();
  auto it = meta.find("ts_us");
  if (it == meta.end())
    throw InputError("3-point tls csv needs a '# ts_us=...' metadata line");
  SpectroscopyTrace spec;
  spec.swap_time_us = std::stod(it->second);
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    spec.points.push_back({table.number(i, c_f), table.number(i, c_p1),
                           table.number(i, c_ps), table.number(i, c_p0)});
  return rate_trace_from_spectroscopy(spec);
}

int cmd_tls_fit(const GlobalOptions& global, const fs::path& csv_path,
                double min_prominence, double census_threshold_khz) {
  auto manifest = start_manifest("tls_fit", global, csv_path.string());
  manifest.add_input(csv_path);

  auto trace = load_rate_trace(csv_path);
  auto records = fit_tls_peaks(trace, min_prominence);

  nlohmann::json jr = nlohmann::json::array();
  for (const auto& r : records) {
    jr.push_back({{"f_d_ghz", r.f_d_ghz},
                  {"g_d_khz", r.g_d_khz},
                  {"gamma_per_us", r.gamma_per_us},
                  {"gamma_1q_per_us", r.gamma_1q_per_us},
                  {"fit_residual", r.fit_residual},
                  {"converged", r.converged}});
  }
  std::ofstream(global.out_dir / "tls_records.json")
      << nlohmann::json({{"records", jr}}).dump(2) << "\n";

  auto census = tls_census(records, census_threshold_khz, trace.f_ghz.front(),
                           trace.f_ghz.back());
  {
    csv::Writer w(global.out_dir / "census.csv");
    w.comment("g_threshold_khz=" + csv::format_double(census_threshold_khz));
    w.row({"f_ghz", "cumulative_count"});
    for (std::size_t i = 0; i < census.f_ghz.size(); ++i)
      w.row_numeric({census.f_ghz[i], static_cast<double>(census.cumulative[i])});
  }
  {
    svg::Plot plot;
    plot.title = "Relaxation-rate trace and fitted peaks";
    plot.xlabel = "f (GHz)";
    plot.ylabel = "Gamma1 (1/us)";
    plot.add({trace.f_ghz, trace.gamma1_per_us, "trace", "#1f77b4", false});
    svg::Series marks{{}, {}, "fits", "#d62728", true};
    for (const auto& r : records) {
      marks.x.push_back(r.f_d_ghz);
      TlsRecord peak = r;
      marks.y.push_back(lorentzian_rate_per_us(0.0, peak));
    }
    if (!marks.x.empty()) plot.add(marks);
    plot.write(global.out_dir / "gamma1_trace.svg");
  }
  {
    svg::Plot plot;
    plot.title = "Cumulative detected TLSs";
    plot.xlabel = "f (GHz)";
    plot.ylabel = "count";
    svg::Series s{census.f_ghz, {}, "census", "#2ca02c", false};
    for (int c : census.cumulative) s.y.push_back(c);
    plot.add(s);
    plot.write(global.out_dir / "census.svg");
  }

  std::cout << "fitted " << records.size() << " TLS peak(s); census above "
            << census_threshold_khz << " kHz: " << census.cumulative.back() << "\n";
  finish_manifest(manifest, global);
  return kExitOk;
}

int cmd_tls_sim(const GlobalOptions& global, double f_lo, double f_hi, double step_mhz,
                double gamma1q, const std::vector<std::string>& tls_specs) {
  std::ostringstream cfg;
  cfg << f_lo << "|" << f_hi << "|" << step_mhz << "|" << gamma1q;
  for (const auto& s : tls_specs) cfg << "|" << s;
  auto manifest = start_manifest("tls_sim", global, cfg.str());

  std::vector<TlsRecord> tls_list;
  for (const auto& spec : tls_specs) {
    // f_d_ghz:g_d_khz:gamma_per_us
    TlsRecord r;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &r.f_d_ghz, &r.g_d_khz,
                    &r.gamma_per_us) != 3)
      throw InputError("bad --tls spec '" + spec + "', want f_ghz:g_khz:gamma_per_us");
    tls_list.push_back(r);
  }
  if (!(f_hi > f_lo) || !(step_mhz > 0)) throw InputError("bad frequency grid");
  std::vector<double> grid;
  for (double f = f_lo; f <= f_hi + 1e-12; f += step_mhz * 1e-3) grid.push_back(f);
  auto trace = simulate_spectrum(tls_list, gamma1q, grid);

  {
    csv::Writer w(global.out_dir / "spectrum.csv");
    w.row({"f_ghz", "gamma1_per_us"});
    for (std::size_t i = 0; i < trace.f_ghz.size(); ++i)
      w.row_numeric({trace.f_ghz[i], trace.gamma1_per_us[i]});
  }
  svg::Plot plot;
  plot.title = "Simulated TLS spectrum";
  plot.xlabel = "f (GHz)";
  plot.ylabel = "Gamma1 (1/us)";
  plot.add({trace.f_ghz, trace.gamma1_per_us, "Gamma1", "#1f77b4", false});
  plot.write(global.out_dir / "spectrum.svg");

  std::cout << "simulated " << grid.size() << " points with " << tls_list.size()
            << " TLS(s)\n";
  finish_manifest(manifest, global);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tls-mc

int cmd_tls_mc(const GlobalOptions& global, const fs::path& config_path) {
  auto view = ConfigView::load(config_path);
  auto manifest = start_manifest("tls_mc", global, view.raw());
  manifest.add_input(config_path);

  TlsMcConfig config;
  config.n_qubits = static_cast<int>(view.get_int("tls_mc.n_qubits", 100));
  config.rho_d_per_ghz_um2 = view.get_double("tls_mc.rho_d", 1.5);
  config.a_j_um2 = view.get_double("tls_mc.a_j_um2", 0.109);
  config.bound_mhz = view.get_double("tls_mc.b_mhz", 40.0);
  config.span_ghz = view.get_double("tls_mc.span_ghz", 1.0);
  config.trials = static_cast<int>(view.get_int("tls_mc.trials", 10000));
  config.seed = static_cast<std::uint64_t>(view.get_int("tls_mc.seed", global.seed));
  config.jobs = global.jobs;
  std::string mode = view.get_string("tls_mc.mode", "poisson");
  if (mode == "poisson")
    config.mode = TlsCountMode::poisson;
  else if (mode == "fixed")
    config.mode = TlsCountMode::fixed;
  else
    throw InputError("tls_mc.mode must be poisson or fixed");
  if (auto alloc = view.get_double_array("tls_mc.allocation_ghz"))
    config.qubit_freqs_ghz = *alloc;

  std::string axis_name = view.get_string("tls_mc.sweep_axis", "");
  std::vector<TlsSweepPoint> points;
  if (axis_name.empty()) {
    points.push_back({0.0, simulate_dead_qubits(config)});
  } else {
    auto values = view.get_double_array("tls_mc.sweep_values");
    if (!values) throw InputError("tls_mc.sweep_values required with sweep_axis");
    points = sweep_dead_qubits(config, tls_axis_from_string(axis_name), *values);
  }

  std::string stem = axis_name.empty() ? "dead_qubits" : "dead_qubits_vs_" + axis_name;
  {
    csv::Writer w(global.out_dir / (stem + ".csv"));
    w.comment("seed=" + std::to_string(config.seed));
    w.row({axis_name.empty() ? "point" : axis_name + "_value", "mean_dead_qubits", "stdev",
           "ci_low", "ci_high"});
    for (const auto& p : points)
      w.row_numeric({p.axis_value, p.stats.mean, p.stats.stdev, p.stats.ci_low,
                     p.stats.ci_high});
  }
  if (points.size() > 1) {
    svg::Plot plot;
    plot.title = "Dead qubits from junction TLSs";
    plot.xlabel = axis_name;
    plot.ylabel = "mean dead qubits";
    svg::Series s{{}, {}, "mean", "#1f77b4", true};
    for (const auto& p : points) {
      s.x.push_back(p.axis_value);
      s.y.push_back(p.stats.mean);
    }
    plot.add(s);
    plot.write(global.out_dir / (stem + ".svg"));
  }
  std::cout << "mean dead qubits";
  for (const auto& p : points) std::cout << " " << p.stats.mean;
  std::cout << "\n";
  finish_manifest(manifest, global);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds

BoundTable obtain_bound_table(const GlobalOptions& global, BoundTableConfig config,
                              bool* from_cache = nullptr) {
  config.jobs = global.jobs;
  fs::path cache_path = cache_dir(global) / "bounds_cache.json";
  if (auto cached = BoundTable::try_load_matching(cache_path, config)) {
    if (from_cache) *from_cache = true;
    return std::move(*cached);
  }
  if (from_cache) *from_cache = false;
  auto table = BoundTable::build(config);
  table.save(cache_path);
  return table;
}

int cmd_bounds(const GlobalOptions& global, double grid_step_mhz, double delta_max_ghz,
               const std::string& rule_name, bool export_catalog) {
  BoundTableConfig config;
  config.grid_step_mhz = grid_step_mhz;
  config.delta_max_ghz = delta_max_ghz;
  config.rule = scan_rule_from_string(rule_name);
  auto manifest = start_manifest("bounds", global, config.fingerprint());

  bool from_cache = false;
  auto table = obtain_bound_table(global, config, &from_cache);
  if (!from_cache)
    std::cout << "bound cache rebuilt (" << config.fingerprint() << ")\n";
  else
    std::cout << "bound cache hit (" << config.fingerprint() << ")\n";

  for (const auto& [family, cases] : table_families()) {
    csv::Writer w(global.out_dir / ("bounds_" + family + ".csv"));
    w.comment("minimum detuning in GHz; cases: " + [&] {
      std::string s;
      for (const auto& c : cases) s += c + " ";
      return s;
    }());
    std::vector<std::string> header = {"g_fraction"};
    for (double th : config.f_thresholds)
      header.push_back("F>" + csv::format_double(th, 6));
    w.row(header);
    for (double frac : config.g_fractions) {
      std::vector<double> row = {frac};
      for (double th : config.f_thresholds) row.push_back(table.at({cases[0], frac, th}));
      w.row_numeric(row);
    }
  }
  if (export_catalog)
    std::ofstream(global.out_dir / "catalog.json") << catalog_to_json() << "\n";

  std::cout << "wrote " << table_families().size() << " bound tables ("
            << catalog().size() * config.g_fractions.size() * config.f_thresholds.size()
            << " cells)\n";
  finish_manifest(manifest, global);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// allocate / validate

int cmd_allocate(const GlobalOptions& global, double delta_q_mhz, double base_f_ghz,
                 double bandwidth_ghz, double area_um2, int rows, int cols) {
  std::ostringstream cfg;
  cfg << delta_q_mhz << "|" << base_f_ghz << "|" << bandwidth_ghz << "|" << rows << "x"
      << cols;
  auto manifest = start_manifest("allocate", global, cfg.str());

  AllocationRules rules;
  rules.delta_q_mhz = delta_q_mhz;
  rules.base_f_ghz = base_f_ghz;
  rules.bandwidth_ghz = bandwidth_ghz;
  rules.junction_area_um2 = area_um2;
  auto result = allocate_unit_cell(rules);
  for (const auto& w : result.warnings) std::cout << "warning: " << w << "\n";

  auto layout = tile_lattice(rows, cols, result.cell);
  save_layout(layout, global.out_dir / "layout.json");

  csv::Writer w(global.out_dir / "gate_frequencies.csv");
  w.row({"coupler_id", "iswap_ghz", "cz_low_ghz", "cz_high_ghz"});
  for (const auto& cp : layout.couplers) {
    auto gf = gate_frequencies(layout.qubits[cp.qubit_a], layout.qubits[cp.qubit_b]);
    double low = gf.low_cz == GateKind::CZ20 ? gf.cz20_ghz : gf.cz02_ghz;
    double high = gf.low_cz == GateKind::CZ20 ? gf.cz02_ghz : gf.cz20_ghz;
    w.row_numeric({static_cast<double>(cp.id), gf.iswap_ghz, low, high});
  }

  std::cout << "allocated " << rows << "x" << cols << " lattice, "
            << layout.couplers.size() << " couplers, " << result.warnings.size()
            << " advisory warning(s)\n";
  finish_manifest(manifest, global);
  return kExitOk;
}

int cmd_validate(const fs::path& layout_path) {
  auto layout = load_layout(layout_path);
  auto violations = validate_layout(layout);
  if (violations.empty()) {
    std::cout << "layout valid: " << layout.rows << "x" << layout.cols << ", "
              << layout.couplers.size() << " couplers\n";
    return kExitOk;
  }
  for (const auto& v : violations) std::cout << "violation: " << v << "\n";
  return kExitInput;
}

// ---------------------------------------------------------------------------
// qpu-mc

int cmd_qpu_mc(const GlobalOptions& global, const fs::path& config_path) {
  auto view = ConfigView::load(config_path);
  auto manifest = start_manifest("qpu_mc", global, view.raw());
  manifest.add_input(config_path);

  QpuMcConfig config;
  std::string layout_path = view.get_string("qpu_mc.layout", "");
  if (!layout_path.empty()) {
    fs::path p = layout_path;
    if (p.is_relative()) p = config_path.parent_path() / p;
    config.layout = load_layout(p);
    manifest.add_input(p);
  } else {
    int rows = static_cast<int>(view.get_int("qpu_mc.rows", 10));
    int cols = static_cast<int>(view.get_int("qpu_mc.cols", 10));
    config.layout = tile_lattice(rows, cols, allocate_unit_cell({}).cell);
  }
  config.sigma_f_mhz = view.get_double("qpu_mc.sigma_f_mhz", 40.0);
  config.x_ac = view.get_double("qpu_mc.x_ac", 0.02);
  config.f_threshold = view.get_double("qpu_mc.f_threshold", 0.999);
  config.trials = static_cast<int>(view.get_int("qpu_mc.trials", 2000));
  config.seed = static_cast<std::uint64_t>(view.get_int("qpu_mc.seed", global.seed));
  config.neighbor_policy = neighbor_policy_from_string(
      view.get_string("qpu_mc.neighbor_policy", "nearest_and_next"));
  config.include_cross_gate_checks =
      view.get_bool("qpu_mc.include_cross_gate_checks", false);
  config.next_nearest_xac_scale = view.get_double("qpu_mc.next_nearest_xac_scale", 1.0);
  config.jobs = global.jobs;

  BoundTableConfig bt_config;
  bt_config.grid_step_mhz = view.get_double("bounds.grid_step_mhz", 1.0);
  bt_config.delta_max_ghz = view.get_double("bounds.delta_max_ghz", 2.5);
  bt_config.rule = scan_rule_from_string(
      view.get_string("bounds.rule", "first_crossing"));
  auto table = obtain_bound_table(global, bt_config);

  auto emit_per_type = [](const CollisionReport& r) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, count] : r.per_type) j[name] = count;
    return j.dump();
  };

  std::string axis_name = view.get_string("qpu_mc.sweep_axis", "");
  if (axis_name.empty()) {
    auto report = run_collision_mc(config, table);
    nlohmann::json j = {{"mean_collisions", report.mean},
                        {"stdev", report.stdev},
                        {"yield", report.yield},
                        {"trials", config.trials},
                        {"per_type", nlohmann::json::parse(emit_per_type(report))}};
    std::ofstream(global.out_dir / "qpu_mc_report.json") << j.dump(2) << "\n";
    csv::Writer w(global.out_dir / "collisions.csv");
    w.row({"sigma_f_mhz", "mean_collisions", "stdev", "yield", "per_type_json"});
    w.row({csv::format_double(config.sigma_f_mhz), csv::format_double(report.mean),
           csv::format_double(report.stdev), csv::format_double(report.yield),
           "\"" + emit_per_type(report) + "\""});
    std::cout << "mean collisions " << report.mean << ", yield " << report.yield << "\n";
  } else {
    auto values = view.get_double_array("qpu_mc.sweep_values");
    if (!values) throw InputError("qpu_mc.sweep_values required with sweep_axis");
    auto axis = qpu_axis_from_string(axis_name);
    auto points = run_study(config, axis, *values, table);

    csv::Writer w(global.out_dir / ("collisions_vs_" + axis_name + ".csv"));
    w.comment("seed=" + std::to_string(config.seed));
    w.row({axis_name, "mean_collisions", "stdev", "yield", "per_type_json"});
    for (const auto& p : points)
      w.row({csv::format_double(p.axis_value), csv::format_double(p.report.mean),
             csv::format_double(p.report.stdev), csv::format_double(p.report.yield),
             "\"" + emit_per_type(p.report) + "\""});

    svg::Plot mean_plot;
    mean_plot.title = "Mean collisions vs " + axis_name;
    mean_plot.xlabel = axis_name;
    mean_plot.ylabel = "mean collisions";
    svg::Series ms{{}, {}, "mean", "#1f77b4", true};
    svg::Series ys{{}, {}, "yield", "#d62728", true};
    for (const auto& p : points) {
      ms.x.push_back(p.axis_value);
      ms.y.push_back(p.report.mean);
      ys.x.push_back(p.axis_value);
      ys.y.push_back(p.report.yield);
    }
    mean_plot.add(ms);
    mean_plot.write(global.out_dir / ("collisions_vs_" + axis_name + ".svg"));
    svg::Plot yield_plot;
    yield_plot.title = "Collision-free yield vs " + axis_name;
    yield_plot.xlabel = axis_name;
    yield_plot.ylabel = "yield";
    yield_plot.add(ys);
    yield_plot.write(global.out_dir / ("yield_vs_" + axis_name + ".svg"));

    std::cout << "study points:";
    for (const auto& p : points) std::cout << " (" << p.axis_value << ", " << p.report.mean
                                           << ", yield " << p.report.yield << ")";
    std::cout << "\n";
  }
  finish_manifest(manifest, global);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcrowd: frequency-crowding analysis for fixed-frequency transmon QPUs"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "manifest seed; all randomness derives from it");
  app.add_option("--jobs", global.jobs, "worker threads for parallel sections");
  app.add_option("--out-dir", global.out_dir, "directory for emitted artifacts");
  app.add_option("--format", global.format, "preferred tabular format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));

  // junction-fit
  auto* jf = app.add_subcommand("junction-fit", "fit wafer resistance and CV models");
  fs::path jf_csv;
  int jf_day = 0, jf_k = 2;
  double jf_width = 0.0, jf_open = 1e6, jf_ec = 200.0, jf_gap = 176.0;
  jf->add_option("csv", jf_csv, "probe-station csv")->required();
  jf->add_option("--day", jf_day, "measurement day to fit");
  jf->add_option("--window-k", jf_k, "chip window size in dies");
  jf->add_option("--width-um", jf_width, "junction width for window statistics");
  jf->add_option("--open-circuit-ohm", jf_open, "open-circuit exclusion threshold");
  jf->add_option("--ec-mhz", jf_ec, "charging energy for frequency inference");
  jf->add_option("--delta-gap-uev", jf_gap, "superconducting gap");

  // tls-fit
  auto* tf = app.add_subcommand("tls-fit", "fit TLS peaks in swap-spectroscopy data");
  fs::path tf_csv;
  double tf_prom = 0.0, tf_census = 90.0;
  tf->add_option("csv", tf_csv, "trace csv (f_ghz,gamma1_per_us or 3-point columns)")
      ->required();
  tf->add_option("--min-prominence", tf_prom, "peak prominence threshold (0 = auto)");
  tf->add_option("--census-threshold-khz", tf_census, "census coupling threshold");

  // tls-sim
  auto* ts = app.add_subcommand("tls-sim", "simulate a relaxation-rate spectrum");
  double ts_lo = 4.0, ts_hi = 4.5, ts_step = 1.0, ts_gamma1q = 0.02;
  std::vector<std::string> ts_tls;
  ts->add_option("--f-lo-ghz", ts_lo, "grid start");
  ts->add_option("--f-hi-ghz", ts_hi, "grid end");
  ts->add_option("--step-mhz", ts_step, "grid step");
  ts->add_option("--gamma1q-per-us", ts_gamma1q, "qubit baseline rate");
  ts->add_option("--tls", ts_tls, "TLS as f_ghz:g_khz:gamma_per_us (repeatable)");

  // tls-mc
  auto* tm = app.add_subcommand("tls-mc", "Monte Carlo of qubit-TLS frequency collisions");
  fs::path tm_config;
  tm->add_option("config", tm_config, "toml/json config")->required();

  // bounds
  auto* bd = app.add_subcommand("bounds", "build/export the minimum-detuning tables");
  double bd_step = 1.0, bd_max = 2.5;
  std::string bd_rule = "first_crossing";
  bool bd_catalog = false;
  bd->add_option("--grid-step-mhz", bd_step, "detuning scan step");
  bd->add_option("--delta-max-ghz", bd_max, "detuning scan ceiling");
  bd->add_option("--rule", bd_rule, "first_crossing (published) or last_crossing");
  bd->add_flag("--export-catalog", bd_catalog, "also write the case catalog json");

  // allocate
  auto* al = app.add_subcommand("allocate", "allocate the 8-frequency cell and tile it");
  double al_dq = 104.0, al_base = 4.3, al_bw = 1.0, al_area = 0.109;
  int al_rows = 10, al_cols = 10;
  al->add_option("--delta-q-mhz", al_dq, "intra-group spacing");
  al->add_option("--base-f-ghz", al_base, "lowest group-A frequency");
  al->add_option("--bandwidth-ghz", al_bw, "allocation bandwidth");
  al->add_option("--area-um2", al_area, "junction area carried on the specs");
  al->add_option("--rows", al_rows, "lattice rows");
  al->add_option("--cols", al_cols, "lattice cols");

  // qpu-mc
  auto* qm = app.add_subcommand("qpu-mc", "Monte Carlo of gate-frequency collisions");
  fs::path qm_config;
  qm->add_option("config", qm_config, "toml/json config")->required();

  // validate
  auto* vl = app.add_subcommand("validate", "check a layout json against all invariants");
  fs::path vl_layout;
  vl->add_option("layout", vl_layout, "layout json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(global.out_dir);
    if (jf->parsed())
      return cmd_junction_fit(global, jf_csv, jf_day, jf_k, jf_width, jf_open, jf_ec, jf_gap);
    if (tf->parsed()) return cmd_tls_fit(global, tf_csv, tf_prom, tf_census);
    if (ts->parsed())
      return cmd_tls_sim(global, ts_lo, ts_hi, ts_step, ts_gamma1q, ts_tls);
    if (tm->parsed()) return cmd_tls_mc(global, tm_config);
    if (bd->parsed()) return cmd_bounds(global, bd_step, bd_max, bd_rule, bd_catalog);
    if (al->parsed())
      return cmd_allocate(global, al_dq, al_base, al_bw, al_area, al_rows, al_cols);
    if (qm->parsed()) return cmd_qpu_mc(global, qm_config);
    if (vl->parsed()) return cmd_validate(vl_layout);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return kExitCache;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
