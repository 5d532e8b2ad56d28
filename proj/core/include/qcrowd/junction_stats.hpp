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
#include <span>
#include <string>
#include <vector>

#include "qcrowd/units.hpp"

namespace qcrowd {

struct JunctionSample {
  int die_row = 0;
  int die_col = 0;
  double width_um = 0.0;   // designed junction width d
  double r_n_ohm = 0.0;    // measured normal-state resistance
  int day = 0;             // measurement day offset
};

struct WaferMap {
  std::vector<JunctionSample> samples;
  double die_pitch_mm = 5.0;
  std::string label;
};

/// R_N = R_J / (d - delta_d)^2 fitted in the linearized domain
/// R_N^{-1/2} = (d - delta_d) / sqrt(R_J) on per-width means.
struct ResistanceModel {
  double r_j_ohm_um2 = 0.0;
  double delta_d_nm = 0.0;
  double residual_rms = 0.0;  // rms residual of R_N^{-1/2}, relative to its mean
};

/// (CV_RN)^2 = (CV_RJ)^2 (CV_A)^2 + (CV_RJ)^2 + (CV_A)^2 with CV_A = 2 sigma_d / sqrt(A).
struct CvModel {
  double cv_rj = 0.0;      // fraction
  double sigma_d_nm = 0.0;
};

struct CvPoint {
  double area_um2 = 0.0;
  double cv_rn = 0.0;  // fraction
};

/// Per-width sample CV of R_N (unbiased stdev over mean), restricted to one
/// measurement day. Open-circuit samples (r_n above the threshold) are
/// excluded. Returned sorted by area.
std::vector<CvPoint> per_area_cv(const WaferMap& wafer, int day = 0,
                                 double open_circuit_ohm = 1e6);

/// Least-squares fit of the per-width mean R_N^{-1/2} vs d. Throws InputError
/// when fewer than two distinct widths survive filtering.
ResistanceModel fit_resistance_model(const WaferMap& wafer, int day = 0,
                                     double open_circuit_ohm = 1e6);

/// Least-squares fit of CV_RN^2(A); linear in (CV_RJ^2, 4 sigma_d^2 (1 + CV_RJ^2))
/// with regressor 1/A. Throws InputError with fewer than two distinct areas.
CvModel fit_cv_model(std::span<const CvPoint> points);

/// Predicted CV_RN at a given area under a CvModel.
double cv_model_eval(const CvModel& model, double area_um2);

/// h f01 = sqrt(2 Delta Phi0 E_C / (e R_N)) - E_C. Inputs in Ohm, MHz, ueV.
double transmon_frequency_ghz(double r_n_ohm, double e_c_mhz, double delta_gap_uev = 176.0);

/// sigma_f01 = 0.5 CV_RN f01 (MHz out for GHz in).
double frequency_stdev_mhz(double f01_ghz, double cv_rn);

struct WindowCv {
  int row0 = 0;
  int col0 = 0;
  double cv_rn = 0.0;
  int n_samples = 0;
};

struct ChipWindowResult {
  std::vector<WindowCv> windows;  // sorted by (row0, col0)
  double mean_cv = 0.0;
  double stdev_cv = 0.0;
};

/// CV_RN over every k x k block of dies that is fully populated on the wafer,
/// for samples of one junction width (and day). Throws InputError when no
/// window fits.
ChipWindowResult chip_window_cv(const WaferMap& wafer, int k, double width_um,
                                int day = 0, double open_circuit_ohm = 1e6);

struct AgingEntry {
  double area_um2 = 0.0;
  int day_from = 0;
  int day_to = 0;
  double mean_rel_change = 0.0;           // mean of (R2 - R1)/R1 over matched pairs
  std::map<int, double> cv_per_timepoint; // day -> CV_RN
  int matched_pairs = 0;
};

struct AgingReport {
  std::vector<AgingEntry> entries;  // per (area, consecutive day pair)
  int unmatched_samples = 0;
};

/// Relative R_N change per junction area between consecutive measurement
/// days, matching samples by (die, width). Unmatched samples are skipped and
/// counted.
AgingReport aging_deltas(const WaferMap& wafer, double open_circuit_ohm = 1e6);

/// Probe-station CSV: columns die_row,die_col,width_um,r_n_ohm,day.
WaferMap load_wafer_csv(const std::filesystem::path& path);

}  // namespace qcrowd
