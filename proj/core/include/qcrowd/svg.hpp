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
#include <string>
#include <vector>

namespace qcrowd::svg {

// Minimal native SVG line/scatter/histogram plots: axes, ticks, series,
// legend. Enough to mirror the report figures without a plotting dependency.

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
  std::string color = "#1f77b4";
  bool markers = false;
};

struct Plot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
  int width = 720;
  int height = 480;
  bool log_y = false;

  void add(Series s) { series.push_back(std::move(s)); }
  void write(const std::filesystem::path& path) const;
};

struct Histogram {
  std::string title;
  std::string xlabel;
  std::vector<double> values;
  int bins = 20;
  int width = 720;
  int height = 480;
  std::string color = "#d62728";

  void write(const std::filesystem::path& path) const;
};

}  // namespace qcrowd::svg
