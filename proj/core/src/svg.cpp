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

#include "qcrowd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qcrowd/errors.hpp"

namespace qcrowd::svg {

namespace {

constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 55;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void absorb(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (!(lo < hi)) {
      lo -= 0.5;
      hi += 0.5;
    }
    double d = 0.05 * (hi - lo);
    lo -= d;
    hi += d;
  }
};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

std::vector<double> ticks(double lo, double hi, int target = 6) {
  std::vector<double> out;
  double span = hi - lo;
  if (!(span > 0)) return out;
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  double first = std::ceil(lo / step) * step;
  for (double t = first; t <= hi + 1e-12 * span; t += step) out.push_back(t);
  return out;
}

void write_frame(std::ostream& o, int w, int h, const std::string& title,
                 const std::string& xlabel, const std::string& ylabel) {
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
    << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"15\">"
    << esc(title) << "</text>\n"
    << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
    << esc(xlabel) << "</text>\n"
    << "<text x=\"16\" y=\"" << h / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       "transform=\"rotate(-90 16 "
    << h / 2 << ")\">" << esc(ylabel) << "</text>\n";
}

}  // namespace

void Plot::write(const std::filesystem::path& path) const {
  Range rx, ry;
  for (const auto& s : series) {
    for (double v : s.x) rx.absorb(v);
    for (double v : s.y) ry.absorb(log_y ? std::log10(std::max(v, 1e-300)) : v);
  }
  if (series.empty() || !std::isfinite(rx.lo) || !std::isfinite(ry.lo))
    throw InputError("svg: nothing to plot");
  rx.pad();
  ry.pad();

  const int pw = width - kMarginL - kMarginR;
  const int ph = height - kMarginT - kMarginB;
  auto px = [&](double v) { return kMarginL + pw * (v - rx.lo) / (rx.hi - rx.lo); };
  auto py = [&](double v) {
    double u = log_y ? std::log10(std::max(v, 1e-300)) : v;
    return kMarginT + ph * (1.0 - (u - ry.lo) / (ry.hi - ry.lo));
  };

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream o(path);
  if (!o) throw InputError("cannot open for writing: " + path.string());
  write_frame(o, width, height, title, xlabel, ylabel);

  o << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << pw
    << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(rx.lo, rx.hi)) {
    o << "<line x1=\"" << px(t) << "\" y1=\"" << kMarginT + ph << "\" x2=\""
      << px(t) << "\" y2=\"" << kMarginT + ph + 5 << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << px(t) << "\" y=\"" << kMarginT + ph + 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">"
      << num(t) << "</text>\n";
  }
  for (double t : ticks(ry.lo, ry.hi)) {
    double yy = kMarginT + ph * (1.0 - (t - ry.lo) / (ry.hi - ry.lo));
    o << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << yy << "\" x2=\""
      << kMarginL << "\" y2=\"" << yy << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kMarginL - 8 << "\" y=\"" << yy + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << (log_y ? "1e" + num(t) : num(t)) << "</text>\n";
  }

  int legend_y = kMarginT + 14;
  for (const auto& s : series) {
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
      pts << px(s.x[i]) << "," << py(s.y[i]) << " ";
    o << "<polyline fill=\"none\" stroke=\"" << s.color
      << "\" stroke-width=\"1.6\" points=\"" << pts.str() << "\"/>\n";
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
        o << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
          << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
    }
    if (!s.label.empty()) {
      o << "<line x1=\"" << kMarginL + pw - 150 << "\" y1=\"" << legend_y
        << "\" x2=\"" << kMarginL + pw - 126 << "\" y2=\"" << legend_y
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kMarginL + pw - 120 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << esc(s.label)
        << "</text>\n";
      legend_y += 16;
    }
  }
  o << "</svg>\n";
}

void Histogram::write(const std::filesystem::path& path) const {
  if (values.empty()) throw InputError("svg: empty histogram");
  Range rx;
  for (double v : values) rx.absorb(v);
  if (!(rx.hi > rx.lo)) {
    rx.lo -= 0.5;
    rx.hi += 0.5;
  }
  int nb = std::max(1, bins);
  std::vector<int> counts(nb, 0);
  for (double v : values) {
    int b = static_cast<int>((v - rx.lo) / (rx.hi - rx.lo) * nb);
    b = std::clamp(b, 0, nb - 1);
    ++counts[b];
  }
  int cmax = *std::max_element(counts.begin(), counts.end());

  const int pw = width - kMarginL - kMarginR;
  const int ph = height - kMarginT - kMarginB;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream o(path);
  if (!o) throw InputError("cannot open for writing: " + path.string());
  write_frame(o, width, height, title, xlabel, "count");
  o << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << pw
    << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int b = 0; b < nb; ++b) {
    double x0 = kMarginL + pw * static_cast<double>(b) / nb;
    double bw = static_cast<double>(pw) / nb;
    double hgt = cmax ? ph * static_cast<double>(counts[b]) / cmax : 0.0;
    o << "<rect x=\"" << x0 << "\" y=\"" << kMarginT + ph - hgt << "\" width=\""
      << bw * 0.92 << "\" height=\"" << hgt << "\" fill=\"" << color
      << "\" fill-opacity=\"0.7\"/>\n";
  }
  for (double t : ticks(rx.lo, rx.hi)) {
    double xx = kMarginL + pw * (t - rx.lo) / (rx.hi - rx.lo);
    o << "<text x=\"" << xx << "\" y=\"" << kMarginT + ph + 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">"
      << num(t) << "</text>\n";
  }
  o << "</svg>\n";
}

}  // namespace qcrowd::svg
