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

#include "qcrowd/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qcrowd/errors.hpp"

namespace qcrowd::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  for (auto& s : cells) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
  }
  return cells;
}

}  // namespace

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

double Table::number(std::size_t row, int col) const {
  if (col < 0 || row >= rows.size() ||
      static_cast<std::size_t>(col) >= rows[row].size())
    throw InputError("csv: cell out of range");
  const std::string& s = rows[row][col];
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError("csv: not a number: '" + s + "' (data row " +
                     std::to_string(row + 1) + ")");
  return v;
}

std::map<std::string, std::string> Table::metadata() const {
  std::map<std::string, std::string> meta;
  for (const auto& c : comments) {
    std::istringstream ss(c);
    std::string token;
    while (ss >> token) {
      std::size_t eq = token.find('=');
      if (eq != std::string::npos)
        meta[token.substr(0, eq)] = token.substr(eq + 1);
    }
  }
  return meta;
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open csv file: " + path.string());
  Table table;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (line[0] == '#') {
      if (!have_header) table.comments.push_back(line.substr(1));
      continue;
    }
    auto cells = split_line(line);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
      throw InputError("csv: line " + std::to_string(lineno) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(table.header.size()) + " (" +
                       path.string() + ")");
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw InputError("csv: empty file: " + path.string());
  return table;
}

std::string format_double(double v, int precision) {
  std::ostringstream ss;
  ss.precision(precision);
  ss << v;
  return ss.str();
}

struct Writer::Impl {
  std::ofstream out;
};

Writer::Writer(const std::filesystem::path& path) : impl_(new Impl) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  impl_->out.open(path);
  if (!impl_->out) {
    delete impl_;
    throw InputError("cannot open for writing: " + path.string());
  }
}

Writer::~Writer() { delete impl_; }

void Writer::comment(const std::string& text) { impl_->out << "# " << text << "\n"; }

void Writer::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) impl_->out << ",";
    impl_->out << cells[i];
  }
  impl_->out << "\n";
}

void Writer::row_numeric(const std::vector<double>& cells, int precision) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double v : cells) s.push_back(format_double(v, precision));
  row(s);
}

}  // namespace qcrowd::csv
