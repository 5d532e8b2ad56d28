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
#include <string>
#include <vector>

namespace qcrowd::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Lines starting with '#' before the header, without the '#'.
  std::vector<std::string> comments;

  int column(const std::string& name) const;  // -1 if absent
  double number(std::size_t row, int col) const;
  /// Parses "key=value" pairs out of the comment lines (metadata header).
  std::map<std::string, std::string> metadata() const;
};

/// Reads a comma-separated file with one header row. Throws InputError with a
/// line number on ragged or non-UTF8-trivial content.
Table read_file(const std::filesystem::path& path);

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path);
  ~Writer();
  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  void comment(const std::string& text);
  void row(const std::vector<std::string>& cells);
  void row_numeric(const std::vector<double>& cells, int precision = 9);

 private:
  struct Impl;
  Impl* impl_;
};

std::string format_double(double v, int precision = 9);

}  // namespace qcrowd::csv
