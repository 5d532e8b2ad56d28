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

#include "qcrowd/tomlite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qcrowd/errors.hpp"

namespace qcrowd::tomlite {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Strips a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

Value parse_scalar(const std::string& tok, std::size_t lineno) {
  if (tok.empty()) throw InputError("toml: empty value at line " + std::to_string(lineno));
  if (tok.front() == '"') {
    if (tok.size() < 2 || tok.back() != '"')
      throw InputError("toml: unterminated string at line " + std::to_string(lineno));
    return Value{tok.substr(1, tok.size() - 2)};
  }
  if (tok == "true") return Value{true};
  if (tok == "false") return Value{false};
  bool looks_float = tok.find_first_of(".eE") != std::string::npos;
  if (!looks_float) {
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
    if (ec == std::errc() && p == tok.data() + tok.size()) return Value{iv};
  }
  double dv = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), dv);
  if (ec == std::errc() && p == tok.data() + tok.size()) return Value{dv};
  throw InputError("toml: cannot parse value '" + tok + "' at line " +
                   std::to_string(lineno));
}

Value parse_value(const std::string& raw, std::size_t lineno) {
  std::string s = trim(raw);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']')
      throw InputError("toml: unterminated array at line " + std::to_string(lineno));
    Array arr;
    std::string inner = s.substr(1, s.size() - 2);
    std::string tok;
    bool in_str = false;
    for (char c : inner) {
      if (c == '"') in_str = !in_str;
      if (c == ',' && !in_str) {
        if (!trim(tok).empty()) arr.push_back(parse_scalar(trim(tok), lineno));
        tok.clear();
      } else {
        tok.push_back(c);
      }
    }
    if (!trim(tok).empty()) arr.push_back(parse_scalar(trim(tok), lineno));
    return Value{arr};
  }
  return parse_scalar(s, lineno);
}

}  // namespace

double Value::as_double() const {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<std::int64_t>(v))
    return static_cast<double>(std::get<std::int64_t>(v));
  throw InputError("toml: value is not a number");
}

std::int64_t Value::as_int() const {
  if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
  throw InputError("toml: value is not an integer");
}

bool Value::as_bool() const {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  throw InputError("toml: value is not a boolean");
}

const std::string& Value::as_string() const {
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  throw InputError("toml: value is not a string");
}

const Array& Value::as_array() const {
  if (std::holds_alternative<Array>(v)) return std::get<Array>(v);
  throw InputError("toml: value is not an array");
}

Document Document::parse(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw InputError("toml: bad section header at line " + std::to_string(lineno));
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw InputError("toml: expected key = value at line " + std::to_string(lineno));
    std::string key = trim(s.substr(0, eq));
    if (key.empty())
      throw InputError("toml: empty key at line " + std::to_string(lineno));
    std::string full = section.empty() ? key : section + "." + key;
    doc.values_[full] = parse_value(s.substr(eq + 1), lineno);
  }
  return doc;
}

Document Document::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const Value& Document::at(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw InputError("config: missing key '" + key + "'");
  return it->second;
}

double Document::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.as_double();
}

std::int64_t Document::get_int(const std::string& key, std::int64_t fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.as_int();
}

bool Document::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.as_bool();
}

std::string Document::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.as_string();
}

std::optional<std::vector<double>> Document::get_double_array(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  std::vector<double> out;
  for (const auto& v : it->second.as_array()) out.push_back(v.as_double());
  return out;
}

}  // namespace qcrowd::tomlite
