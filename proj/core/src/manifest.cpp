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

#include "qcrowd/manifest.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcrowd/errors.hpp"
#include "qcrowd/rng.hpp"

namespace qcrowd {

std::string fnv64_hex(const std::string& data) {
  std::ostringstream ss;
  ss << std::hex << fnv1a64(data);
  return ss.str();
}

std::string fnv64_hex_of_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv64_hex(ss.str());
}

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.push_back({path.string(), fnv64_hex_of_file(path)});
}

void RunManifest::stamp_start() { started_at = iso8601_now(); }
void RunManifest::stamp_finish() { finished_at = iso8601_now(); }

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  j["tool_version"] = tool_version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["inputs"] = nlohmann::json::array();
  for (const auto& in : inputs)
    j["inputs"].push_back({{"path", in.path}, {"fnv64", in.fnv64}});
  return j.dump(2);
}

void RunManifest::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError("cannot write manifest: " + path.string());
  out << to_json() << "\n";
}

}  // namespace qcrowd
