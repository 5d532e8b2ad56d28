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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qcrowd {

inline constexpr const char* kVersion = "0.1.0";

/// Provenance record embedded next to every artifact a command emits.
/// Reruns with the same manifest seed and config hash are reproducible.
struct RunManifest {
  std::string command;
  std::string config_hash;  // fnv1a64 hex of the normalized config
  std::uint64_t seed = 0;
  std::string tool_version = kVersion;
  std::string started_at;
  std::string finished_at;
  struct InputDigest {
    std::string path;
    std::string fnv64;
  };
  std::vector<InputDigest> inputs;

  void add_input(const std::filesystem::path& path);
  void stamp_start();
  void stamp_finish();
  std::string to_json() const;
  void write(const std::filesystem::path& path) const;
};

std::string fnv64_hex(const std::string& data);
std::string fnv64_hex_of_file(const std::filesystem::path& path);
std::string iso8601_now();

}  // namespace qcrowd
