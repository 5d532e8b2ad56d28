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

#include <stdexcept>
#include <string>

namespace qcrowd {

/// Bad user input: malformed files, schema violations, nonsensical parameters.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to meet its contract (non-convergence,
/// tolerance not achievable, bound not found within the scan range).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Persistent-cache problems: unreadable file, config-hash mismatch.
class CacheError : public std::runtime_error {
 public:
  explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcrowd
