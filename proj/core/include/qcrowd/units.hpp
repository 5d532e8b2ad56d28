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

#include <numbers>

namespace qcrowd {

// Unit discipline: frequencies are cyclic GHz (or MHz where noted), times ns
// (or us in the TLS module), resistances Ohm, lengths um, areas um^2.
// Conversions to angular rates happen inside the numerics, never at module
// boundaries.

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// cyclic MHz -> angular rad/ns
inline constexpr double mhz_to_rad_per_ns(double f_mhz) { return kTwoPi * f_mhz * 1e-3; }
/// cyclic GHz -> angular rad/ns
inline constexpr double ghz_to_rad_per_ns(double f_ghz) { return kTwoPi * f_ghz; }
/// cyclic MHz -> angular rad/us
inline constexpr double mhz_to_rad_per_us(double f_mhz) { return kTwoPi * f_mhz; }
/// cyclic kHz -> angular rad/us
inline constexpr double khz_to_rad_per_us(double f_khz) { return kTwoPi * f_khz * 1e-3; }

/// Fixed constants (CODATA 2018 exact values where defined).
struct PhysicalConstants {
  double delta_gap_uev = 176.0;  // superconducting gap of aluminum, ueV

  static constexpr double planck_js = 6.62607015e-34;        // J s
  static constexpr double electron_charge_c = 1.602176634e-19;  // C
  static constexpr double flux_quantum_wb = planck_js / (2.0 * electron_charge_c);  // Wb
};

}  // namespace qcrowd
