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

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qcrowd/units.hpp"

namespace qcrowd {

/// Per-qubit excitation numbers of a rotating-frame basis state, e.g. |110>.
/// At most one occupation may be 2.
struct BasisState {
  int n_qubits = 2;
  std::array<int, 3> occ{};

  static BasisState of(int a, int b) { return {2, {a, b, 0}}; }
  static BasisState of(int a, int b, int c) { return {3, {a, b, c}}; }

  bool computational() const {
    for (int i = 0; i < n_qubits; ++i)
      if (occ[i] > 1) return false;
    return true;
  }
  /// Index in the standard computational ordering (qubit 1 most significant).
  int computational_index() const;
  std::string label() const;  // e.g. "110"

  friend bool operator==(const BasisState&, const BasisState&) = default;
  friend auto operator<=>(const BasisState& a, const BasisState& b) {
    if (auto c = a.n_qubits <=> b.n_qubits; c != 0) return c;
    return a.occ <=> b.occ;
  }
};

enum class DrivenGate { X1Q, ISWAP, CZ20, CZ02 };
std::string to_string(DrivenGate g);

/// One directed coupling term |ket><bra| of a rotating-frame Hamiltonian.
struct Coupling {
  BasisState ket;
  BasisState bra;
};

/// One row of the collision taxonomy: a desired driven gate plus a colliding
/// drive detuned by Delta, with the coupling lists written out per basis
/// state. Coupling strengths are quoted as g/2pi in MHz.
struct CollisionCase {
  std::string name;
  DrivenGate desired_gate = DrivenGate::X1Q;
  DrivenGate colliding_gate = DrivenGate::X1Q;
  int n_qubits = 2;
  std::vector<Coupling> desired;
  std::vector<Coupling> colliding;
  std::vector<BasisState> shared_states;  // intersection of the two state sets
  double t_g_ns = 0.0;
  double g_g_mhz = 0.0;    // pi/t_g for X1Q and iSWAP, 2pi/t_g for CZ
  double g_wcs_mhz = 0.0;  // worst-case colliding strength
  bool same_coupler = false;  // crosstalk fraction does not apply (always 1.0)
};

/// The 13 collision rows of the taxonomy, materialized with their coupling
/// lists. Order is stable; names are unique.
const std::vector<CollisionCase>& catalog();
const CollisionCase& find_case(std::string_view name);
std::string catalog_fingerprint();  // hash over the full catalog content
std::string catalog_to_json();

/// H(t) = A + B e^{i Delta t} + B^dag e^{-i Delta t} on the case's state
/// span, in angular rad/ns. A carries the desired couplings at g_g/2; B the
/// colliding ket->bra products at g/2.
struct HamiltonianSpec {
  std::vector<BasisState> basis;  // span, sorted
  Eigen::MatrixXd desired;        // A, symmetric
  Eigen::MatrixXd colliding;      // B, ket row -> bra column
  double delta_rad_per_ns = 0.0;

  Eigen::MatrixXcd at(double t_ns) const;  // Hermitian for all t
  int dim() const { return static_cast<int>(basis.size()); }
};

HamiltonianSpec build_hamiltonian(const CollisionCase& cse, double delta_mhz, double g_mhz);

struct Propagator {
  Eigen::MatrixXcd u;
  std::vector<BasisState> basis;
};

/// Closed-form detuned-Rabi propagator of the two-level rotating-frame
/// Hamiltonian, with Omega = sqrt(Delta^2 + g^2). Basis: {lower, upper} where
/// the colliding term is g/2 e^{i Delta t} |upper><lower|.
Propagator analytic_two_level(double g_mhz, double delta_mhz, double t_ns);

/// Numerically integrates the Schroedinger equation for the full matrix
/// propagator with adaptive Richardson-controlled RK4 steps. `tol` is the
/// max-entry error budget for the whole interval. Throws NumericalError if
/// the step budget cannot achieve it.
Propagator propagate(const HamiltonianSpec& h, double t_ns, double tol = 1e-10);

/// Exact propagator via the rotating-frame (Floquet level) transformation:
/// assigns integer levels n_s so that V = exp(i Delta t N) makes the
/// Hamiltonian time-independent, then U(t) = V(t)^dag exp(-i (H0 - Delta N) t).
/// Exact for every catalog case; used for bulk table building.
Propagator propagate_exact(const HamiltonianSpec& h, double t_ns);

/// Collision-free propagator of the case at t_g, projected onto the
/// computational basis (occupations <= 1); states outside the Hamiltonian
/// span act as identity. Realizes X/iSWAP/CZ (x) I up to rotating-frame
/// phases, and defines the F = 1 reference point.
Propagator ideal_gate(const CollisionCase& cse);

/// Projects a span propagator onto the 2^n computational basis, identity on
/// untouched states. Leakage out of the computational space makes the result
/// sub-unitary.
Eigen::MatrixXcd project_to_computational(const Propagator& p, int n_qubits);

/// Average gate fidelity F = (|Tr(M Ug^dag)|^2 + Tr(M M^dag)) / (d (d+1)).
double average_gate_fidelity(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& u_g);

/// F of the case at (Delta, g): propagate, project, compare to ideal_gate.
double collision_fidelity(const CollisionCase& cse, double delta_mhz, double g_mhz);

/// Same quantity through the RK4 integrator; cross-validation route.
double collision_fidelity_integrated(const CollisionCase& cse, double delta_mhz,
                                     double g_mhz, double tol = 1e-10);

}  // namespace qcrowd
