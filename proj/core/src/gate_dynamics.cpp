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

#include "qcrowd/gate_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "qcrowd/errors.hpp"
#include "qcrowd/rng.hpp"

namespace qcrowd {

namespace {

using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 9, 9>;
using SmallMatC = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, 9, 9>;
constexpr std::complex<double> kI{0.0, 1.0};

BasisState st(int a, int b) { return BasisState::of(a, b); }
BasisState st(int a, int b, int c) { return BasisState::of(a, b, c); }

std::vector<BasisState> intersect_states(const std::vector<Coupling>& desired,
                                         const std::vector<Coupling>& colliding) {
  std::set<BasisState> sd, sc;
  for (const auto& cp : desired) {
    sd.insert(cp.ket);
    sd.insert(cp.bra);
  }
  for (const auto& cp : colliding) {
    sc.insert(cp.ket);
    sc.insert(cp.bra);
  }
  std::vector<BasisState> out;
  std::set_intersection(sd.begin(), sd.end(), sc.begin(), sc.end(), std::back_inserter(out));
  return out;
}

CollisionCase make_case(std::string name, DrivenGate desired_gate, DrivenGate colliding_gate,
                        int n_qubits, double t_g_ns, double g_wcs_mhz,
                        std::vector<Coupling> desired, std::vector<Coupling> colliding,
                        bool same_coupler) {
  CollisionCase c;
  c.name = std::move(name);
  c.desired_gate = desired_gate;
  c.colliding_gate = colliding_gate;
  c.n_qubits = n_qubits;
  c.t_g_ns = t_g_ns;
  bool cz = desired_gate == DrivenGate::CZ20 || desired_gate == DrivenGate::CZ02;
  // pi/t_g for half-cycle gates, 2pi/t_g for the full-cycle CZ, as g/2pi MHz.
  c.g_g_mhz = (cz ? 1000.0 : 500.0) / t_g_ns;
  c.g_wcs_mhz = g_wcs_mhz;
  c.desired = std::move(desired);
  c.colliding = std::move(colliding);
  c.shared_states = intersect_states(c.desired, c.colliding);
  c.same_coupler = same_coupler;
  return c;
}

std::vector<CollisionCase> build_catalog() {
  const double kSqrt2 = std::sqrt(2.0);
  std::vector<CollisionCase> cases;

  // Single-qubit gate colliding with a neighboring single-qubit drive:
  // resonant X on qubit 1, detuned X on qubit 2. The next-nearest row has
  // identical dynamics (the middle qubit is a spectator) and exists as its
  // own taxonomy entry for check bookkeeping.
  for (const char* name : {"1qg_vs_1qg_nn", "1qg_vs_1qg_nnn"}) {
    cases.push_back(make_case(
        name, DrivenGate::X1Q, DrivenGate::X1Q, 2, 20.0, 500.0 / 20.0,
        {{st(1, 0), st(0, 0)}, {st(1, 1), st(0, 1)}},
        {{st(0, 1), st(0, 0)}, {st(1, 1), st(1, 0)}}, false));
  }

  // Same coupler: the two CZ flavors share |11>.
  cases.push_back(make_case("CZ20_vs_CZ02_same_coupler", DrivenGate::CZ20, DrivenGate::CZ02,
                            2, 200.0, 1000.0 / 200.0, {{st(2, 0), st(1, 1)}},
                            {{st(0, 2), st(1, 1)}}, true));

  // Same coupler, CZ driven while the iSWAP resonance sits nearby. The iSWAP
  // matrix element is sqrt(2) weaker than the CZ's.
  cases.push_back(make_case("CZ_vs_iSWAP_same_coupler", DrivenGate::CZ20, DrivenGate::ISWAP,
                            2, 200.0, kSqrt2 * 500.0 / 200.0, {{st(2, 0), st(1, 1)}},
                            {{st(1, 0), st(0, 1)}}, true));

  cases.push_back(make_case("iSWAP_vs_CZ_same_coupler", DrivenGate::ISWAP, DrivenGate::CZ20,
                            2, 140.0, kSqrt2 * 500.0 / 140.0, {{st(1, 0), st(0, 1)}},
                            {{st(2, 0), st(1, 1)}}, true));

  // Neighboring couplers, both CZ, sharing only |111>.
  cases.push_back(make_case("CZ20_vs_CZ20_neighbor", DrivenGate::CZ20, DrivenGate::CZ20, 3,
                            200.0, 1000.0 / 200.0,
                            {{st(2, 0, 0), st(1, 1, 0)}, {st(2, 0, 1), st(1, 1, 1)}},
                            {{st(0, 2, 0), st(0, 1, 1)}, {st(1, 2, 0), st(1, 1, 1)}}, false));
  cases.push_back(make_case("CZ20_vs_CZ02_neighbor", DrivenGate::CZ20, DrivenGate::CZ02, 3,
                            200.0, 1000.0 / 200.0,
                            {{st(2, 0, 0), st(1, 1, 0)}, {st(2, 0, 1), st(1, 1, 1)}},
                            {{st(0, 0, 2), st(0, 1, 1)}, {st(1, 0, 2), st(1, 1, 1)}}, false));
  cases.push_back(make_case("CZ02_vs_CZ02_neighbor", DrivenGate::CZ02, DrivenGate::CZ02, 3,
                            200.0, 1000.0 / 200.0,
                            {{st(0, 2, 0), st(1, 1, 0)}, {st(0, 2, 1), st(1, 1, 1)}},
                            {{st(0, 0, 2), st(0, 1, 1)}, {st(1, 0, 2), st(1, 1, 1)}}, false));

  // Both CZs pump the shared qubit's |2>: the oscillations additionally share
  // |020>.
  cases.push_back(make_case("CZ02_vs_CZ20_neighbor", DrivenGate::CZ02, DrivenGate::CZ20, 3,
                            200.0, 1000.0 / 200.0,
                            {{st(0, 2, 0), st(1, 1, 0)}, {st(0, 2, 1), st(1, 1, 1)}},
                            {{st(0, 2, 0), st(0, 1, 1)}, {st(1, 2, 0), st(1, 1, 1)}}, false));

  // Desired CZ on coupler 1 with an iSWAP resonance on coupler 2; the iSWAP
  // swaps qubits 2-3 for qubit-1 occupations 0, 1 and 2.
  cases.push_back(make_case(
      "CZ_vs_iSWAP_neighbor", DrivenGate::CZ20, DrivenGate::ISWAP, 3, 200.0,
      kSqrt2 * 500.0 / 200.0, {{st(2, 0, 0), st(1, 1, 0)}, {st(2, 0, 1), st(1, 1, 1)}},
      {{st(0, 1, 0), st(0, 0, 1)}, {st(1, 1, 0), st(1, 0, 1)}, {st(2, 1, 0), st(2, 0, 1)}},
      false));

  cases.push_back(make_case("iSWAP_vs_CZ20_neighbor", DrivenGate::ISWAP, DrivenGate::CZ20, 3,
                            140.0, kSqrt2 * 500.0 / 140.0,
                            {{st(1, 0, 0), st(0, 1, 0)}, {st(1, 0, 1), st(0, 1, 1)}},
                            {{st(0, 2, 0), st(0, 1, 1)}, {st(1, 2, 0), st(1, 1, 1)}}, false));

  // The CZ02 flavor also drags the desired iSWAP through qubit-3's |2>.
  cases.push_back(make_case(
      "iSWAP_vs_CZ02_neighbor", DrivenGate::ISWAP, DrivenGate::CZ02, 3, 140.0,
      kSqrt2 * 500.0 / 140.0,
      {{st(1, 0, 0), st(0, 1, 0)}, {st(1, 0, 1), st(0, 1, 1)}, {st(0, 1, 2), st(1, 0, 2)}},
      {{st(0, 0, 2), st(0, 1, 1)}, {st(1, 0, 2), st(1, 1, 1)}}, false));

  cases.push_back(make_case("iSWAP_vs_iSWAP_neighbor", DrivenGate::ISWAP, DrivenGate::ISWAP,
                            3, 140.0, 500.0 / 140.0,
                            {{st(1, 0, 0), st(0, 1, 0)}, {st(1, 0, 1), st(0, 1, 1)}},
                            {{st(0, 1, 0), st(0, 0, 1)}, {st(1, 1, 0), st(1, 0, 1)}}, false));
  return cases;
}

std::vector<BasisState> span_of(const CollisionCase& c) {
  std::set<BasisState> states;
  for (const auto& cp : c.desired) {
    states.insert(cp.ket);
    states.insert(cp.bra);
  }
  for (const auto& cp : c.colliding) {
    states.insert(cp.ket);
    states.insert(cp.bra);
  }
  return {states.begin(), states.end()};
}

/// Integer level per state such that desired couplings join equal levels and
/// colliding couplings drop one level from bra to ket. Succeeds for every
/// catalog case (the coupling graphs are forests in level space).
std::vector<int> assign_levels(const HamiltonianSpec& h) {
  const int m = h.dim();
  std::vector<int> level(m, INT32_MIN);
  std::vector<std::vector<std::pair<int, int>>> adj(m);  // (neighbor, level offset)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (h.desired(i, j) != 0.0) adj[i].push_back({j, 0});
      if (h.colliding(i, j) != 0.0) {  // term e^{i d t} |i><j|: n_i = n_j - 1
        adj[i].push_back({j, +1});     // n_j = n_i + 1
        adj[j].push_back({i, -1});
      }
    }
  }
  for (int s0 = 0; s0 < m; ++s0) {
    if (level[s0] != INT32_MIN) continue;
    level[s0] = 0;
    std::vector<int> stack{s0};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [v, d] : adj[u]) {
        int want = level[u] + d;
        if (level[v] == INT32_MIN) {
          level[v] = want;
          stack.push_back(v);
        } else if (level[v] != want) {
          throw NumericalError("propagate_exact: frustrated level structure; "
                               "use the time-dependent integrator");
        }
      }
    }
  }
  return level;
}

SmallMatC hermitian_exp(const SmallMat& h_sym, double t_ns) {
  Eigen::SelfAdjointEigenSolver<SmallMat> es(h_sym);
  const auto& w = es.eigenvalues();
  const auto& v = es.eigenvectors();
  const int m = static_cast<int>(w.size());
  SmallMatC phased(m, m);
  for (int k = 0; k < m; ++k) {
    std::complex<double> ph = std::exp(-kI * w(k) * t_ns);
    for (int r = 0; r < m; ++r) phased(r, k) = v(r, k) * ph;
  }
  return phased * v.transpose().cast<std::complex<double>>();
}

}  // namespace

int BasisState::computational_index() const {
  int idx = 0;
  for (int i = 0; i < n_qubits; ++i) idx = idx * 2 + occ[i];
  return idx;
}

std::string BasisState::label() const {
  std::string s;
  for (int i = 0; i < n_qubits; ++i) s += static_cast<char>('0' + occ[i]);
  return s;
}

std::string to_string(DrivenGate g) {
  switch (g) {
    case DrivenGate::X1Q: return "X1Q";
    case DrivenGate::ISWAP: return "iSWAP";
    case DrivenGate::CZ20: return "CZ20";
    case DrivenGate::CZ02: return "CZ02";
  }
  return "?";
}

const std::vector<CollisionCase>& catalog() {
  static const std::vector<CollisionCase> cases = build_catalog();
  return cases;
}

const CollisionCase& find_case(std::string_view name) {
  for (const auto& c : catalog())
    if (c.name == name) return c;
  throw InputError("unknown collision case '" + std::string(name) + "'");
}

std::string catalog_to_json() {
  nlohmann::json j = nlohmann::json::array();
  auto state_json = [](const BasisState& s) {
    nlohmann::json a = nlohmann::json::array();
    for (int i = 0; i < s.n_qubits; ++i) a.push_back(s.occ[i]);
    return a;
  };
  auto couplings_json = [&](const std::vector<Coupling>& cps) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& cp : cps)
      a.push_back({{"ket", state_json(cp.ket)}, {"bra", state_json(cp.bra)}});
    return a;
  };
  for (const auto& c : catalog()) {
    nlohmann::json shared = nlohmann::json::array();
    for (const auto& s : c.shared_states) shared.push_back(state_json(s));
    j.push_back({{"name", c.name},
                 {"desired_gate", to_string(c.desired_gate)},
                 {"colliding_gate", to_string(c.colliding_gate)},
                 {"n_qubits", c.n_qubits},
                 {"t_g_ns", c.t_g_ns},
                 {"g_g_mhz", c.g_g_mhz},
                 {"g_wcs_mhz", c.g_wcs_mhz},
                 {"same_coupler", c.same_coupler},
                 {"desired", couplings_json(c.desired)},
                 {"colliding", couplings_json(c.colliding)},
                 {"shared_states", shared}});
  }
  return j.dump(2);
}

std::string catalog_fingerprint() {
  std::ostringstream ss;
  ss << std::hex << fnv1a64(catalog_to_json());
  return ss.str();
}

Eigen::MatrixXcd HamiltonianSpec::at(double t_ns) const {
  const int m = dim();
  std::complex<double> ph = std::exp(kI * delta_rad_per_ns * t_ns);
  Eigen::MatrixXcd h = desired.cast<std::complex<double>>();
  h += ph * colliding.cast<std::complex<double>>();
  h += std::conj(ph) * colliding.transpose().cast<std::complex<double>>();
  (void)m;
  return h;
}

HamiltonianSpec build_hamiltonian(const CollisionCase& cse, double delta_mhz, double g_mhz) {
  if (g_mhz < 0.0) throw InputError("build_hamiltonian: g must be >= 0");
  HamiltonianSpec h;
  h.basis = span_of(cse);
  const int m = static_cast<int>(h.basis.size());
  h.desired = Eigen::MatrixXd::Zero(m, m);
  h.colliding = Eigen::MatrixXd::Zero(m, m);
  h.delta_rad_per_ns = mhz_to_rad_per_ns(std::abs(delta_mhz));
  auto index_of = [&](const BasisState& s) {
    auto it = std::lower_bound(h.basis.begin(), h.basis.end(), s);
    return static_cast<int>(it - h.basis.begin());
  };
  const double gg_half = mhz_to_rad_per_ns(cse.g_g_mhz) / 2.0;
  for (const auto& cp : cse.desired) {
    int i = index_of(cp.ket), j = index_of(cp.bra);
    h.desired(i, j) += gg_half;
    h.desired(j, i) += gg_half;
  }
  const double g_half = mhz_to_rad_per_ns(g_mhz) / 2.0;
  for (const auto& cp : cse.colliding) {
    int i = index_of(cp.ket), j = index_of(cp.bra);
    h.colliding(i, j) += g_half;
  }
  return h;
}

Propagator analytic_two_level(double g_mhz, double delta_mhz, double t_ns) {
  const double g = mhz_to_rad_per_ns(g_mhz);
  const double d = mhz_to_rad_per_ns(delta_mhz);
  const double omega = std::sqrt(d * d + g * g);
  double c, s_over_omega;
  if (omega < 1e-300) {
    c = 1.0;
    s_over_omega = t_ns / 2.0;
  } else {
    c = std::cos(omega * t_ns / 2.0);
    s_over_omega = std::sin(omega * t_ns / 2.0) / omega;
  }
  std::complex<double> frame = std::exp(-kI * d * t_ns / 2.0);
  Propagator p;
  p.basis = {BasisState::of(0, 1), BasisState::of(1, 0)};  // lower, upper
  p.u.resize(2, 2);
  p.u(0, 0) = frame * (c + kI * d * s_over_omega);
  p.u(0, 1) = -kI * frame * g * s_over_omega;
  p.u(1, 0) = -kI * std::conj(frame) * g * s_over_omega;
  p.u(1, 1) = std::conj(frame) * (c - kI * d * s_over_omega);
  return p;
}

Propagator propagate(const HamiltonianSpec& h, double t_ns, double tol) {
  if (!(t_ns > 0.0)) throw InputError("propagate: t must be positive");
  const int m = h.dim();
  const SmallMat sym = h.colliding + h.colliding.transpose();
  const SmallMat asym = h.colliding - h.colliding.transpose();
  const SmallMat& a = h.desired;
  const double d = h.delta_rad_per_ns;

  auto rhs = [&](double t, const SmallMatC& u, SmallMatC& out) {
    const double ct = std::cos(d * t), st = std::sin(d * t);
    SmallMatC ht = (a + ct * sym).cast<std::complex<double>>();
    ht += (kI * st) * asym.cast<std::complex<double>>();
    out.noalias() = (-kI) * (ht * u);
  };
  auto rk4_step = [&](double t, double step, const SmallMatC& u, SmallMatC& out) {
    SmallMatC k1(m, m), k2(m, m), k3(m, m), k4(m, m), tmp(m, m);
    rhs(t, u, k1);
    tmp = u + (step / 2.0) * k1;
    rhs(t + step / 2.0, tmp, k2);
    tmp = u + (step / 2.0) * k2;
    rhs(t + step / 2.0, tmp, k3);
    tmp = u + step * k3;
    rhs(t + step, tmp, k4);
    out = u + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  double omega_max = std::abs(d);
  omega_max = std::max(omega_max, 2.0 * a.cwiseAbs().maxCoeff());
  omega_max = std::max(omega_max, 2.0 * h.colliding.cwiseAbs().maxCoeff());
  double step = std::min(t_ns / 2000.0, omega_max > 0 ? 0.125 / omega_max : t_ns / 2000.0);
  step = std::min(step, t_ns);

  SmallMatC u = SmallMatC::Identity(m, m);
  SmallMatC full(m, m), half1(m, m), half2(m, m);
  double t = 0.0;
  long iterations = 0;
  const long max_iterations = 200'000'000;
  while (t < t_ns) {
    if (++iterations > max_iterations)
      throw NumericalError("propagate: step budget exhausted before reaching tolerance");
    double hstep = std::min(step, t_ns - t);
    rk4_step(t, hstep, u, full);
    rk4_step(t, hstep / 2.0, u, half1);
    rk4_step(t + hstep / 2.0, hstep / 2.0, half1, half2);
    double err = (half2 - full).cwiseAbs().maxCoeff();
    double budget = tol * hstep / t_ns;
    if (err <= budget || hstep <= 1e-9) {
      // Accept the Richardson-extrapolated value (one order higher).
      u = half2 + (half2 - full) / 15.0;
      t += hstep;
      if (err < 0.1 * budget) step = hstep * 1.9;
    } else {
      double scale = 0.8 * std::pow(budget / err, 0.2);
      step = hstep * std::clamp(scale, 0.1, 0.9);
    }
  }
  Propagator p;
  p.basis = h.basis;
  p.u = u;
  return p;
}

Propagator propagate_exact(const HamiltonianSpec& h, double t_ns) {
  const int m = h.dim();
  std::vector<int> level = assign_levels(h);
  SmallMat h0 = h.desired + h.colliding + h.colliding.transpose();
  for (int i = 0; i < m; ++i) h0(i, i) -= h.delta_rad_per_ns * level[i];
  SmallMatC expm = hermitian_exp(h0, t_ns);
  Propagator p;
  p.basis = h.basis;
  p.u.resize(m, m);
  for (int i = 0; i < m; ++i) {
    std::complex<double> ph =
        std::exp(-kI * (h.delta_rad_per_ns * static_cast<double>(level[i]) * t_ns));
    for (int j = 0; j < m; ++j) p.u(i, j) = ph * expm(i, j);
  }
  return p;
}

Propagator ideal_gate(const CollisionCase& cse) {
  HamiltonianSpec h = build_hamiltonian(cse, 0.0, 0.0);
  Propagator p;
  p.basis = h.basis;
  p.u = hermitian_exp(h.desired, cse.t_g_ns);
  return p;
}

Eigen::MatrixXcd project_to_computational(const Propagator& p, int n_qubits) {
  const int d = 1 << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  std::map<int, int> comp_to_span;  // computational index -> span index
  for (std::size_t k = 0; k < p.basis.size(); ++k)
    if (p.basis[k].computational())
      comp_to_span[p.basis[k].computational_index()] = static_cast<int>(k);
  for (int i = 0; i < d; ++i) {
    auto it_i = comp_to_span.find(i);
    for (int j = 0; j < d; ++j) {
      auto it_j = comp_to_span.find(j);
      if (it_i != comp_to_span.end() && it_j != comp_to_span.end())
        m(i, j) = p.u(it_i->second, it_j->second);
      else if (i == j && it_i == comp_to_span.end())
        m(i, j) = 1.0;  // untouched state acts as identity
    }
  }
  return m;
}

double average_gate_fidelity(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& u_g) {
  if (m.rows() != u_g.rows() || m.cols() != u_g.cols() || m.rows() != m.cols())
    throw InputError("average_gate_fidelity: dimension mismatch");
  const double d = static_cast<double>(m.rows());
  std::complex<double> tr1 = (m * u_g.adjoint()).trace();
  double tr2 = (m * m.adjoint()).trace().real();
  return (std::norm(tr1) + tr2) / (d * (d + 1.0));
}

double collision_fidelity(const CollisionCase& cse, double delta_mhz, double g_mhz) {
  HamiltonianSpec h = build_hamiltonian(cse, std::abs(delta_mhz), g_mhz);
  Propagator u = propagate_exact(h, cse.t_g_ns);
  Eigen::MatrixXcd m = project_to_computational(u, cse.n_qubits);
  Eigen::MatrixXcd ug = project_to_computational(ideal_gate(cse), cse.n_qubits);
  return average_gate_fidelity(m, ug);
}

double collision_fidelity_integrated(const CollisionCase& cse, double delta_mhz,
                                     double g_mhz, double tol) {
  HamiltonianSpec h = build_hamiltonian(cse, std::abs(delta_mhz), g_mhz);
  Propagator u = propagate(h, cse.t_g_ns, tol);
  Eigen::MatrixXcd m = project_to_computational(u, cse.n_qubits);
  Eigen::MatrixXcd ug = project_to_computational(ideal_gate(cse), cse.n_qubits);
  return average_gate_fidelity(m, ug);
}

}  // namespace qcrowd
