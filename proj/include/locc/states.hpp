// Copyright 2026 The locc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "locc/errors.hpp"
#include "locc/linalg.hpp"
#include "locc/matrix.hpp"

namespace locc {

enum class FamilyKind { EvenD, Mod3, KState, LatticeTriple, Custom };

/// Parameters of one of the built-in families of maximally entangled states.
///
/// `lattice_indices` holds one Pauli string per state; entry i of a string
/// selects σ_i ∈ {I, X, Y, Z} on one qubit. Pairs (x, y) are the two-qubit
/// lattice states; single-entry strings give the qubit Paulis themselves.
struct FamilySpec {
  FamilyKind kind = FamilyKind::EvenD;
  std::size_t d = 4;
  std::size_t k = 3;
  std::size_t r = 1;
  cplx omega = phase_turns(0.13);
  cplx gamma = phase_turns(0.29);
  std::vector<cplx> alphas;
  std::vector<std::vector<int>> lattice_indices;
  bool allow_degenerate = false;
};

/// Phase margin below which a family counts as degenerate.
inline constexpr double kGenericityMargin = 1e-6;

inline std::vector<cplx> default_alphas(std::size_t k) {
  std::vector<cplx> out;
  for (std::size_t i = 0; i < k; ++i) {
    const double x = static_cast<double>(i);
    out.push_back(phase_turns(0.07 + 0.11 * x));
  }
  return out;
}

inline std::vector<std::vector<int>> default_lattice_base() { return {{0, 0}, {1, 1}, {2, 2}, {3, 3}}; }

inline FamilySpec even_spec(std::size_t d, cplx omega = phase_turns(0.13), cplx gamma = phase_turns(0.29)) {
  FamilySpec s;
  s.kind = FamilyKind::EvenD;
  s.d = d;
  s.k = 3;
  s.r = d / 2;
  s.omega = omega;
  s.gamma = gamma;
  return s;
}

inline FamilySpec mod3_spec(std::size_t d, cplx omega = phase_turns(0.13), cplx gamma = phase_turns(0.29)) {
  FamilySpec s;
  s.kind = FamilyKind::Mod3;
  s.d = d;
  s.k = 3;
  s.r = d >= 2 ? (d - 2) / 3 : 0;
  s.omega = omega;
  s.gamma = gamma;
  return s;
}

inline FamilySpec kstate_spec(std::size_t r, std::vector<std::vector<int>> base = default_lattice_base(),
                              std::vector<cplx> alphas = {}) {
  FamilySpec s;
  s.kind = FamilyKind::KState;
  s.k = base.size();
  s.r = r;
  s.lattice_indices = std::move(base);
  s.alphas = alphas.empty() ? default_alphas(s.k) : std::move(alphas);
  const std::size_t n = s.lattice_indices.empty() ? 0 : s.lattice_indices.front().size();
  s.d = (std::size_t{1} << n) + s.k * r;
  return s;
}

inline FamilySpec lattice_triple_spec(std::vector<std::vector<int>> indices) {
  FamilySpec s;
  s.kind = FamilyKind::LatticeTriple;
  s.d = 4;
  s.k = indices.size();
  s.lattice_indices = std::move(indices);
  return s;
}

/// Unitaries U_i; the states are |ψ_i⟩ = (I ⊗ U_i)|Φ⟩.
struct MaxEntSet {
  std::size_t d = 0;
  std::vector<ComplexMatrix> unitaries;
  FamilySpec spec;

  std::size_t size() const noexcept { return unitaries.size(); }
};

/// (1/√d) Σ_j |j⟩⊗|j⟩ as a d²-entry column.
inline ComplexMatrix std_mes(std::size_t d) {
  ComplexMatrix phi(d * d, 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) phi[j * d + j] = amp;
  return phi;
}

namespace detail {
// (I⊗u)|Φ⟩ without the unitarity check: entry (a, b) is u(b, a)/√d.
inline ComplexMatrix state_of_unchecked(const ComplexMatrix& u) {
  const std::size_t d = u.rows();
  ComplexMatrix psi(d * d, 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) psi[a * d + b] = amp * u(b, a);
  return psi;
}
}  // namespace detail

inline ComplexMatrix state_of(const ComplexMatrix& u) {
  if (!u.is_square() || !is_unitary(u)) throw Error(ErrorCode::NotUnitary, "state_of needs a unitary");
  return detail::state_of_unchecked(u);
}

inline std::vector<ComplexMatrix> states_of(const MaxEntSet& set) {
  std::vector<ComplexMatrix> out;
  for (const auto& u : set.unitaries) out.push_back(state_of(u));
  return out;
}

/// Genericity predicate of a family, with the smallest margin that decided it.
struct Genericity {
  bool generic = true;
  double margin = INFINITY;
  std::string detail;
};

inline Genericity genericity(const FamilySpec& spec) {
  Genericity g;
  auto require = [&](double value, const std::string& what) {
    g.margin = std::min(g.margin, value);
    if (value <= kGenericityMargin) {
      g.generic = false;
      if (!g.detail.empty()) g.detail += "; ";
      g.detail += what;
    }
  };
  switch (spec.kind) {
    case FamilyKind::EvenD:
      require(std::abs(spec.omega.imag()), "omega is real");
      require(std::abs(spec.gamma.imag()), "gamma is real");
      require(std::abs((std::conj(spec.omega) * spec.gamma).imag()), "conj(omega)*gamma is real");
      break;
    case FamilyKind::Mod3:
      // γ = ±iω² exactly when conj(ω)²γ is purely imaginary.
      require(std::abs((std::conj(spec.omega) * std::conj(spec.omega) * spec.gamma).real()), "gamma = ±i omega^2");
      break;
    case FamilyKind::KState: {
      const auto& a = spec.alphas;
      for (std::size_t j = 1; j + 1 < a.size(); ++j) {
        // j = 0 is trivially 1, so the check starts at j = 1.
        const cplx c = a[0] * std::conj(a[j]) * a[1] * std::conj(a[j + 1]);
        require(std::abs(std::pow(c, 4) - 1.0), "alpha product " + std::to_string(j) + " has unit fourth power");
      }
      break;
    }
    case FamilyKind::LatticeTriple:
    case FamilyKind::Custom:
      break;
  }
  return g;
}

namespace detail {
inline void check_unit(cplx z, const char* name) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    throw Error(ErrorCode::SpecInvalid, std::string(name) + " must have unit modulus");
  }
}
inline void check_generic(const FamilySpec& spec) {
  const Genericity g = genericity(spec);
  if (!g.generic && !spec.allow_degenerate) {
    throw Error(ErrorCode::SpecInvalid, "degenerate phases (" + g.detail + "); pass allow_degenerate to build anyway");
  }
}
}  // namespace detail

/// σ_{s0} ⊗ σ_{s1} ⊗ …
inline ComplexMatrix lattice_operator(const std::vector<int>& pauli_string) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int s : pauli_string) {
    if (s < 0 || s > 3) throw Error(ErrorCode::SpecInvalid, "lattice index outside 0..3");
    out = kron(out, pauli(s));
  }
  return out;
}

/// σ_x ⊗ σ_y
inline ComplexMatrix build_lattice_state(int x, int y) { return lattice_operator({x, y}); }

inline MaxEntSet build_even_family(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::EvenD) throw Error(ErrorCode::SpecInvalid, "expected an even-d spec");
  if (spec.d < 4 || spec.d % 2 != 0) throw Error(ErrorCode::SpecInvalid, "even family needs even d >= 4");
  detail::check_unit(spec.omega, "omega");
  detail::check_unit(spec.gamma, "gamma");
  detail::check_generic(spec);
  const std::size_t m = spec.d / 2;
  MaxEntSet set;
  set.d = spec.d;
  set.spec = spec;
  set.spec.k = 3;
  set.spec.r = m;
  set.unitaries = {ComplexMatrix::identity(spec.d), kron(phase_corner(m, spec.omega), pauli(1)),
                   kron(phase_corner(m, spec.gamma), pauli(3))};
  return set;
}

/// Q = P ⊗ I_r with P the k-cycle.
inline ComplexMatrix block_shift(std::size_t k, std::size_t r) {
  return kron(cyclic_shift(k), ComplexMatrix::identity(r));
}

inline MaxEntSet build_mod3_family(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::Mod3) throw Error(ErrorCode::SpecInvalid, "expected a mod-3 spec");
  if (spec.d < 5 || (spec.d - 2) % 3 != 0) throw Error(ErrorCode::SpecInvalid, "mod-3 family needs d = 2 + 3r, r >= 1");
  detail::check_unit(spec.omega, "omega");
  detail::check_unit(spec.gamma, "gamma");
  detail::check_generic(spec);
  const std::size_t r = (spec.d - 2) / 3;
  const ComplexMatrix q = block_shift(3, r);
  MaxEntSet set;
  set.d = spec.d;
  set.spec = spec;
  set.spec.k = 3;
  set.spec.r = r;
  set.unitaries = {ComplexMatrix::identity(spec.d), direct_sum(spec.omega * pauli(1), q),
                   direct_sum(spec.gamma * pauli(3), q * q)};
  return set;
}

inline void check_distinct_strings(const std::vector<std::vector<int>>& strings, ErrorCode code) {
  std::set<std::vector<int>> seen(strings.begin(), strings.end());
  if (seen.size() != strings.size()) throw Error(code, "lattice states are not distinct");
}

inline MaxEntSet build_k_family(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::KState) throw Error(ErrorCode::SpecInvalid, "expected a k-state spec");
  const auto& base = spec.lattice_indices;
  const std::size_t k = base.size();
  if (k < 2) throw Error(ErrorCode::SpecInvalid, "k-state family needs at least two base states");
  const std::size_t n = base.front().size();
  if (n == 0 || n > 5) throw Error(ErrorCode::SpecInvalid, "base Pauli strings must have 1..5 qubits");
  for (const auto& s : base)
    if (s.size() != n) throw Error(ErrorCode::SpecInvalid, "base Pauli strings differ in length");
  const std::size_t m = std::size_t{1} << n;
  if (k > m * m) throw Error(ErrorCode::SpecInvalid, "k exceeds m^2");
  if (spec.r < 1) throw Error(ErrorCode::SpecInvalid, "r must be >= 1");
  if (spec.alphas.size() != k) throw Error(ErrorCode::SpecInvalid, "need one alpha per state");
  for (const auto& a : spec.alphas) detail::check_unit(a, "alpha");
  check_distinct_strings(base, ErrorCode::NonOrthogonalBase);
  const std::size_t d = m + k * spec.r;
  if (spec.d != 0 && spec.d != d) throw Error(ErrorCode::SpecInvalid, "d must equal m + k·r = " + std::to_string(d));
  detail::check_generic(spec);

  const ComplexMatrix q = block_shift(k, spec.r);
  MaxEntSet set;
  set.d = d;
  set.spec = spec;
  set.spec.d = d;
  set.spec.k = k;
  ComplexMatrix qi = ComplexMatrix::identity(k * spec.r);
  for (std::size_t i = 0; i < k; ++i) {
    set.unitaries.push_back(direct_sum(spec.alphas[i] * lattice_operator(base[i]), qi));
    qi = qi * q;
  }
  return set;
}

inline MaxEntSet build_lattice_set(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::LatticeTriple) throw Error(ErrorCode::SpecInvalid, "expected a lattice spec");
  if (spec.lattice_indices.empty()) throw Error(ErrorCode::SpecInvalid, "no lattice indices given");
  for (const auto& s : spec.lattice_indices)
    if (s.size() != 2) throw Error(ErrorCode::SpecInvalid, "lattice states are index pairs");
  check_distinct_strings(spec.lattice_indices, ErrorCode::DuplicateStates);
  MaxEntSet set;
  set.d = 4;
  set.spec = spec;
  set.spec.d = 4;
  set.spec.k = spec.lattice_indices.size();
  for (const auto& s : spec.lattice_indices) set.unitaries.push_back(lattice_operator(s));
  return set;
}

inline MaxEntSet build_family(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::EvenD: return build_even_family(spec);
    case FamilyKind::Mod3: return build_mod3_family(spec);
    case FamilyKind::KState: return build_k_family(spec);
    case FamilyKind::LatticeTriple: return build_lattice_set(spec);
    case FamilyKind::Custom: break;
  }
  throw Error(ErrorCode::SpecInvalid, "custom families are built from explicit unitaries");
}

inline MaxEntSet custom_set(std::vector<ComplexMatrix> unitaries) {
  if (unitaries.empty()) throw Error(ErrorCode::SpecInvalid, "empty set");
  MaxEntSet set;
  set.d = unitaries.front().rows();
  for (const auto& u : unitaries)
    if (u.rows() != set.d || u.cols() != set.d) throw Error(ErrorCode::DimensionMismatch, "unitaries differ in size");
  set.spec.kind = FamilyKind::Custom;
  set.spec.d = set.d;
  set.spec.k = unitaries.size();
  set.unitaries = std::move(unitaries);
  return set;
}

/// Same states, reordered: result[i] = set[order[i]].
inline MaxEntSet reorder(const MaxEntSet& set, const std::vector<std::size_t>& order) {
  MaxEntSet out = set;
  out.unitaries.clear();
  for (std::size_t i : order) out.unitaries.push_back(set.unitaries.at(i));
  return out;
}

struct PairResidual {
  std::size_t i = 0;
  std::size_t j = 0;
  double residual = 0.0;  // |Tr(U_i† U_j)|
};

struct OrthogonalityReport {
  std::vector<double> unitarity_residuals;  // ‖U†U − I‖_F
  std::vector<PairResidual> pair_residuals;
  std::vector<double> reduced_state_residuals;  // ‖Tr_B|ψ⟩⟨ψ| − I/d‖_F
  bool unitary = true;
  bool orthogonal = true;
  bool maximally_entangled = true;
  bool pass = true;
};

inline OrthogonalityReport check_orthogonal_mes(const MaxEntSet& set, double tol = kDecisionTol) {
  OrthogonalityReport rep;
  const std::size_t d = set.d;
  const ComplexMatrix mixed = (1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d);
  for (const auto& u : set.unitaries) {
    const double ures = unitarity_residual(u);
    rep.unitarity_residuals.push_back(ures);
    rep.unitary = rep.unitary && ures <= tol;
    const ComplexMatrix psi = detail::state_of_unchecked(u);
    const double rres = frobenius_distance(reduced_state_a(psi, d, d), mixed);
    rep.reduced_state_residuals.push_back(rres);
    rep.maximally_entangled = rep.maximally_entangled && rres <= tol;
  }
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const double res = std::abs(hs_inner(set.unitaries[i], set.unitaries[j]));
      rep.pair_residuals.push_back({i, j, res});
      rep.orthogonal = rep.orthogonal && res <= tol;
    }
  rep.pass = rep.unitary && rep.orthogonal && rep.maximally_entangled;
  return rep;
}

}  // namespace locc
