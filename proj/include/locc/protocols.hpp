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
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locc/errors.hpp"
#include "locc/linalg.hpp"
#include "locc/matrix.hpp"
#include "locc/states.hpp"
#include "locc/tree.hpp"

namespace locc {

namespace detail {

/// Eigenbasis of r·σ for a real unit vector r, as two columns.
inline std::array<ComplexMatrix, 2> bloch_basis(const std::array<double, 3>& r) {
  const ComplexMatrix h = r[0] * pauli(1) + r[1] * pauli(2) + r[2] * pauli(3);
  const EigenDecomposition e = eig_hermitian(h);
  return {block(e.eigenvectors, 0, 0, 2, 1), block(e.eigenvectors, 0, 1, 2, 1)};
}

/// Orthonormal qubit basis {a} with ⟨a|N|a⟩ = 0 for a traceless 2×2 unitary N.
/// N = e^{iφ} n·σ, so any basis along a Bloch axis orthogonal to n works.
inline std::array<ComplexMatrix, 2> zero_diagonal_basis(const ComplexMatrix& n) {
  const cplx phase = std::sqrt(-(n(0, 0) * n(1, 1) - n(0, 1) * n(1, 0)));
  const ComplexMatrix h = (1.0 / phase) * n;
  std::array<double, 3> axis{};
  for (int k = 0; k < 3; ++k) axis[k] = 0.5 * trace(h * pauli(k + 1)).real();
  int smallest = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(axis[k]) < std::abs(axis[smallest])) smallest = k;
  std::array<double, 3> e{};
  e[smallest] = 1.0;
  std::array<double, 3> r = {axis[1] * e[2] - axis[2] * e[1], axis[2] * e[0] - axis[0] * e[2],
                             axis[0] * e[1] - axis[1] * e[0]};
  const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  for (auto& x : r) x /= len;
  return bloch_basis(r);
}

/// Two-state discrimination on the qubit factor of (S1 ⊗ qubit) for both
/// parties; the S1 factor (dimension s1) is left alone.
inline ProtocolTree qubit_pair_tree(const ComplexMatrix& ua, const ComplexMatrix& ub, std::size_t label_a,
                                    std::size_t label_b, std::size_t s1) {
  const auto basis = zero_diagonal_basis(adjoint(ua) * ub);
  const ComplexMatrix id = ComplexMatrix::identity(s1);
  std::vector<ComplexMatrix> alice;
  std::vector<ProtocolTree> branches;
  for (const auto& a : basis) {
    alice.push_back(kron(id, projector(conjugate(a))));
    const ComplexMatrix pa = projector(ua * a);
    const ComplexMatrix pb = projector(ub * a);
    branches.push_back(ProtocolTree::measure(Party::B, {kron(id, pa), kron(id, pb)},
                                             {ProtocolTree::decide(label_a), ProtocolTree::decide(label_b)},
                                             "bob-pair"));
  }
  return ProtocolTree::measure(Party::A, std::move(alice), std::move(branches), "alice-pair");
}

/// Bob's projective test on (S1 ⊗ S2) for candidates (1/√2) Σ_t |offset+t⟩ ⊗ σ|t⟩;
/// the complement of their span decides the first candidate.
inline ProtocolTree bell_decision(std::size_t s1, std::size_t offset,
                                  const std::vector<std::pair<ComplexMatrix, std::size_t>>& candidates) {
  const std::size_t n = 2 * s1;
  std::vector<ComplexMatrix> kraus;
  std::vector<ProtocolTree> leaves;
  ComplexMatrix rest = ComplexMatrix::identity(n);
  for (const auto& [sigma, label] : candidates) {
    ComplexMatrix v(n, 1);
    for (std::size_t t = 0; t < 2; ++t)
      for (std::size_t s = 0; s < 2; ++s) v[(offset + t) * 2 + s] = sigma(s, t) / std::numbers::sqrt2;
    const ComplexMatrix p = projector(v);
    kraus.push_back(p);
    rest = rest - p;
    leaves.push_back(ProtocolTree::decide(label));
  }
  kraus.push_back(rest);
  leaves.push_back(ProtocolTree::decide(candidates.front().second));
  return ProtocolTree::measure(Party::B, std::move(kraus), std::move(leaves), "bob-bell");
}

}  // namespace detail

/// Perfect one-way discrimination of (I ⊗ ua)|Φ₂⟩ and (I ⊗ ub)|Φ₂⟩, decided as 0 and 1.
inline ProtocolTree bell_pair_discriminator(const ComplexMatrix& ua, const ComplexMatrix& ub) {
  if (ua.rows() != 2 || ua.cols() != 2 || ub.rows() != 2 || ub.cols() != 2)
    throw Error(ErrorCode::DimensionMismatch, "Bell-pair discriminator works on qubits");
  if (!is_unitary(ua, kDecisionTol) || !is_unitary(ub, kDecisionTol))
    throw Error(ErrorCode::NotUnitary, "Bell-pair operators must be unitary");
  if (std::abs(hs_inner(ua, ub)) > kDecisionTol) throw Error(ErrorCode::NotOrthogonal, "Tr(ua† ub) must vanish");
  return detail::qubit_pair_tree(ua, ub, 0, 1, 1);
}

/// Where the teleportation channel lives. Each party holds S1 ⊗ S2 with S2 a
/// qubit. The channel is (1/√c) Σ_l |offset+l⟩_A ⊗ S|l⟩_B on levels
/// offset..offset+c−1 of S1; Alice's S2 half is teleported into Bob's S1
/// levels offset, offset+1.
struct TeleportLayout {
  std::size_t s1_dim = 2;
  std::size_t offset = 0;
  std::size_t channel_dim = 2;
  ComplexMatrix channel_unitary;  // S; identity when empty
  bool apply_corrections = true;
};

/// Generalized Bell measurement by Alice, Heisenberg–Weyl correction by Bob,
/// then `continuation` (which acts on Bob's S1 ⊗ S2).
inline ProtocolTree teleport_subprotocol(const TeleportLayout& lay, const ProtocolTree& continuation) {
  const std::size_t c = lay.channel_dim;
  if (c < 2) throw Error(ErrorCode::ChannelTooSmall, "teleportation needs a channel of dimension at least 2");
  if (lay.offset + c > lay.s1_dim) throw Error(ErrorCode::DimensionMismatch, "channel does not fit in S1");
  const ComplexMatrix s = lay.channel_unitary.size() == 0 ? ComplexMatrix::identity(c) : lay.channel_unitary;
  if (s.rows() != c || !is_unitary(s, kDecisionTol))
    throw Error(ErrorCode::NotUnitary, "channel unitary must be a c×c unitary");
  const std::size_t s1 = lay.s1_dim;
  const ComplexMatrix x = cyclic_shift(c);
  const ComplexMatrix z = clock(c);

  // Bob's correction X^v Z^u S† on the channel levels, identity elsewhere.
  auto correction = [&](std::size_t u, std::size_t v) {
    const ComplexMatrix local = matrix_power(x, static_cast<int>(v)) * matrix_power(z, static_cast<int>(u)) * adjoint(s);
    ComplexMatrix full = ComplexMatrix::identity(s1);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) full(lay.offset + i, lay.offset + j) = local(i, j);
    return kron(full, ComplexMatrix::identity(2));
  };

  const std::size_t n = s1 * c;
  ComplexMatrix rest = ComplexMatrix::identity(n);
  std::vector<ComplexMatrix> kraus;
  std::vector<ProtocolTree> branches;
  for (std::size_t u = 0; u < c; ++u)
    for (std::size_t v = 0; v < c; ++v) {
      ComplexMatrix b(n, 1);
      for (std::size_t l = 0; l < c; ++l)
        b[(lay.offset + l) * c + (l + v) % c] =
            phase_turns(static_cast<double>(u * l % c) / static_cast<double>(c)) / std::sqrt(static_cast<double>(c));
      const ComplexMatrix p = projector(b);
      kraus.push_back(p);
      rest = rest - p;
      branches.push_back(lay.apply_corrections
                             ? ProtocolTree::apply(Party::B, correction(u, v), continuation, "bob-correct")
                             : continuation);
    }
  // Levels of S1 outside the channel carry no weight; fold them into (0, 0).
  kraus.front() = kraus.front() + rest;
  ProtocolTree t = ProtocolTree::measure(Party::A, std::move(kraus), std::move(branches), "alice-bell");
  if (c == 2) return t;
  ComplexMatrix embed(c, 2);
  embed(0, 0) = 1.0;
  embed(1, 1) = 1.0;
  return ProtocolTree::apply(Party::A, kron(ComplexMatrix::identity(s1), embed), std::move(t), "alice-embed");
}

// ---------------------------------------------------------------------------
// Two-way protocol for the even-d family

struct EvenRotation {
  int j = 0;         // Pauli applied on the |0⟩ block
  cplx omega;        // phases after the rotation
  cplx gamma;
  std::array<double, 3> p{};  // p₀ + p₁ω′ + p₂γ′ = 0
};

/// The unique W_j = σ_j ⊕ I after which Im ω̄′, Im γ′ and Im(γ̄′ω′) share a sign.
inline EvenRotation even_rotation(cplx omega, cplx gamma) {
  constexpr double kMargin = 1e-9;
  std::vector<EvenRotation> hits;
  for (int j = 0; j < 4; ++j) {
    // σ_j anticommutes with X for j ∈ {Y, Z} and with Z for j ∈ {X, Y}.
    const cplx w = (j == 2 || j == 3) ? -omega : omega;
    const cplx g = (j == 1 || j == 2) ? -gamma : gamma;
    const double a = std::conj(w).imag();
    const double b = g.imag();
    const double c = (std::conj(g) * w).imag();
    const bool pos = a > kMargin && b > kMargin && c > kMargin;
    const bool neg = a < -kMargin && b < -kMargin && c < -kMargin;
    if (pos || neg) {
      EvenRotation r;
      r.j = j;
      r.omega = w;
      r.gamma = g;
      r.p = {std::abs((std::conj(w) * g).imag()), std::abs(g.imag()), std::abs(w.imag())};
      hits.push_back(r);
    }
  }
  if (hits.size() != 1) throw Error(ErrorCode::SpecInvalid, "no unique sign-fixing rotation for these phases");
  return hits.front();
}

inline ProtocolTree build_twoway_even(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::EvenD) throw Error(ErrorCode::SpecInvalid, "expected an even-d family");
  const MaxEntSet set = build_even_family(spec);  // validates d and phases
  const std::size_t m = set.d / 2;
  const EvenRotation rot = even_rotation(spec.omega, spec.gamma);
  const std::array<cplx, 3> alpha = {1.0, rot.omega, rot.gamma};
  const std::array<ComplexMatrix, 3> sigma = {pauli(0), pauli(1), pauli(3)};
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const double psum = rot.p[0] + rot.p[1] + rot.p[2];

  std::vector<ComplexMatrix> alice;
  std::vector<ProtocolTree> branches;
  if (m > 2) {
    ComplexMatrix rest = ComplexMatrix::identity(m);
    rest(0, 0) = 0.0;
    alice.push_back(std::sqrt((m - 2.0) / (m - 1.0)) * kron(rest, id2));
    TeleportLayout lay;
    lay.s1_dim = m;
    lay.offset = 1;
    lay.channel_dim = m - 1;
    const ProtocolTree decide = detail::bell_decision(m, 1, {{sigma[0], 0}, {sigma[1], 1}, {sigma[2], 2}});
    branches.push_back(teleport_subprotocol(lay, decide));
  }
  for (std::size_t j = 1; j < m; ++j)
    for (int k = 0; k < 2; ++k) {
      const double sign = k == 0 ? 1.0 : -1.0;
      ComplexMatrix a(m, 1);
      a[0] = 1.0 / std::numbers::sqrt2;
      a[j] = sign / std::numbers::sqrt2;
      alice.push_back((1.0 / std::sqrt(m - 1.0)) * kron(projector(a), id2));

      // Bob's candidate S1 states are T_α|a⟩; b_i is orthogonal to the i-th one.
      ComplexMatrix rest = ComplexMatrix::identity(m);
      rest(0, 0) = 0.0;
      rest(j, j) = 0.0;
      std::vector<ComplexMatrix> bob;
      std::vector<ProtocolTree> finals;
      for (std::size_t i = 0; i < 3; ++i) {
        ComplexMatrix b(m, 1);
        b[0] = 1.0 / std::numbers::sqrt2;
        b[j] = -sign * std::conj(alpha[i]) / std::numbers::sqrt2;
        ComplexMatrix op = std::sqrt(2.0 * rot.p[i] / psum) * projector(b);
        if (i == 0) op = op + rest;
        bob.push_back(kron(op, id2));
        // State i is ruled out; tell the remaining two apart on the qubit.
        const std::size_t p = i == 0 ? 1 : 0;
        const std::size_t q = i == 2 ? 1 : 2;
        finals.push_back(detail::qubit_pair_tree(sigma[p], sigma[q], p, q, m));
      }
      branches.push_back(ProtocolTree::measure(Party::B, std::move(bob), std::move(finals), "bob-eliminate"));
    }
  ProtocolTree t = ProtocolTree::measure(Party::A, std::move(alice), std::move(branches), "alice-A");
  if (rot.j == 0) return t;
  ComplexMatrix w = ComplexMatrix::identity(2 * m);
  const ComplexMatrix s = pauli(rot.j);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) w(r, c) = s(r, c);
  t = ProtocolTree::apply(Party::B, w, std::move(t), "bob-rotate");
  return ProtocolTree::apply(Party::A, conjugate(w), std::move(t), "alice-rotate");
}

// ---------------------------------------------------------------------------
// Two-way protocol for the mod-3 family (r = 1)

/// Bob's 15×5 isometry; its adjoint is the 5×15 matrix whose columns are the
/// twelve Pauli-eigenvector rows plus the three √10 standard-basis rows.
inline ComplexMatrix mod3_isometry(cplx omega, cplx gamma) {
  const double s3 = std::sqrt(3.0);
  const double h = std::sqrt(1.5);
  const double t = std::sqrt(10.0);
  const cplx wb = std::conj(omega);
  const cplx gb = std::conj(gamma);
  const cplx iwg = 1i * omega * gb;
  const cplx I = 1i;
  ComplexMatrix ws(5, 15);
  const std::array<std::array<cplx, 15>, 5> rows = {{
      {s3, -s3, 0, 0, h, -h, h, -h, h, -h, h, -h, 0, 0, 0},
      {0, 0, s3, -s3, h, -h, -h, h, -I * h, I * h, I * h, -I * h, 0, 0, 0},
      {1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, t, 0, 0},
      {0, 0, 0, 0, -wb, -wb, wb, wb, 1, 1, 1, 1, 0, t, 0},
      {-gb, -gb, gb, gb, 0, 0, 0, 0, -iwg, -iwg, iwg, iwg, 0, 0, t},
  }};
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 15; ++c) ws(r, c) = rows[r][c] / std::sqrt(18.0);
  return adjoint(ws);
}

/// Alice's outcome-k operator A_k = (1/3)|0⟩⟨0| + (1/3)|1⟩⟨1| + |k+2⟩⟨k+2| (real diagonal).
inline ComplexMatrix mod3_alice_element(std::size_t k) {
  ComplexMatrix a(5, 5);
  a(0, 0) = 1.0 / 3.0;
  a(1, 1) = 1.0 / 3.0;
  a(k + 2, k + 2) = 1.0;
  return a;
}

inline ProtocolTree build_twoway_mod3(const FamilySpec& spec) {
  if (spec.kind != FamilyKind::Mod3) throw Error(ErrorCode::SpecInvalid, "expected a mod-3 family");
  if (spec.r != 1 || spec.d != 5) throw Error(ErrorCode::UnsupportedR, "only r = 1 (d = 5) is implemented");
  const MaxEntSet set = build_mod3_family(spec);
  const ComplexMatrix w0 = mod3_isometry(spec.omega, spec.gamma);
  const ComplexMatrix a0_half = sqrt_psd(mod3_alice_element(0));

  // After Bob measures |x⟩ Alice holds (U_i A₀^{1/2})ᵀ W₀ᵀ|x⟩ for state i.
  std::vector<ComplexMatrix> bob_kraus;
  std::vector<ProtocolTree> bob_branches;
  for (std::size_t x = 0; x < 15; ++x) {
    const ComplexMatrix ex = ComplexMatrix::basis_vector(15, x);
    bob_kraus.push_back(projector(ex));
    std::vector<ComplexMatrix> alice;
    std::vector<ProtocolTree> leaves;
    std::vector<ComplexMatrix> accepted;
    ComplexMatrix rest = ComplexMatrix::identity(5);
    for (std::size_t i = 0; i < 3; ++i) {
      ComplexMatrix e = transpose(w0 * set.unitaries[i] * a0_half) * ex;
      for (const auto& f : accepted) e = e - hs_inner(f, e) * f;
      if (frobenius_norm(e) < 1e-12) continue;
      e = normalized(e);
      accepted.push_back(e);
      alice.push_back(projector(e));
      rest = rest - projector(e);
      leaves.push_back(ProtocolTree::decide(i));
    }
    alice.push_back(rest);
    leaves.push_back(ProtocolTree::decide(0));
    bob_branches.push_back(ProtocolTree::measure(Party::A, std::move(alice), std::move(leaves), "alice-final"));
  }
  const ProtocolTree after_zero = ProtocolTree::apply(
      Party::B, w0, ProtocolTree::measure(Party::B, std::move(bob_kraus), std::move(bob_branches), "bob-standard"),
      "bob-embed");

  // Outcome k is outcome 0 conjugated by G = I₂ ⊕ Q^k; undo it locally.
  std::vector<ComplexMatrix> alice;
  std::vector<ProtocolTree> branches;
  for (std::size_t k = 0; k < 3; ++k) {
    alice.push_back(sqrt_psd(transpose(mod3_alice_element(k))));
    if (k == 0) {
      branches.push_back(after_zero);
      continue;
    }
    const ComplexMatrix g = direct_sum(ComplexMatrix::identity(2), matrix_power(cyclic_shift(3), static_cast<int>(k)));
    ProtocolTree t = ProtocolTree::apply(Party::B, adjoint(g), after_zero, "bob-undo");
    branches.push_back(ProtocolTree::apply(Party::A, transpose(g), std::move(t), "alice-undo"));
  }
  return ProtocolTree::measure(Party::A, std::move(alice), std::move(branches), "alice-A");
}

// ---------------------------------------------------------------------------
// Lattice triples (one-way)

namespace detail {
/// Pauli label of σ_a σ_b up to phase (I=0, X=1, Y=2, Z=3).
inline int pauli_product_label(int a, int b) { return a ^ b; }

/// A Pauli c ≠ I anticommuting with both labels (so ⟨a|σ_l|a⟩ = 0 on its eigenbasis).
inline int avoiding_axis(int l0, int l1) {
  for (int c = 1; c < 4; ++c)
    if (c != l0 && c != l1) return c;
  throw Error(ErrorCode::RelabelingNotFound, "no free Pauli axis");
}

inline std::array<ComplexMatrix, 2> pauli_eigenbasis(int c) {
  std::array<double, 3> r{};
  r[c - 1] = 1.0;
  return bloch_basis(r);
}
}  // namespace detail

inline ProtocolTree build_lattice_triple_protocol(const std::vector<std::vector<int>>& indices) {
  if (indices.size() != 3) throw Error(ErrorCode::SpecInvalid, "lattice protocol takes three states");
  for (const auto& s : indices)
    if (s.size() != 2 || s[0] < 0 || s[0] > 3 || s[1] < 0 || s[1] > 3)
      throw Error(ErrorCode::SpecInvalid, "lattice states are pairs in 0..3");
  check_distinct_strings(indices, ErrorCode::DuplicateStates);

  auto constant = [&](int coord) {
    return indices[0][coord] == indices[1][coord] && indices[1][coord] == indices[2][coord];
  };
  for (int coord = 0; coord < 2; ++coord) {
    if (!constant(coord)) continue;
    // The constant factor is a shared Bell pair: teleport the other half over it.
    const int other = 1 - coord;
    TeleportLayout lay;
    lay.s1_dim = 2;
    lay.offset = 0;
    lay.channel_dim = 2;
    lay.channel_unitary = pauli(indices[0][coord]);
    std::vector<std::pair<ComplexMatrix, std::size_t>> cands;
    for (std::size_t i = 0; i < 3; ++i) cands.emplace_back(pauli(indices[i][other]), i);
    ProtocolTree t = teleport_subprotocol(lay, detail::bell_decision(2, 0, cands));
    if (coord == 0) return t;
    ComplexMatrix swap(4, 4);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) swap(b * 2 + a, a * 2 + b) = 1.0;
    t = ProtocolTree::apply(Party::B, swap, std::move(t), "bob-swap");
    return ProtocolTree::apply(Party::A, swap, std::move(t), "alice-swap");
  }

  std::array<std::size_t, 3> perm = {0, 1, 2};
  bool found = false;
  do {
    const auto& s0 = indices[perm[0]];
    const auto& s1 = indices[perm[1]];
    const auto& s2 = indices[perm[2]];
    if (s1[0] != s0[0] && s1[0] != s2[0] && s2[1] != s0[1] && s2[1] != s1[1]) {
      found = true;
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!found) throw Error(ErrorCode::RelabelingNotFound, "no ordering isolates one state per factor");

  const auto& s0 = indices[perm[0]];
  const auto& s1 = indices[perm[1]];
  const auto& s2 = indices[perm[2]];
  // Factor 1 singles out state 1 by its x label, factor 2 singles out state 2 by its y label.
  const auto basis_x = detail::pauli_eigenbasis(detail::avoiding_axis(detail::pauli_product_label(s0[0], s1[0]),
                                                                      detail::pauli_product_label(s2[0], s1[0])));
  const auto basis_y = detail::pauli_eigenbasis(detail::avoiding_axis(detail::pauli_product_label(s0[1], s2[1]),
                                                                      detail::pauli_product_label(s1[1], s2[1])));
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  std::vector<ComplexMatrix> alice;
  std::vector<ProtocolTree> branches;
  for (const auto& a : basis_x)
    for (const auto& b : basis_y) {
      alice.push_back(kron(projector(conjugate(a)), projector(conjugate(b))));
      const ComplexMatrix p = projector(pauli(s1[0]) * a);
      const ComplexMatrix q = projector(pauli(s2[1]) * b);
      std::vector<ComplexMatrix> bob = {kron(id2 - p, id2 - q), kron(p, id2 - q), kron(id2 - p, q), kron(p, q)};
      std::vector<ProtocolTree> leaves = {ProtocolTree::decide(perm[0]), ProtocolTree::decide(perm[1]),
                                          ProtocolTree::decide(perm[2]), ProtocolTree::decide(perm[0])};
      branches.push_back(ProtocolTree::measure(Party::B, std::move(bob), std::move(leaves), "bob-table"));
    }
  return ProtocolTree::measure(Party::A, std::move(alice), std::move(branches), "alice-product");
}

inline std::vector<std::vector<std::vector<int>>> all_lattice_triples() {
  std::vector<std::vector<int>> states;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) states.push_back({x, y});
  std::vector<std::vector<std::vector<int>>> out;
  for (std::size_t a = 0; a < 16; ++a)
    for (std::size_t b = a + 1; b < 16; ++b)
      for (std::size_t c = b + 1; c < 16; ++c) out.push_back({states[a], states[b], states[c]});
  return out;
}

/// Built-in two-way protocol for a family, if one exists.
inline ProtocolTree build_twoway(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::EvenD: return build_twoway_even(spec);
    case FamilyKind::Mod3: return build_twoway_mod3(spec);
    case FamilyKind::LatticeTriple: return build_lattice_triple_protocol(spec.lattice_indices);
    case FamilyKind::KState:
    case FamilyKind::Custom: break;
  }
  throw Error(ErrorCode::SpecInvalid, "no protocol is known for this family");
}

}  // namespace locc
