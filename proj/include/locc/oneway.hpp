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
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locc/errors.hpp"
#include "locc/linalg.hpp"
#include "locc/matrix.hpp"
#include "locc/measurements.hpp"
#include "locc/states.hpp"
#include "locc/tree.hpp"

namespace locc {

// ---------------------------------------------------------------------------
// Rank-one first-measurement check

/// Alice's rank-one measurement written as a d×r coisometry W (W W† = I_d);
/// column norms carry the weights.
struct IsometryCandidate {
  ComplexMatrix w;
};

struct Prop1Pair {
  std::size_t i = 0;
  std::size_t j = 0;
  double max_abs_diagonal = 0.0;
};

struct Prop1Report {
  std::vector<Prop1Pair> pairs;
  double max_violation = 0.0;
  bool pass = true;
};

/// Checks that W†U_i†U_jW has zero diagonal for every i ≠ j. A pass means the
/// set is one-way distinguishable.
inline Prop1Report prop1_check(const MaxEntSet& set, const IsometryCandidate& cand, double tol = kDecisionTol) {
  const ComplexMatrix& w = cand.w;
  if (w.rows() != set.d) throw Error(ErrorCode::DimensionMismatch, "candidate has the wrong row count");
  const double res = frobenius_distance(w * adjoint(w), ComplexMatrix::identity(set.d));
  if (res > tol) throw Error(ErrorCode::NotCoisometry, "W W† differs from the identity by " + std::to_string(res));
  Prop1Report rep;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (i == j) continue;
      const ComplexMatrix g = adjoint(w) * adjoint(set.unitaries[i]) * set.unitaries[j] * w;
      double worst = 0.0;
      for (std::size_t c = 0; c < g.rows(); ++c) worst = std::max(worst, std::abs(g(c, c)));
      rep.pairs.push_back({i, j, worst});
      rep.max_violation = std::max(rep.max_violation, worst);
    }
  rep.pass = rep.max_violation <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Trace constraints on Alice's measurement

/// Hermitian d×d matrices as d² real coordinates: the diagonal first, then for
/// every p < q the pair (√2 Re M_pq, √2 Im M_pq). The scaling makes the map an
/// isometry for the Hilbert–Schmidt inner product.
inline std::size_t hermitian_coordinate_count(std::size_t d) { return d * d; }

inline ComplexMatrix hermitian_from_coordinates(std::span<const double> x, std::size_t d) {
  if (x.size() != d * d) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  ComplexMatrix m(d, d);
  for (std::size_t c = 0; c < d; ++c) m(c, c) = x[c];
  std::size_t idx = d;
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) {
      const cplx z = cplx(x[idx], x[idx + 1]) / std::numbers::sqrt2;
      m(p, q) = z;
      m(q, p) = std::conj(z);
      idx += 2;
    }
  return m;
}

inline std::vector<double> coordinates_of_hermitian(const ComplexMatrix& m) {
  const std::size_t d = m.rows();
  std::vector<double> x(d * d);
  for (std::size_t c = 0; c < d; ++c) x[c] = m(c, c).real();
  std::size_t idx = d;
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) {
      x[idx] = std::numbers::sqrt2 * m(p, q).real();
      x[idx + 1] = std::numbers::sqrt2 * m(p, q).imag();
      idx += 2;
    }
  return x;
}

struct ConstraintSystem {
  std::size_t d = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  RealMatrix real_matrix;  // rows 2t, 2t+1: Re and Im of Tr(U_j†U_i M) for pairs[t]

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> out(real_matrix.rows(), 0.0);
    for (std::size_t r = 0; r < real_matrix.rows(); ++r)
      for (std::size_t c = 0; c < real_matrix.cols(); ++c) out[r] += real_matrix(r, c) * x[c];
    return out;
  }
};

inline ConstraintSystem build_constraint_system(const MaxEntSet& set) {
  const std::size_t d = set.d;
  ConstraintSystem cs;
  cs.d = d;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) cs.pairs.emplace_back(i, j);
  cs.real_matrix = RealMatrix(2 * cs.pairs.size(), d * d);
  for (std::size_t t = 0; t < cs.pairs.size(); ++t) {
    const auto [i, j] = cs.pairs[t];
    // Tr(G M) = Σ_{a,b} G_ab M_ba
    const ComplexMatrix g = adjoint(set.unitaries[j]) * set.unitaries[i];
    auto put = [&](std::size_t col, cplx coef) {
      cs.real_matrix(2 * t, col) = coef.real();
      cs.real_matrix(2 * t + 1, col) = coef.imag();
    };
    for (std::size_t c = 0; c < d; ++c) put(c, g(c, c));
    std::size_t idx = d;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        put(idx, (g(q, p) + g(p, q)) / std::numbers::sqrt2);
        put(idx + 1, 1i * (g(q, p) - g(p, q)) / std::numbers::sqrt2);
        idx += 2;
      }
  }
  return cs;
}

struct NullspaceBasis {
  std::vector<ComplexMatrix> basis;  // Hermitian, orthonormal in Tr(A†B)
  std::vector<double> singular_values;
  std::vector<double> residuals;  // constraint residual of each basis element
};

inline NullspaceBasis nullspace(const ConstraintSystem& cs, double rel_threshold = 1e-8) {
  const std::size_t n = cs.d * cs.d;
  NullspaceBasis out;
  if (cs.real_matrix.rows() == 0) {
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<double> x(n, 0.0);
      x[c] = 1.0;
      out.basis.push_back(hermitian_from_coordinates(x, cs.d));
      out.residuals.push_back(0.0);
    }
    return out;
  }
  const NullspaceResult ns = real_nullspace(cs.real_matrix, rel_threshold);
  out.singular_values = ns.singular_values;
  for (std::size_t c = 0; c < ns.basis.cols(); ++c) {
    std::vector<double> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = ns.basis(r, c);
    double res = 0.0;
    for (double v : cs.apply(x)) res += v * v;
    out.residuals.push_back(std::sqrt(res));
    out.basis.push_back(hermitian_from_coordinates(x, cs.d));
  }
  return out;
}

enum class Conclusion { OneWayImpossible, Inconclusive };

inline const char* to_string(Conclusion c) {
  return c == Conclusion::OneWayImpossible ? "OneWayImpossible" : "Inconclusive";
}

struct ImpossibilityCertificate {
  FamilySpec family;
  std::size_t nullspace_dim = 0;
  std::size_t top_block_size = 0;
  std::size_t top_block_image_dim = 0;
  bool forced_scalar = false;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::vector<double> residuals;             // ‖A − (Tr A/m) I‖_F per basis element
  std::vector<double> constraint_residuals;  // per basis element
  std::vector<double> singular_values;
  bool reduction_checked = false;  // KState only
  bool reduction_holds = false;
  double reduction_residual = 0.0;
  std::string caveat;
};

inline std::size_t top_block_size(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::EvenD:
    case FamilyKind::Mod3: return 2;
    case FamilyKind::KState:
      if (spec.lattice_indices.empty()) break;
      return std::size_t{1} << spec.lattice_indices.front().size();
    case FamilyKind::LatticeTriple:
    case FamilyKind::Custom: break;
  }
  throw Error(ErrorCode::UnknownBlockStructure, "no known block structure for this family");
}

/// Null-space analysis of the trace constraints. If every Hermitian M allowed
/// by the constraints has a scalar top-left block A, a rank-one M must have
/// A = 0, so no complete rank-one measurement exists and hence
/// no one-way protocol either.
inline ImpossibilityCertificate certify_impossible(const MaxEntSet& set, double rel_threshold = 1e-8) {
  ImpossibilityCertificate cert;
  cert.family = set.spec;
  const std::size_t m = top_block_size(set.spec);
  cert.top_block_size = m;
  const NullspaceBasis ns = nullspace(build_constraint_system(set), rel_threshold);
  cert.nullspace_dim = ns.basis.size();
  cert.constraint_residuals = ns.residuals;
  cert.singular_values = ns.singular_values;

  std::vector<ComplexMatrix> blocks;
  cert.forced_scalar = true;
  for (const auto& n : ns.basis) {
    const ComplexMatrix a = block(n, 0, 0, m, m);
    const cplx t = trace(a) / static_cast<double>(m);
    const double dev = frobenius_distance(a, t * ComplexMatrix::identity(m));
    cert.residuals.push_back(dev);
    if (dev > rel_threshold * std::max(1.0, frobenius_norm(n))) cert.forced_scalar = false;
    blocks.push_back(a);
  }
  if (!blocks.empty()) {
    RealMatrix img(blocks.size(), m * m);
    for (std::size_t r = 0; r < blocks.size(); ++r) {
      const auto x = coordinates_of_hermitian(blocks[r]);
      for (std::size_t c = 0; c < m * m; ++c) img(r, c) = x[c];
    }
    cert.top_block_image_dim = real_nullspace(img, rel_threshold).rank;
  }

  if (set.spec.kind == FamilyKind::KState) {
    cert.reduction_checked = true;
    std::vector<ComplexMatrix> xs;
    for (const auto& s : set.spec.lattice_indices) xs.push_back(lattice_operator(s));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const double scale = std::max(1.0, frobenius_norm(ns.basis[b]));
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
          if (i == j) continue;
          cert.reduction_residual =
              std::max(cert.reduction_residual, std::abs(trace(blocks[b] * xs[i] * xs[j])) / scale);
        }
    }
    cert.reduction_holds = cert.reduction_residual <= rel_threshold;
  }
  cert.conclusion = cert.forced_scalar ? Conclusion::OneWayImpossible : Conclusion::Inconclusive;
  cert.caveat = "numerical certificate for the stated phase values only";
  return cert;
}

// ---------------------------------------------------------------------------
// Randomized one-way protocol for three states

/// Three states relabeled by decreasing prior and rotated by (V̄ ⊗ V†U₀†) so
/// that U₀ = I and U₁ is diagonal.
struct RandomizedFrame {
  MaxEntSet prepared;
  std::vector<std::size_t> order;  // prepared[a] is original state order[a]
  std::vector<double> priors;      // in prepared order
  ComplexMatrix alice_rotation;    // acts on Alice before the measurement
  ComplexMatrix bob_rotation;
};

inline RandomizedFrame prepare_randomized(const MaxEntSet& set, const std::vector<double>& priors) {
  if (set.size() != 3) throw Error(ErrorCode::SpecInvalid, "the randomized protocol needs exactly three states");
  validate_priors(priors, 3);
  RandomizedFrame f;
  f.order = {0, 1, 2};
  std::stable_sort(f.order.begin(), f.order.end(), [&](std::size_t a, std::size_t b) { return priors[a] > priors[b]; });
  for (std::size_t a : f.order) f.priors.push_back(priors[a]);
  const MaxEntSet ordered = reorder(set, f.order);
  const ComplexMatrix u0h = adjoint(ordered.unitaries[0]);
  const auto [v, diag] = diagonalize_unitary(u0h * ordered.unitaries[1]);
  // Alice applies Vᵀ and Bob V†U₀†, so U_i → V†U₀†U_i V.
  f.alice_rotation = transpose(v);
  f.bob_rotation = adjoint(v) * u0h;
  f.prepared = ordered;
  for (auto& u : f.prepared.unitaries) u = f.bob_rotation * u * v;
  f.prepared.unitaries[0] = ComplexMatrix::identity(set.d);
  f.prepared.unitaries[1] = diag;
  return f;
}

namespace detail {
inline void check_randomized_frame(const MaxEntSet& set) {
  if (set.size() != 3) throw Error(ErrorCode::SpecInvalid, "the randomized protocol needs exactly three states");
  if (frobenius_distance(set.unitaries[0], ComplexMatrix::identity(set.d)) > kDecisionTol)
    throw Error(ErrorCode::NotDiagonal, "U0 must be the identity");
  if (!is_diagonal(set.unitaries[1], kDecisionTol)) throw Error(ErrorCode::NotDiagonal, "U1 must be diagonal");
}

/// |φ_j⟩ = (1/√d) Σ_k e^{2πijk/d}|k⟩
inline ComplexMatrix fourier_vector(std::size_t d, std::size_t j) {
  ComplexMatrix v(d, 1);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k)
    v[k] = s * phase_turns(static_cast<double>((j * k) % d) / static_cast<double>(d));
  return v;
}

inline ComplexMatrix phase_diagonal(std::span<const double> x) {
  ComplexMatrix w(x.size(), x.size());
  for (std::size_t k = 0; k < x.size(); ++k) w(k, k) = phase_turns(x[k]);
  return w;
}

struct RandomizedVectors {
  std::vector<ComplexMatrix> alice;  // W_x φ_j
  std::vector<ComplexMatrix> bob0;   // W̄_x φ_{−j}
  std::vector<ComplexMatrix> bob1;   // W̄_x U₁ φ_{−j}
};

inline RandomizedVectors randomized_vectors(const MaxEntSet& set, std::span<const double> x) {
  const std::size_t d = set.d;
  if (x.size() != d) throw Error(ErrorCode::DimensionMismatch, "x needs one phase per level");
  const ComplexMatrix w = phase_diagonal(x);
  const ComplexMatrix wc = conjugate(w);
  RandomizedVectors rv;
  for (std::size_t j = 0; j < d; ++j) {
    const ComplexMatrix back = fourier_vector(d, (d - j) % d);
    rv.alice.push_back(w * fourier_vector(d, j));
    rv.bob0.push_back(wc * back);
    rv.bob1.push_back(wc * set.unitaries[1] * back);
  }
  return rv;
}
}  // namespace detail

/// Π₀(x), Π₁(x), Π₂(x) = I − Π₀ − Π₁ for a prepared set (U₀ = I, U₁ diagonal).
inline Povm randomized_measurement_at(const MaxEntSet& set, std::span<const double> x) {
  detail::check_randomized_frame(set);
  const std::size_t d = set.d;
  const auto rv = detail::randomized_vectors(set, x);
  ComplexMatrix p0(d * d, d * d), p1(d * d, d * d);
  for (std::size_t j = 0; j < d; ++j) {
    p0 = p0 + projector(kron(rv.alice[j], rv.bob0[j]));
    p1 = p1 + projector(kron(rv.alice[j], rv.bob1[j]));
  }
  Povm p;
  p.dim_a = d;
  p.dim_b = d;
  p.label = "randomized-one-way";
  p.elements = {p0, p1, ComplexMatrix::identity(d * d) - p0 - p1};
  return p;
}

/// R = Σ_{i≠j} |i⊗j⟩⟨i⊗j|
inline ComplexMatrix off_diagonal_projector(std::size_t d) {
  ComplexMatrix r(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) r(i * d + j, i * d + j) = 1.0;
  return r;
}

/// Averages over x: Π₀ = |ψ₀⟩⟨ψ₀| + R/d and Π₁ = |ψ₁⟩⟨ψ₁| + R/d.
inline std::pair<ComplexMatrix, ComplexMatrix> averaged_operators(const MaxEntSet& set) {
  detail::check_randomized_frame(set);
  const double inv_d = 1.0 / static_cast<double>(set.d);
  const ComplexMatrix r = inv_d * off_diagonal_projector(set.d);
  return {projector(state_of(set.unitaries[0])) + r, projector(state_of(set.unitaries[1])) + r};
}

inline Povm averaged_povm(const MaxEntSet& set) {
  const auto [p0, p1] = averaged_operators(set);
  Povm p;
  p.dim_a = set.d;
  p.dim_b = set.d;
  p.label = "randomized-one-way-average";
  p.elements = {p0, p1, ComplexMatrix::identity(set.d * set.d) - p0 - p1};
  return p;
}

/// p₂⟨ψ₂|(Π₀ + Π₁)|ψ₂⟩ with the states ordered by decreasing prior.
inline double randomized_error_exact(const MaxEntSet& set, const std::vector<double>& priors) {
  const RandomizedFrame f = prepare_randomized(set, priors);
  const auto [p0, p1] = averaged_operators(f.prepared);
  return f.priors[2] * expectation(state_of(f.prepared.unitaries[2]), p0 + p1);
}

/// Confusion matrix of the averaged protocol in the original labels.
inline RealMatrix randomized_confusion_exact(const MaxEntSet& set, const std::vector<double>& priors) {
  const RandomizedFrame f = prepare_randomized(set, priors);
  const RealMatrix dm = discrimination_matrix(f.prepared, averaged_povm(f.prepared));
  RealMatrix out(3, 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) out(f.order[a], f.order[b]) = dm(a, b);
  return out;
}

/// The protocol for one draw of x, as a tree on the original set: both parties
/// rotate, Alice measures the twisted Fourier basis, Bob tests for his two
/// candidates and otherwise guesses the least likely state.
inline ProtocolTree randomized_tree_at(const RandomizedFrame& f, std::span<const double> x) {
  const std::size_t d = f.prepared.d;
  const auto rv = detail::randomized_vectors(f.prepared, x);
  std::vector<ComplexMatrix> alice;
  std::vector<ProtocolTree> branches;
  for (std::size_t j = 0; j < d; ++j) {
    alice.push_back(projector(rv.alice[j]));
    const ComplexMatrix b0 = projector(rv.bob0[j]);
    const ComplexMatrix b1 = projector(rv.bob1[j]);
    std::vector<ComplexMatrix> bob = {b0, b1, ComplexMatrix::identity(d) - b0 - b1};
    std::vector<ProtocolTree> leaves = {ProtocolTree::decide(f.order[0]), ProtocolTree::decide(f.order[1]),
                                        ProtocolTree::decide(f.order[2])};
    branches.push_back(ProtocolTree::measure(Party::B, std::move(bob), std::move(leaves), "bob-test"));
  }
  ProtocolTree t = ProtocolTree::measure(Party::A, std::move(alice), std::move(branches), "alice-fourier");
  t = ProtocolTree::apply(Party::B, f.bob_rotation, std::move(t), "bob-frame");
  return ProtocolTree::apply(Party::A, f.alice_rotation, std::move(t), "alice-frame");
}

/// A protocol family indexed by a vector of uniform draws in [0, 1).
struct RandomizedProtocol {
  std::size_t parameter_count = 0;
  std::function<ProtocolTree(std::span<const double>)> tree_at;
  RealMatrix exact_confusion;  // averaged over the draws
};

inline RandomizedProtocol randomized_protocol(const MaxEntSet& set, const std::vector<double>& priors) {
  RandomizedProtocol rp;
  auto frame = std::make_shared<const RandomizedFrame>(prepare_randomized(set, priors));
  rp.parameter_count = set.d;
  rp.tree_at = [frame](std::span<const double> x) { return randomized_tree_at(*frame, x); };
  rp.exact_confusion = randomized_confusion_exact(set, priors);
  return rp;
}

}  // namespace locc
