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
#include <numeric>
#include <string>
#include <vector>

#include "locc/errors.hpp"
#include "locc/linalg.hpp"
#include "locc/matrix.hpp"
#include "locc/states.hpp"

namespace locc {

/// A measurement {M_i}: positive operators summing to the identity.
/// `dim_b` is 1 for a measurement on a single system.
struct Povm {
  std::vector<ComplexMatrix> elements;
  std::size_t dim_a = 0;
  std::size_t dim_b = 1;
  std::string label;

  std::size_t size() const noexcept { return elements.size(); }
  std::size_t dim() const noexcept { return dim_a * dim_b; }
};

struct PovmReport {
  double hermiticity_residual = 0.0;  // max ‖M − M†‖_F
  std::vector<double> min_eigenvalues;
  double completeness_residual = 0.0;  // ‖Σ M − I‖_F
  bool hermitian = true;
  bool positive = true;
  bool complete = true;
  bool pass = true;
};

inline PovmReport validate_povm(const Povm& p, double tol = kDecisionTol) {
  PovmReport rep;
  const std::size_t n = p.dim();
  ComplexMatrix sum(n, n);
  for (const auto& m : p.elements) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "POVM element size");
    const double hres = frobenius_distance(m, adjoint(m));
    rep.hermiticity_residual = std::max(rep.hermiticity_residual, hres);
    const ComplexMatrix herm = 0.5 * (m + adjoint(m));
    rep.min_eigenvalues.push_back(min_eigenvalue(herm));
    sum = sum + m;
  }
  rep.completeness_residual = frobenius_distance(sum, ComplexMatrix::identity(n));
  rep.hermitian = rep.hermiticity_residual <= kNumericTol * std::max(1.0, std::sqrt(static_cast<double>(n)));
  rep.positive = std::all_of(rep.min_eigenvalues.begin(), rep.min_eigenvalues.end(),
                             [&](double x) { return x >= -tol; });
  rep.complete = rep.completeness_residual <= tol;
  rep.pass = rep.hermitian && rep.positive && rep.complete;
  return rep;
}

/// Floor (1/k)(1 − 2(k−1)/d) on the partial-transpose spectrum of the
/// discriminator elements.
inline double ppt_floor(std::size_t k, std::size_t d) {
  const double kk = static_cast<double>(k);
  return (1.0 / kk) * (1.0 - 2.0 * (kk - 1.0) / static_cast<double>(d));
}

/// True when k ≤ d/2 + 1.
inline bool ppt_guaranteed(std::size_t k, std::size_t d) { return 2 * k <= d + 2; }

/// M_i = (1/k)(I + (k−1)ρ_i − Σ_{j≠i} ρ_j) for the k states of `set`.
/// Outside k ≤ d/2 + 1 the elements are still built when `force` is set;
/// check_ppt then reports whether they happen to be PPT.
inline Povm ppt_discriminator(const MaxEntSet& set, bool force = false) {
  const std::size_t k = set.size();
  const std::size_t d = set.d;
  if (!ppt_guaranteed(k, d) && !force) {
    throw Error(ErrorCode::TooManyStates,
                std::to_string(k) + " states exceed d/2 + 1 = " + std::to_string(d / 2.0 + 1.0));
  }
  std::vector<ComplexMatrix> rhos;
  ComplexMatrix total(d * d, d * d);
  for (const auto& u : set.unitaries) {
    rhos.push_back(projector(state_of(u)));
    total = total + rhos.back();
  }
  const double kk = static_cast<double>(k);
  const ComplexMatrix id = ComplexMatrix::identity(d * d);
  Povm p;
  p.dim_a = d;
  p.dim_b = d;
  p.label = "ppt-discriminator";
  for (std::size_t i = 0; i < k; ++i) {
    // (k−1)ρ_i − Σ_{j≠i} ρ_j = kρ_i − Σ_j ρ_j
    p.elements.push_back((1.0 / kk) * (id + kk * rhos[i] - total));
  }
  return p;
}

struct PptReport {
  std::vector<double> min_pt_eigenvalues;
  double bound = 0.0;
  bool pass = true;
};

inline PptReport check_ppt(const Povm& p, double tol = kDecisionTol) {
  if (p.dim_b < 2 || p.dim_a < 2) throw Error(ErrorCode::DimensionMismatch, "check_ppt needs a bipartite POVM");
  PptReport rep;
  rep.bound = ppt_floor(p.size(), p.dim_a);
  for (const auto& m : p.elements) {
    const ComplexMatrix pt = partial_transpose(m, p.dim_a, p.dim_b);
    rep.min_pt_eigenvalues.push_back(min_eigenvalue(0.5 * (pt + adjoint(pt))));
  }
  rep.pass = std::all_of(rep.min_pt_eigenvalues.begin(), rep.min_pt_eigenvalues.end(),
                         [&](double x) { return x >= -tol; });
  return rep;
}

/// ⟨ψ|M|ψ⟩ (real part; M Hermitian).
inline double expectation(const ComplexMatrix& psi, const ComplexMatrix& m) {
  const std::size_t n = psi.size();
  if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "expectation");
  cplx s{};
  for (std::size_t i = 0; i < n; ++i) {
    if (psi[i] == cplx{}) continue;
    cplx row{};
    for (std::size_t j = 0; j < n; ++j) row += m(i, j) * psi[j];
    s += std::conj(psi[i]) * row;
  }
  return s.real();
}

/// Entry (i, j) = ⟨ψ_i|M_j|ψ_i⟩.
inline RealMatrix discrimination_matrix(const MaxEntSet& set, const Povm& p) {
  if (p.size() != set.size()) throw Error(ErrorCode::DimensionMismatch, "POVM outcome count differs from state count");
  if (p.dim() != set.d * set.d) throw Error(ErrorCode::DimensionMismatch, "POVM acts on the wrong space");
  RealMatrix out(set.size(), p.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const ComplexMatrix psi = state_of(set.unitaries[i]);
    for (std::size_t j = 0; j < p.size(); ++j) out(i, j) = expectation(psi, p.elements[j]);
  }
  return out;
}

inline void validate_priors(const std::vector<double>& priors, std::size_t k) {
  if (priors.size() != k) throw Error(ErrorCode::BadPriors, "need one prior per state");
  double s = 0.0;
  for (double x : priors) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::BadPriors, "priors must be nonnegative");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-12) throw Error(ErrorCode::BadPriors, "priors must sum to 1");
}

inline std::vector<double> uniform_priors(std::size_t k) { return std::vector<double>(k, 1.0 / static_cast<double>(k)); }

/// Σ_i p_i ⟨ψ_i|M_i|ψ_i⟩
inline double success_probability(const MaxEntSet& set, const Povm& p, const std::vector<double>& priors) {
  validate_priors(priors, set.size());
  const RealMatrix dm = discrimination_matrix(set, p);
  double s = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) s += priors[i] * dm(i, i);
  return s;
}

}  // namespace locc
