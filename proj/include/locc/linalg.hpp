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
#include <utility>
#include <vector>

#include "locc/errors.hpp"
#include "locc/matrix.hpp"

namespace locc {

/// Eigenvalues ascending; eigenvectors are the matching orthonormal columns.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

namespace detail {

// One cyclic-Jacobi rotation zeroing a(p,q) of the Hermitian working copy
// and accumulating the rotation into v.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const cplx apq = a(p, q);
  const double g = std::abs(apq);
  const cplx e = apq / g;
  const cplx ec = std::conj(e);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * g);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx se = s * e;
  const cplx sec = s * ec;

  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - sec * akq;
    a(k, q) = se * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - se * aqk;
    a(q, k) = sec * apk + c * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - sec * vkq;
    v(k, q) = se * vkp + c * vkq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * g;
  a(q, q) = aqq + t * g;
}

}  // namespace detail

/// Hermitian eigendecomposition by cyclic Jacobi sweeps.
inline EigenDecomposition eig_hermitian(const ComplexMatrix& h, double hermitian_tol = kNumericTol) {
  if (!h.is_square()) throw Error(ErrorCode::DimensionMismatch, "eig_hermitian needs a square matrix");
  if (!is_hermitian(h, hermitian_tol)) throw Error(ErrorCode::NotHermitian, "input deviates from its adjoint");
  const std::size_t n = h.rows();
  ComplexMatrix a = 0.5 * (h + adjoint(h));
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(frobenius_norm(a), 1e-300);

  constexpr int kMaxSweeps = 60;
  bool converged = n <= 1;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= 1e-15 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        // Below round-off relative to both diagonal entries: drop it.
        if (sweep > 3 && std::abs(a(p, p).real()) + 100.0 * g == std::abs(a(p, p).real()) &&
            std::abs(a(q, q).real()) + 100.0 * g == std::abs(a(q, q).real())) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        detail::jacobi_rotate(a, v, p, q);
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) > 1e-13 * scale) {
      throw Error(ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

inline std::vector<double> eigenvalues_hermitian(const ComplexMatrix& h) { return eig_hermitian(h).eigenvalues; }

inline double min_eigenvalue(const ComplexMatrix& h) { return eig_hermitian(h).eigenvalues.front(); }

/// V diag(f(λ)) V†
template <typename F>
ComplexMatrix hermitian_function(const EigenDecomposition& e, F f) {
  const std::size_t n = e.eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = fk * e.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(e.eigenvectors(j, k));
    }
  }
  return out;
}

/// Positive square root of a PSD matrix; eigenvalues below zero (round-off) are clamped.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  return hermitian_function(eig_hermitian(m), [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

/// Eigenvalues of the Hermitian part within this distance are grouped together.
inline constexpr double kClusterTol = 1e-8;

/// Returns (V, D) with u = V D V†, V unitary and D diagonal with unit-modulus entries.
/// The Hermitian part (u+u†)/2 is diagonalized first; the anti-Hermitian part,
/// which commutes with it, then splits each degenerate cluster.
inline std::pair<ComplexMatrix, ComplexMatrix> diagonalize_unitary(const ComplexMatrix& u) {
  if (!u.is_square() || unitarity_residual(u) > kNumericTol) {
    throw Error(ErrorCode::NotUnitary, "diagonalize_unitary needs a unitary input");
  }
  const std::size_t n = u.rows();
  const ComplexMatrix ud = adjoint(u);
  const ComplexMatrix herm = 0.5 * (u + ud);
  const ComplexMatrix anti = cplx(0.0, -0.5) * (u - ud);  // (u − u†)/(2i)
  const EigenDecomposition he = eig_hermitian(herm);

  ComplexMatrix v(n, n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && he.eigenvalues[stop] - he.eigenvalues[stop - 1] <= kClusterTol) ++stop;
    const ComplexMatrix vc = block(he.eigenvectors, 0, start, n, stop - start);
    const ComplexMatrix kc = adjoint(vc) * anti * vc;
    const EigenDecomposition ke = eig_hermitian(0.5 * (kc + adjoint(kc)), 1e-6);
    const ComplexMatrix rotated = vc * ke.eigenvectors;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < stop - start; ++j) v(i, start + j) = rotated(i, j);
    start = stop;
  }

  const ComplexMatrix full = adjoint(v) * u * v;
  ComplexMatrix d(n, n);
  for (std::size_t j = 0; j < n; ++j) d(j, j) = full(j, j);
  const double residual = frobenius_distance(v * d * adjoint(v), u);
  if (residual > 1e-9) {
    throw Error(ErrorCode::ClusterFailure, "reconstruction residual " + std::to_string(residual));
  }
  return {v, d};
}

/// Transpose on the second tensor factor: ⟨i,j|out|k,l⟩ = ⟨i,l|m|k,j⟩.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (!m.is_square() || m.rows() != dim_a * dim_b) {
    throw Error(ErrorCode::DimensionMismatch, "partial_transpose: matrix is not (dimA·dimB) square");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          out(i * dim_b + j, k * dim_b + l) = m(i * dim_b + l, k * dim_b + j);
  return out;
}

/// Reduced density operator on the first factor of a pure bipartite state vector.
inline ComplexMatrix reduced_state_a(const ComplexMatrix& psi, std::size_t dim_a, std::size_t dim_b) {
  if (psi.size() != dim_a * dim_b) throw Error(ErrorCode::DimensionMismatch, "state size");
  ComplexMatrix rho(dim_a, dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t k = 0; k < dim_a; ++k) {
      cplx s{};
      for (std::size_t b = 0; b < dim_b; ++b) s += psi[i * dim_b + b] * std::conj(psi[k * dim_b + b]);
      rho(i, k) = s;
    }
  return rho;
}

inline ComplexMatrix reduced_state_b(const ComplexMatrix& psi, std::size_t dim_a, std::size_t dim_b) {
  if (psi.size() != dim_a * dim_b) throw Error(ErrorCode::DimensionMismatch, "state size");
  ComplexMatrix rho(dim_b, dim_b);
  for (std::size_t j = 0; j < dim_b; ++j)
    for (std::size_t l = 0; l < dim_b; ++l) {
      cplx s{};
      for (std::size_t a = 0; a < dim_a; ++a) s += psi[a * dim_b + j] * std::conj(psi[a * dim_b + l]);
      rho(j, l) = s;
    }
  return rho;
}

/// (K ⊗ I)|ψ⟩ where K maps the first factor from dim_a to K.rows() dimensions.
inline ComplexMatrix apply_on_a(const ComplexMatrix& k, const ComplexMatrix& psi, std::size_t dim_a,
                                std::size_t dim_b) {
  if (k.cols() != dim_a || psi.size() != dim_a * dim_b) throw Error(ErrorCode::DimensionMismatch, "apply_on_a");
  ComplexMatrix out(k.rows() * dim_b, 1);
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t a = 0; a < dim_a; ++a) {
      const cplx kia = k(i, a);
      if (kia == cplx{}) continue;
      for (std::size_t b = 0; b < dim_b; ++b) out[i * dim_b + b] += kia * psi[a * dim_b + b];
    }
  return out;
}

/// (I ⊗ K)|ψ⟩ where K maps the second factor from dim_b to K.rows() dimensions.
inline ComplexMatrix apply_on_b(const ComplexMatrix& k, const ComplexMatrix& psi, std::size_t dim_a,
                                std::size_t dim_b) {
  if (k.cols() != dim_b || psi.size() != dim_a * dim_b) throw Error(ErrorCode::DimensionMismatch, "apply_on_b");
  const std::size_t out_b = k.rows();
  ComplexMatrix out(dim_a * out_b, 1);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t j = 0; j < out_b; ++j) {
      cplx s{};
      for (std::size_t b = 0; b < dim_b; ++b) s += k(j, b) * psi[a * dim_b + b];
      out[a * out_b + j] = s;
    }
  return out;
}

/// Result of a thin singular-value analysis of a real matrix.
struct NullspaceResult {
  RealMatrix basis;                     // columns: orthonormal basis of ker(a)
  std::vector<double> singular_values;  // descending
  std::size_t rank = 0;
};

/// Orthonormal basis of ker(a). Singular values ≤ rel_threshold·σ_max count as zero.
/// Singular values come from one-sided Jacobi on aᵀ (accurate to round-off
/// relative to σ_max); the kernel is the orthogonal complement of the retained
/// left singular vectors, built with Householder reflections.
inline NullspaceResult real_nullspace(const RealMatrix& a, double rel_threshold = 1e-8) {
  const std::size_t n = a.cols();
  const std::size_t p = a.rows();
  RealMatrix b = transpose(a);  // n × p, columns get orthogonalized

  auto col_dot = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += b(r, i) * b(r, j);
    return s;
  };
  // Columns below this norm are round-off; rotating them against each other
  // only shuffles noise.
  double floor2 = 0.0;
  for (std::size_t i = 0; i < p; ++i) floor2 = std::max(floor2, col_dot(i, i));
  floor2 *= 1e-28;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        const double alpha = col_dot(i, i);
        const double beta = col_dot(j, j);
        const double gamma = col_dot(i, j);
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || std::min(alpha, beta) <= floor2) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        double t = 1.0 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        if (zeta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < n; ++r) {
          const double bi = b(r, i);
          const double bj = b(r, j);
          b(r, i) = c * bi - s * bj;
          b(r, j) = s * bi + c * bj;
        }
      }
    }
    if (!rotated) break;
    if (sweep == kMaxSweeps - 1) throw Error(ErrorCode::NoConvergence, "one-sided Jacobi did not converge");
  }

  std::vector<std::pair<double, std::size_t>> norms;
  for (std::size_t i = 0; i < p; ++i) norms.emplace_back(std::sqrt(col_dot(i, i)), i);
  std::sort(norms.begin(), norms.end(), [](auto x, auto y) { return x.first > y.first; });

  NullspaceResult out;
  for (const auto& [s, _] : norms) out.singular_values.push_back(s);
  const double smax = norms.empty() ? 0.0 : norms.front().first;
  std::vector<std::size_t> kept;
  for (const auto& [s, idx] : norms)
    if (smax > 0.0 && s > rel_threshold * smax) kept.push_back(idx);
  const std::size_t r = kept.size();
  out.rank = r;

  // Householder QR of the retained (normalized) columns.
  RealMatrix u(n, r);
  for (std::size_t k = 0; k < r; ++k) {
    const double nk = std::sqrt(col_dot(kept[k], kept[k]));
    for (std::size_t row = 0; row < n; ++row) u(row, k) = b(row, kept[k]) / nk;
  }
  std::vector<std::vector<double>> reflectors;
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<double> w(n, 0.0);
    double norm = 0.0;
    for (std::size_t row = k; row < n; ++row) norm += u(row, k) * u(row, k);
    norm = std::sqrt(norm);
    const double alpha = u(k, k) >= 0.0 ? -norm : norm;
    for (std::size_t row = k; row < n; ++row) w[row] = u(row, k);
    w[k] -= alpha;
    double wn = 0.0;
    for (std::size_t row = k; row < n; ++row) wn += w[row] * w[row];
    if (wn > 0.0) {
      for (std::size_t col = k; col < r; ++col) {
        double d = 0.0;
        for (std::size_t row = k; row < n; ++row) d += w[row] * u(row, col);
        const double f = 2.0 * d / wn;
        for (std::size_t row = k; row < n; ++row) u(row, col) -= f * w[row];
      }
    }
    reflectors.push_back(std::move(w));
  }
  out.basis = RealMatrix(n, n - r);
  for (std::size_t c = 0; c < n - r; ++c) {
    std::vector<double> x(n, 0.0);
    x[r + c] = 1.0;
    for (std::size_t k = r; k-- > 0;) {
      const auto& w = reflectors[k];
      double wn = 0.0;
      double d = 0.0;
      for (std::size_t row = k; row < n; ++row) {
        wn += w[row] * w[row];
        d += w[row] * x[row];
      }
      if (wn == 0.0) continue;
      const double f = 2.0 * d / wn;
      for (std::size_t row = k; row < n; ++row) x[row] -= f * w[row];
    }
    for (std::size_t row = 0; row < n; ++row) out.basis(row, c) = x[row];
  }
  return out;
}

}  // namespace locc
