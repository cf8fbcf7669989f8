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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locc/errors.hpp"

namespace locc {

using cplx = std::complex<double>;
using namespace std::complex_literals;

namespace detail {
inline double conj_of(double x) { return x; }
inline cplx conj_of(const cplx& z) { return std::conj(z); }
inline double abs2(double x) { return x * x; }
inline double abs2(const cplx& z) { return std::norm(z); }
inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace detail

/// Dense row-major matrix. Value type: copies are deep, and every free
/// function below returns a fresh matrix rather than modifying its inputs.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorCode::DimensionMismatch, "entry count does not match shape");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }
  static Matrix diagonal(std::span<const T> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }
  /// Column vector.
  static Matrix column(std::span<const T> entries) {
    return Matrix(entries.size(), 1, std::vector<T>(entries.begin(), entries.end()));
  }
  static Matrix basis_vector(std::size_t n, std::size_t k) {
    Matrix m(n, 1);
    m(k, 0) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<const T> entries() const noexcept { return data_; }
  std::span<T> entries() noexcept { return data_; }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return detail::finite(x); });
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "sum of differently shaped matrices");
  }
  Matrix<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "difference of differently shaped matrices");
  }
  Matrix<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

template <typename T, typename S>
Matrix<T> operator*(S scalar, const Matrix<T>& a) {
  Matrix<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= static_cast<T>(scalar);
  return out;
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "product of non-conformable matrices");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

template <typename T>
Matrix<T> conjugate(const Matrix<T>& a) {
  Matrix<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::conj_of(out[i]);
  return out;
}

template <typename T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = detail::conj_of(a(i, j));
  return out;
}

/// (a⊗b)[i·rb + p, j·cb + q] = a[i,j]·b[p,q]
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t rb = b.rows();
  const std::size_t cb = b.cols();
  Matrix<T> out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T aij = a(i, j);
      if (aij == T{}) continue;
      for (std::size_t p = 0; p < rb; ++p)
        for (std::size_t q = 0; q < cb; ++q) out(i * rb + p, j * cb + q) = aij * b(p, q);
    }
  return out;
}

/// Block-diagonal direct sum diag(a, b).
template <typename T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

template <typename T>
Matrix<T> block(const Matrix<T>& a, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
  if (r0 + nr > a.rows() || c0 + nc > a.cols()) throw Error(ErrorCode::DimensionMismatch, "block out of range");
  Matrix<T> out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = a(r0 + i, c0 + j);
  return out;
}

template <typename T>
T trace(const Matrix<T>& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "trace of non-square matrix");
  T t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

template <typename T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += detail::abs2(x);
  return std::sqrt(s);
}

template <typename T>
double frobenius_distance(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "distance between differently shaped matrices");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += detail::abs2(a[i] - b[i]);
  return std::sqrt(s);
}

template <typename T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.entries()) m = std::max(m, std::abs(x));
  return m;
}

/// Tr(a† b), the Hilbert–Schmidt inner product.
inline cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "hs_inner shapes");
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// ⟨u|v⟩ for column vectors.
inline cplx inner(const ComplexMatrix& u, const ComplexMatrix& v) { return hs_inner(u, v); }

/// |u⟩⟨v|
inline ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v) {
  ComplexMatrix out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
  return out;
}

inline ComplexMatrix projector(const ComplexMatrix& v) { return outer(v, v); }

inline ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  return out;
}

inline ComplexMatrix normalized(const ComplexMatrix& v) {
  const double n = frobenius_norm(v);
  return (1.0 / n) * v;
}

/// ‖h − h†‖_F ≤ tol · max(1, ‖h‖_F)
inline bool is_hermitian(const ComplexMatrix& h, double tol = kNumericTol) {
  if (!h.is_square()) return false;
  return frobenius_distance(h, adjoint(h)) <= tol * std::max(1.0, frobenius_norm(h));
}

inline double unitarity_residual(const ComplexMatrix& u) {
  if (!u.is_square()) return INFINITY;
  return frobenius_distance(adjoint(u) * u, ComplexMatrix::identity(u.rows()));
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kNumericTol) { return unitarity_residual(u) <= tol; }

inline bool is_diagonal(const ComplexMatrix& a, double tol) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && std::abs(a(i, j)) > tol) return false;
  return true;
}

/// Unit-modulus phase e^{2πi·turns}.
inline cplx phase_turns(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

/// Qubit Pauli operators σ0..σ3 = I, X, Y, Z.
inline ComplexMatrix pauli(int index) {
  switch (index) {
    case 0: return {{1.0, 0.0}, {0.0, 1.0}};
    case 1: return {{0.0, 1.0}, {1.0, 0.0}};
    case 2: return {{0.0, -1i}, {1i, 0.0}};
    case 3: return {{1.0, 0.0}, {0.0, -1.0}};
    default: throw Error(ErrorCode::DimensionMismatch, "Pauli index must be in 0..3");
  }
}

/// Cyclic shift |j⟩ ↦ |j+1 mod n⟩.
inline ComplexMatrix cyclic_shift(std::size_t n) {
  ComplexMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j) p((j + 1) % n, j) = 1.0;
  return p;
}

/// Clock operator |j⟩ ↦ e^{2πij/n}|j⟩.
inline ComplexMatrix clock(std::size_t n) {
  ComplexMatrix z(n, n);
  for (std::size_t j = 0; j < n; ++j) z(j, j) = phase_turns(static_cast<double>(j) / static_cast<double>(n));
  return z;
}

inline ComplexMatrix matrix_power(const ComplexMatrix& a, int power) {
  ComplexMatrix out = ComplexMatrix::identity(a.rows());
  const ComplexMatrix base = power >= 0 ? a : adjoint(a);  // unitary callers only for negative powers
  for (int i = 0; i < std::abs(power); ++i) out = out * base;
  return out;
}

/// diag(ω, 1, …, 1) of size n.
inline ComplexMatrix phase_corner(std::size_t n, cplx omega) {
  ComplexMatrix t = ComplexMatrix::identity(n);
  t(0, 0) = omega;
  return t;
}

}  // namespace locc
