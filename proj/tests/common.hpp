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

#include <cmath>
#include <complex>
#include <random>

#include "locc/matrix.hpp"

namespace locc::testing {

inline ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (auto& z : g.entries()) z = {n(rng), n(rng)};
  return g;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix g = random_gaussian(d, d, rng);
  return g + adjoint(g);
}

// Gram–Schmidt on the columns of a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  ComplexMatrix g = random_gaussian(d, d, rng);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      cplx s{};
      for (std::size_t r = 0; r < d; ++r) s += std::conj(g(r, p)) * g(r, c);
      for (std::size_t r = 0; r < d; ++r) g(r, c) -= s * g(r, p);
    }
    double n = 0.0;
    for (std::size_t r = 0; r < d; ++r) n += std::norm(g(r, c));
    n = std::sqrt(n);
    for (std::size_t r = 0; r < d; ++r) g(r, c) /= n;
  }
  return g;
}

inline double identity_deviation(const RealMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace locc::testing
