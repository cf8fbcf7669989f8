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

#include <gtest/gtest.h>

#include <functional>
#include <numbers>

#include "common.hpp"
#include "locc/states.hpp"

using namespace locc;
using namespace std::complex_literals;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Parse;
}

}  // namespace

TEST(StdMes, QubitVector) {
  const ComplexMatrix phi = std_mes(2);
  const double s = 1.0 / std::numbers::sqrt2;
  EXPECT_NEAR(std::abs(phi[0] - s), 0.0, 1e-15);
  EXPECT_EQ(phi[1], cplx{});
  EXPECT_EQ(phi[2], cplx{});
  EXPECT_NEAR(std::abs(phi[3] - s), 0.0, 1e-15);
}

TEST(StdMes, FourLevels) {
  const ComplexMatrix phi = std_mes(4);
  std::size_t nonzero = 0;
  for (const auto& z : phi.entries())
    if (z != cplx{}) {
      ++nonzero;
      EXPECT_NEAR(std::abs(z - 0.5), 0.0, 1e-15);
    }
  EXPECT_EQ(nonzero, 4u);
  EXPECT_NEAR(frobenius_norm(phi), 1.0, 1e-12);
}

TEST(StdMes, OverlapIsNormalizedTrace) {
  std::mt19937_64 rng(17);
  const ComplexMatrix u = locc::testing::random_unitary(5, rng);
  const cplx overlap = hs_inner(std_mes(5), state_of(u));
  EXPECT_NEAR(std::abs(overlap - trace(u) / 5.0), 0.0, 1e-12);
}

TEST(StateOf, IdentityGivesPhi) { EXPECT_LE(frobenius_distance(state_of(ComplexMatrix::identity(3)), std_mes(3)), 1e-15); }

TEST(StateOf, RejectsNonUnitary) {
  EXPECT_EQ(code_of([] { state_of(2.0 * ComplexMatrix::identity(2)); }), ErrorCode::NotUnitary);
}

TEST(StateOf, EvenD4Golden) {
  const cplx w = phase_turns(0.13);
  const MaxEntSet set = build_even_family(even_spec(4, w, phase_turns(0.29)));
  const ComplexMatrix psi = state_of(set.unitaries[1]);
  // ½(ω|00⟩ + |11⟩) ⊗ (|01⟩ + |10⟩) with the first pair on (S1_A, S1_B) and the
  // second on (qubit_A, qubit_B); Alice's index is 2·s1 + qubit.
  ComplexMatrix expected(16, 1);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t q = 0; q < 2; ++q) {
      const std::size_t a = 2 * s + q;
      const std::size_t b = 2 * s + (1 - q);
      expected[a * 4 + b] = 0.5 * (s == 0 ? w : cplx{1.0});
    }
  EXPECT_LE(frobenius_distance(psi, expected), 1e-12);
}

TEST(StateOf, Mod3D5Golden) {
  const cplx g = phase_turns(0.29);
  const MaxEntSet set = build_mod3_family(mod3_spec(5, phase_turns(0.13), g));
  ComplexMatrix expected(25, 1);
  const double s = 1.0 / std::sqrt(5.0);
  expected[0 * 5 + 0] = s * g;
  expected[1 * 5 + 1] = -s * g;
  expected[2 * 5 + 4] = s;
  expected[3 * 5 + 2] = s;
  expected[4 * 5 + 3] = s;
  EXPECT_LE(frobenius_distance(state_of(set.unitaries[2]), expected), 1e-12);
}

TEST(EvenFamily, OrthogonalAtSeveralSizes) {
  for (std::size_t d : {4u, 6u, 8u, 10u, 16u}) {
    const auto rep = check_orthogonal_mes(build_even_family(even_spec(d)));
    EXPECT_TRUE(rep.pass) << "d=" << d;
    for (const auto& p : rep.pair_residuals) EXPECT_LE(p.residual, 1e-12);
    for (double r : rep.reduced_state_residuals) EXPECT_LE(r, 1e-10);
  }
}

TEST(EvenFamily, BlockLayoutIsExact) {
  const cplx w = phase_turns(0.13);
  const cplx g = phase_turns(0.29);
  const MaxEntSet set = build_even_family(even_spec(6, w, g));
  const ComplexMatrix& u = set.unitaries[1];
  const ComplexMatrix& v = set.unitaries[2];
  EXPECT_EQ(block(u, 0, 0, 2, 2), w * pauli(1));
  EXPECT_EQ(block(v, 0, 0, 2, 2), g * pauli(3));
  for (std::size_t b = 1; b < 3; ++b) {
    EXPECT_EQ(block(u, 2 * b, 2 * b, 2, 2), pauli(1));
    EXPECT_EQ(block(v, 2 * b, 2 * b, 2, 2), pauli(3));
  }
}

TEST(EvenFamily, DegeneratePhases) {
  FamilySpec s = even_spec(4, 1.0, 1.0);
  EXPECT_FALSE(genericity(s).generic);
  EXPECT_EQ(code_of([&] { build_even_family(s); }), ErrorCode::SpecInvalid);
  s.allow_degenerate = true;
  EXPECT_TRUE(check_orthogonal_mes(build_even_family(s)).pass);
}

TEST(EvenFamily, RejectsOddDimension) {
  EXPECT_EQ(code_of([] { build_even_family(even_spec(5)); }), ErrorCode::SpecInvalid);
  EXPECT_EQ(code_of([] { build_even_family(even_spec(2)); }), ErrorCode::SpecInvalid);
}

TEST(EvenFamily, RejectsNonUnitPhase) {
  EXPECT_EQ(code_of([] { build_even_family(even_spec(4, 1.1 * phase_turns(0.13))); }), ErrorCode::SpecInvalid);
}

TEST(Mod3Family, OrthogonalAndSized) {
  for (std::size_t d : {5u, 8u, 11u, 14u}) {
    const MaxEntSet set = build_mod3_family(mod3_spec(d));
    EXPECT_EQ(set.d, d);
    EXPECT_TRUE(check_orthogonal_mes(set).pass) << "d=" << d;
  }
}

TEST(Mod3Family, RejectsGammaIOmegaSquared) {
  const cplx w = phase_turns(0.13);
  EXPECT_EQ(code_of([&] { build_mod3_family(mod3_spec(5, w, 1i * w * w)); }), ErrorCode::SpecInvalid);
  EXPECT_EQ(code_of([&] { build_mod3_family(mod3_spec(5, w, -1i * w * w)); }), ErrorCode::SpecInvalid);
  EXPECT_EQ(code_of([] { build_mod3_family(mod3_spec(6)); }), ErrorCode::SpecInvalid);
}

TEST(LatticeStates, Definitions) {
  EXPECT_EQ(build_lattice_state(0, 0), ComplexMatrix::identity(4));
  EXPECT_EQ(build_lattice_state(1, 3), kron(pauli(1), pauli(3)));
}

TEST(LatticeStates, AllDistinctPairsOrthogonal) {
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const ComplexMatrix u = build_lattice_state(a / 4, a % 4);
      const ComplexMatrix v = build_lattice_state(b / 4, b % 4);
      cplx t{};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) t += std::conj(u(j, i)) * v(j, i);
      EXPECT_NEAR(std::abs(t), a == b ? 4.0 : 0.0, 1e-14);
    }
}

TEST(LatticeStates, ProductsHermitianOrSkew) {
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const ComplexMatrix p = build_lattice_state(a / 4, a % 4) * build_lattice_state(b / 4, b % 4);
      const bool herm = frobenius_distance(p, adjoint(p)) < 1e-14;
      const bool skew = frobenius_distance(p, -1.0 * adjoint(p)) < 1e-14;
      EXPECT_TRUE(herm || skew);
    }
}

TEST(KFamily, FourStatesOrthogonal) {
  for (std::size_t r : {1u, 2u, 3u}) {
    const MaxEntSet set = build_k_family(kstate_spec(r));
    EXPECT_EQ(set.d, 4 + 4 * r);
    const auto rep = check_orthogonal_mes(set);
    EXPECT_TRUE(rep.pass);
    for (const auto& p : rep.pair_residuals) EXPECT_LE(p.residual, 1e-12);
  }
}

TEST(KFamily, ThreeQubitStatesReproduceMod3) {
  const cplx w = phase_turns(0.13);
  const cplx g = phase_turns(0.29);
  const MaxEntSet k3 = build_k_family(kstate_spec(1, {{0}, {1}, {3}}, {1.0, w, g}));
  const MaxEntSet m3 = build_mod3_family(mod3_spec(5, w, g));
  ASSERT_EQ(k3.d, 5u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(frobenius_distance(k3.unitaries[i], m3.unitaries[i]), 1e-15);
}

TEST(KFamily, DegenerateAlphasRejected) {
  // All alphas equal: every product is 1.
  const std::vector<cplx> flat(4, phase_turns(0.2));
  EXPECT_EQ(code_of([&] { build_k_family(kstate_spec(1, default_lattice_base(), flat)); }), ErrorCode::SpecInvalid);
}

TEST(KFamily, DuplicateBaseRejected) {
  EXPECT_EQ(code_of([] { build_k_family(kstate_spec(1, {{0, 0}, {1, 1}, {1, 1}})); }), ErrorCode::NonOrthogonalBase);
}

TEST(CheckOrthogonal, DuplicateHasResidualD) {
  const MaxEntSet set = custom_set({pauli(1), pauli(1)});
  const auto rep = check_orthogonal_mes(set);
  EXPECT_FALSE(rep.orthogonal);
  EXPECT_NEAR(rep.pair_residuals.front().residual, 2.0, 1e-15);
}

TEST(CheckOrthogonal, PerturbationShowsInUnitarityResidual) {
  std::mt19937_64 rng(31);
  const ComplexMatrix e = locc::testing::random_gaussian(3, 3, rng);
  const ComplexMatrix u = ComplexMatrix::identity(3) + 0.01 * e;
  const auto rep = check_orthogonal_mes(custom_set({u}));
  EXPECT_FALSE(rep.unitary);
  // U†U − I = 0.01(E + E†) + O(1e−4)
  EXPECT_NEAR(rep.unitarity_residuals.front(), 0.01 * frobenius_norm(e + adjoint(e)), 2e-4 * frobenius_norm(e) * frobenius_norm(e));
}
