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

#include <random>

#include "common.hpp"
#include "locc/oneway.hpp"

using namespace locc;

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

// EvenD family ordered (I, V, U): U₀ = I and U₁ = V diagonal.
MaxEntSet even_ivu(std::size_t d) { return reorder(build_even_family(even_spec(d)), {0, 2, 1}); }

std::vector<double> draw(std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(d);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace

TEST(Prop1, ShiftSetWithIdentityPasses) {
  const ComplexMatrix x3 = cyclic_shift(3);
  const MaxEntSet set = custom_set({ComplexMatrix::identity(3), x3, x3 * x3});
  const Prop1Report rep = prop1_check(set, {ComplexMatrix::identity(3)});
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.max_violation, 0.0);
  EXPECT_EQ(rep.pairs.size(), 6u);  // ordered pairs i ≠ j
}

TEST(Prop1, EvenD4WithIdentityFails) {
  const Prop1Report rep = prop1_check(build_even_family(even_spec(4)), {ComplexMatrix::identity(4)});
  EXPECT_FALSE(rep.pass);
  // V itself is diagonal with unimodular entries.
  EXPECT_NEAR(rep.max_violation, 1.0, 1e-12);
  const FamilySpec s = even_spec(4);
  const ComplexMatrix v = build_even_family(s).unitaries[2];
  const std::array<cplx, 4> diag = {s.gamma, -s.gamma, 1.0, -1.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(v(i, i) - diag[i]), 0.0, 1e-15);
}

TEST(Prop1, BellPairPasses) {
  EXPECT_TRUE(prop1_check(custom_set({ComplexMatrix::identity(2), pauli(1)}), {ComplexMatrix::identity(2)}).pass);
}

TEST(Prop1, RejectsNonCoisometry) {
  const MaxEntSet set = custom_set({ComplexMatrix::identity(2), pauli(1)});
  EXPECT_EQ(code_of([&] { prop1_check(set, {2.0 * ComplexMatrix::identity(2)}); }), ErrorCode::NotCoisometry);
}

TEST(Prop1, WideIsometryAccepted) {
  // W = [I I]/√2 is 2×4 with W W† = I.
  ComplexMatrix w(2, 4);
  for (std::size_t i = 0; i < 2; ++i) w(i, i) = w(i, i + 2) = 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(prop1_check(custom_set({ComplexMatrix::identity(2), pauli(1)}), {w}).pass);
}

TEST(HermitianCoordinates, RoundTripAndIsometry) {
  std::mt19937_64 rng(5);
  const ComplexMatrix h = locc::testing::random_hermitian(4, rng);
  const auto x = coordinates_of_hermitian(h);
  ASSERT_EQ(x.size(), 16u);
  EXPECT_LE(frobenius_distance(hermitian_from_coordinates(x, 4), h), 1e-13);
  double n2 = 0.0;
  for (double v : x) n2 += v * v;
  EXPECT_NEAR(std::sqrt(n2), frobenius_norm(h), 1e-12);
}

TEST(ConstraintSystem, Shapes) {
  const ConstraintSystem e4 = build_constraint_system(build_even_family(even_spec(4)));
  EXPECT_EQ(e4.pairs.size(), 3u);
  EXPECT_EQ(e4.real_matrix.rows(), 6u);
  EXPECT_EQ(e4.real_matrix.cols(), 16u);
  const ConstraintSystem m5 = build_constraint_system(build_mod3_family(mod3_spec(5)));
  EXPECT_EQ(m5.real_matrix.rows(), 6u);
  EXPECT_EQ(m5.real_matrix.cols(), 25u);
}

TEST(ConstraintSystem, IdentityGivesZero) {
  for (const MaxEntSet& set : {build_even_family(even_spec(6)), build_mod3_family(mod3_spec(8))}) {
    const ConstraintSystem cs = build_constraint_system(set);
    for (double v : cs.apply(coordinates_of_hermitian(ComplexMatrix::identity(set.d)))) EXPECT_LE(std::abs(v), 1e-9);
  }
}

TEST(ConstraintSystem, MatchesDirectTraces) {
  std::mt19937_64 rng(11);
  const MaxEntSet set = build_mod3_family(mod3_spec(5));
  const ConstraintSystem cs = build_constraint_system(set);
  const ComplexMatrix m = locc::testing::random_hermitian(5, rng);
  const auto y = cs.apply(coordinates_of_hermitian(m));
  for (std::size_t t = 0; t < cs.pairs.size(); ++t) {
    const auto [i, j] = cs.pairs[t];
    const cplx direct = trace(adjoint(set.unitaries[j]) * set.unitaries[i] * m);
    EXPECT_NEAR(y[2 * t], direct.real(), 1e-12);
    EXPECT_NEAR(y[2 * t + 1], direct.imag(), 1e-12);
  }
}

TEST(Nullspace, BasisProperties) {
  for (const MaxEntSet& set : {build_even_family(even_spec(4)), build_mod3_family(mod3_spec(5)),
                               build_k_family(kstate_spec(1))}) {
    const ConstraintSystem cs = build_constraint_system(set);
    const NullspaceBasis ns = nullspace(cs);
    ASSERT_FALSE(ns.basis.empty());
    for (double r : ns.residuals) EXPECT_LE(r, 1e-9);
    for (std::size_t a = 0; a < ns.basis.size(); ++a) {
      EXPECT_TRUE(is_hermitian(ns.basis[a], 1e-12));
      for (std::size_t b = 0; b < ns.basis.size(); ++b)
        EXPECT_NEAR(std::abs(hs_inner(ns.basis[a], ns.basis[b])), a == b ? 1.0 : 0.0, 1e-9);
    }
  }
}

TEST(Nullspace, ContainsIdentityWithScalarTopBlock) {
  const NullspaceBasis ns = nullspace(build_constraint_system(build_even_family(even_spec(4))));
  // Project I onto the basis: the residual must vanish.
  ComplexMatrix proj(4, 4);
  const ComplexMatrix id = ComplexMatrix::identity(4);
  for (const auto& n : ns.basis) proj = proj + hs_inner(n, id) * n;
  EXPECT_LE(frobenius_distance(proj, id), 1e-9);
  for (const auto& n : ns.basis) {
    const ComplexMatrix a = block(n, 0, 0, 2, 2);
    EXPECT_LE(frobenius_distance(a, (trace(a) / 2.0) * ComplexMatrix::identity(2)), 1e-8);
  }
}

TEST(Nullspace, DegeneratePhasesAllowNonScalarBlock) {
  FamilySpec s = even_spec(4, 1.0, 1.0);
  s.allow_degenerate = true;
  const NullspaceBasis ns = nullspace(build_constraint_system(build_even_family(s)));
  double worst = 0.0;
  for (const auto& n : ns.basis) {
    const ComplexMatrix a = block(n, 0, 0, 2, 2);
    worst = std::max(worst, frobenius_distance(a, (trace(a) / 2.0) * ComplexMatrix::identity(2)));
  }
  EXPECT_GT(worst, 1e-3);
}

TEST(Nullspace, SingleStateIsEverything) {
  const NullspaceBasis ns = nullspace(build_constraint_system(custom_set({pauli(1)})));
  EXPECT_EQ(ns.basis.size(), 4u);
}

TEST(Certificate, EvenDImpossible) {
  for (std::size_t d : {4u, 6u, 8u, 10u}) {
    const auto cert = certify_impossible(build_even_family(even_spec(d)));
    EXPECT_TRUE(cert.forced_scalar) << "d=" << d;
    EXPECT_EQ(cert.conclusion, Conclusion::OneWayImpossible);
    EXPECT_EQ(cert.top_block_size, 2u);
    EXPECT_EQ(cert.top_block_image_dim, 1u);
    for (double r : cert.constraint_residuals) EXPECT_LE(r, 1e-9);
  }
}

TEST(Certificate, Mod3Impossible) {
  for (std::size_t d : {5u, 8u, 11u}) {
    const auto cert = certify_impossible(build_mod3_family(mod3_spec(d)));
    EXPECT_EQ(cert.conclusion, Conclusion::OneWayImpossible) << "d=" << d;
  }
}

TEST(Certificate, DegenerateEvenDInconclusive) {
  FamilySpec s = even_spec(4, 1.0, 1.0);
  s.allow_degenerate = true;
  const auto cert = certify_impossible(build_even_family(s));
  EXPECT_FALSE(cert.forced_scalar);
  EXPECT_EQ(cert.conclusion, Conclusion::Inconclusive);
  EXPECT_GT(cert.top_block_image_dim, 1u);
}

TEST(Certificate, KStateReduction) {
  const auto cert = certify_impossible(build_k_family(kstate_spec(1)));
  EXPECT_TRUE(cert.reduction_checked);
  EXPECT_TRUE(cert.reduction_holds);
  EXPECT_LE(cert.reduction_residual, 1e-8);
  EXPECT_EQ(cert.top_block_size, 4u);
}

TEST(Certificate, CustomHasNoBlockStructure) {
  EXPECT_EQ(code_of([] { certify_impossible(custom_set({ComplexMatrix::identity(2), pauli(1)})); }),
            ErrorCode::UnknownBlockStructure);
}

TEST(Certificate, ExclusiveWithProp1Pass) {
  const std::vector<MaxEntSet> sets = {build_even_family(even_spec(4)), build_even_family(even_spec(6)),
                                       build_mod3_family(mod3_spec(5)), build_k_family(kstate_spec(1))};
  for (const auto& set : sets) {
    const bool impossible = certify_impossible(set).conclusion == Conclusion::OneWayImpossible;
    const bool passes = prop1_check(set, {ComplexMatrix::identity(set.d)}).pass;
    EXPECT_FALSE(impossible && passes);
  }
}

TEST(Certificate, PptStillPerfectOnCertifiedSets) {
  for (const MaxEntSet& set : {build_even_family(even_spec(4)), build_mod3_family(mod3_spec(5))}) {
    ASSERT_EQ(certify_impossible(set).conclusion, Conclusion::OneWayImpossible);
    EXPECT_LE(locc::testing::identity_deviation(discrimination_matrix(set, ppt_discriminator(set))), 1e-9);
  }
}

TEST(RandomizedMeasurement, QubitAtZeroSplitsHilbertSpace) {
  // For d = 2 the two projectors have rank 2 each and already fill the space.
  const MaxEntSet set = custom_set({ComplexMatrix::identity(2), pauli(3), pauli(1)});
  const Povm p = randomized_measurement_at(set, std::vector<double>{0.0, 0.0});
  EXPECT_LE(frobenius_distance(p.elements[0] + p.elements[1], ComplexMatrix::identity(4)), 1e-12);
  EXPECT_NEAR(expectation(state_of(set.unitaries[0]), p.elements[0]), 1.0, 1e-12);
  EXPECT_NEAR(expectation(state_of(set.unitaries[1]), p.elements[1]), 1.0, 1e-12);
}

TEST(RandomizedMeasurement, ValidPovmAndPerfectOnPair) {
  std::mt19937_64 rng(2024);
  const MaxEntSet set = even_ivu(4);
  const ComplexMatrix psi0 = state_of(set.unitaries[0]);
  const ComplexMatrix psi1 = state_of(set.unitaries[1]);
  for (int s = 0; s < 1000; ++s) {
    const Povm p = randomized_measurement_at(set, draw(4, rng));
    const PovmReport rep = validate_povm(p);
    ASSERT_TRUE(rep.pass) << "sample " << s;
    ASSERT_GE(rep.min_eigenvalues[2], -1e-9);
    if (s % 100 == 0) {
      EXPECT_NEAR(expectation(psi0, p.elements[0]), 1.0, 1e-9);
      EXPECT_NEAR(expectation(psi1, p.elements[1]), 1.0, 1e-9);
      EXPECT_LE(frobenius_distance(p.elements[0] * psi0, psi0), 1e-9);
    }
  }
}

TEST(RandomizedMeasurement, RejectsNonDiagonal) {
  EXPECT_EQ(code_of([] {
              randomized_measurement_at(build_even_family(even_spec(4)), std::vector<double>(4, 0.0));
            }),
            ErrorCode::NotDiagonal);
}

TEST(RandomizedMeasurement, MonteCarloMatchesAverage) {
  const std::size_t n = 10000;
  std::mt19937_64 rng(7);
  const MaxEntSet set = even_ivu(4);
  const ComplexMatrix psi_u = state_of(set.unitaries[2]);
  ComplexMatrix s0(16, 16), s1(16, 16);
  double mean = 0.0, sq = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const Povm p = randomized_measurement_at(set, draw(4, rng));
    s0 = s0 + p.elements[0];
    s1 = s1 + p.elements[1];
    const double e = expectation(psi_u, p.elements[0] + p.elements[1]);
    mean += e;
    sq += e * e;
  }
  const double inv = 1.0 / static_cast<double>(n);
  const auto [a0, a1] = averaged_operators(set);
  EXPECT_LT(frobenius_distance(inv * s0, a0), 5.0 * frobenius_norm(a0) / std::sqrt(n));
  EXPECT_LT(frobenius_distance(inv * s1, a1), 5.0 * frobenius_norm(a1) / std::sqrt(n));
  mean *= inv;
  const double sigma = std::sqrt(std::max(0.0, sq * inv - mean * mean) * inv);
  EXPECT_LE(std::abs(mean - 0.5), 3.0 * sigma + 1e-12);
}

TEST(AveragedOperators, PaperIdentities) {
  const MaxEntSet set = even_ivu(4);
  const auto [p0, p1] = averaged_operators(set);
  EXPECT_NEAR(expectation(state_of(set.unitaries[0]), p0), 1.0, 1e-12);
  EXPECT_NEAR(expectation(state_of(set.unitaries[1]), p1), 1.0, 1e-12);
  const ComplexMatrix r = off_diagonal_projector(4);
  EXPECT_NEAR(expectation(state_of(set.unitaries[2]), r), 1.0, 1e-12);
  for (const auto& u : build_mod3_family(mod3_spec(5)).unitaries) EXPECT_LE(expectation(state_of(u), off_diagonal_projector(5)), 1.0 + 1e-12);
}

TEST(RandomizedError, UniformEvenD4IsTight) {
  EXPECT_NEAR(randomized_error_exact(even_ivu(4), uniform_priors(3)), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(randomized_error_exact(build_even_family(even_spec(4)), uniform_priors(3)), 1.0 / 6.0, 1e-12);
}

TEST(RandomizedError, BoundHoldsForUniformPriors) {
  for (std::size_t d : {4u, 6u, 8u})
    EXPECT_LE(randomized_error_exact(build_even_family(even_spec(d)), uniform_priors(3)), 2.0 / (3.0 * d) + 1e-9);
  for (std::size_t d : {5u, 8u})
    EXPECT_LE(randomized_error_exact(build_mod3_family(mod3_spec(d)), uniform_priors(3)), 2.0 / (3.0 * d) + 1e-9);
}

TEST(RandomizedError, SkewedPriors) {
  EXPECT_NEAR(randomized_error_exact(even_ivu(4), {0.5, 0.4, 0.1}), 0.05, 1e-12);
  EXPECT_NEAR(randomized_error_exact(even_ivu(4), {0.6, 0.4, 0.0}), 0.0, 1e-15);
  // Unsorted priors are relabeled so the least likely state carries the error.
  EXPECT_NEAR(randomized_error_exact(even_ivu(4), {0.1, 0.4, 0.5}), 0.05, 1e-12);
}

TEST(RandomizedError, BadPriors) {
  EXPECT_EQ(code_of([] { randomized_error_exact(even_ivu(4), {0.5, 0.5, 0.5}); }), ErrorCode::BadPriors);
}

TEST(RandomizedConfusion, RowsAndTightness) {
  const RealMatrix c = randomized_confusion_exact(even_ivu(4), uniform_priors(3));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(c(i, 0) + c(i, 1) + c(i, 2), 1.0, 1e-12);
  EXPECT_NEAR(c(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(c(1, 1), 1.0, 1e-12);
  EXPECT_NEAR(c(2, 2), 0.5, 1e-12);
}

TEST(RandomizedTree, OneWayAndMatchesPovm) {
  std::mt19937_64 rng(99);
  const MaxEntSet set = build_even_family(even_spec(4));
  const RandomizedFrame f = prepare_randomized(set, uniform_priors(3));
  const auto x = draw(4, rng);
  const ProtocolTree t = randomized_tree_at(f, x);
  EXPECT_TRUE(is_one_way(t));
  EXPECT_EQ(round_count(t), 2u);
  validate_tree(t, 4, 4, 3, 1e-9);
  const ExactEvaluation ev = evaluate_exact(t, set, uniform_priors(3), 1e-9);
  const RealMatrix dm = discrimination_matrix(f.prepared, randomized_measurement_at(f.prepared, x));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) EXPECT_NEAR(ev.confusion(f.order[a], f.order[b]), dm(a, b), 1e-12);
}
