// Copyright 2026 The qmlab Authors
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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qmlab/update_rules.hpp"

using namespace qmlab;

namespace {

const Effectd& zplus() {
  static const Effectd e(DensityMatrixd::basis_state(2, 0).matrix());
  return e;
}
const Effectd& zminus() {
  static const Effectd e(DensityMatrixd::basis_state(2, 1).matrix());
  return e;
}

BlochVectord bloch_of(const DensityMatrixd& rho) { return density_to_bloch(rho); }

}  // namespace

TEST(Lueders, ProjectiveCollapse) {
  const auto out = apply_update(LudersRule{}, zplus(), DensityMatrixd::maximally_mixed(2));
  EXPECT_NEAR(out.probability, 0.5, 1e-15);
  EXPECT_LE(max_abs_diff(out.post_state.matrix(), DensityMatrixd::basis_state(2, 0).matrix()), 1e-15);
}

TEST(Lueders, UnnormalizedExamples) {
  std::mt19937_64 rng(4);
  const auto rho = random_mixed_state<double>(2, rng);
  EXPECT_LE(max_abs_diff(unnormalized_map(LudersRule{}, Effectd::identity(2), rho), rho.matrix()), 1e-15);
  const ComplexMatrixd half_zp = 0.5 * DensityMatrixd::basis_state(2, 0).matrix();
  EXPECT_LE(max_abs_diff(unnormalized_map(LudersRule{}, zplus(), DensityMatrixd::maximally_mixed(2)), half_zp), 1e-15);
}

TEST(Lueders, UnnormalizedIsConvexLinear) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const Effectd f(random_mixed_state<double>(2, rng).matrix());
    const auto e = random_ensemble<double>(2, 2 + t % 3, rng);
    ComplexMatrixd avg = ComplexMatrixd::Zero(2, 2);
    for (const auto& m : e.members()) avg += m.weight * unnormalized_map(LudersRule{}, f, m.state);
    ASSERT_LE(max_abs_diff(unnormalized_map(LudersRule{}, f, mix(e)), avg), 1e-12);
  }
}

TEST(Lueders, KrausInstrument) {
  // Outcome z+ followed by a bit flip; z- left alone.
  ComplexMatrixd k0 = ComplexMatrixd::Zero(2, 2);
  k0(1, 0) = 1;  // |z-><z+|
  const LudersRule rule({{k0}, {DensityMatrixd::basis_state(2, 1).matrix()}});
  const auto out = apply_update(rule, zplus(), DensityMatrixd::maximally_mixed(2));
  EXPECT_NEAR(out.probability, 0.5, 1e-15);
  EXPECT_LE(max_abs_diff(out.post_state.matrix(), DensityMatrixd::basis_state(2, 1).matrix()), 1e-15);
  EXPECT_THROW(apply_update(rule, Effectd::identity(2), DensityMatrixd::maximally_mixed(2)), InvalidInput);
}

TEST(Lueders, RejectsNonTracePreservingInstrument) {
  EXPECT_THROW(LudersRule({{DensityMatrixd::basis_state(2, 0).matrix()}}), InvalidInput);
  EXPECT_THROW(LudersRule({{ComplexMatrixd(ComplexMatrixd::Identity(2, 2) * 1.2)}}), InvalidInput);
}

TEST(Logistic, LambdaDomain) {
  EXPECT_THROW(LogisticBlochRule(-0.1), InvalidInput);
  EXPECT_THROW(LogisticBlochRule(4.01), InvalidInput);
  EXPECT_NO_THROW(LogisticBlochRule(0));
  EXPECT_NO_THROW(LogisticBlochRule(4));
}

TEST(Logistic, HalfRadiusGoesToPole) {
  const auto rho = bloch_to_density(BlochVectord{0, 0, 0.5});
  for (const auto* f : {&zplus(), &zminus()}) {
    const auto out = apply_update(LogisticBlochRule(4), *f, rho);
    const auto v = bloch_of(out.post_state);
    EXPECT_NEAR(v.z, 1.0, 1e-15);
    EXPECT_NEAR(out.probability, born_probability(*f, rho), 0.0);
  }
}

TEST(Logistic, PureStateCollapsesToCenter) {
  std::mt19937_64 rng(6);
  for (double lambda : {0.0, 1.0, 2.5, 4.0}) {
    const auto rho = random_pure_state<double>(2, rng);
    const auto out = apply_update(LogisticBlochRule(lambda), zplus(), rho);
    EXPECT_LE(bloch_of(out.post_state).radius(), 1e-7);
  }
}

TEST(Logistic, MatchesOracleAndPreservesDirection) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> lam(0, 4);
  for (int t = 0; t < 300; ++t) {
    const auto rho = random_mixed_state<double>(2, rng);
    const double lambda = lam(rng);
    const auto v = bloch_of(rho);
    const auto expected = oracle::logistic(lambda, {v.x, v.y, v.z});
    const auto got = bloch_of(apply_update(LogisticBlochRule(lambda), zplus(), rho).post_state);
    ASSERT_NEAR(got.x, expected.x, 1e-12);
    ASSERT_NEAR(got.y, expected.y, 1e-12);
    ASSERT_NEAR(got.z, expected.z, 1e-12);
    ASSERT_LE(got.radius(), lambda / 4 + 1e-12);
    // Outcome independence.
    const auto other = bloch_of(apply_update(LogisticBlochRule(lambda), zminus(), rho).post_state);
    ASSERT_NEAR(other.z, got.z, 1e-15);
  }
}

TEST(Logistic, CenterIsFixed) {
  const auto out = apply_update(LogisticBlochRule(4), zplus(), DensityMatrixd::maximally_mixed(2));
  EXPECT_LE(max_abs_diff(out.post_state.matrix(), DensityMatrixd::maximally_mixed(2).matrix()), 0.0);
}

TEST(Logistic, LambdaZeroMapsEverythingToCenter) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto out = apply_update(LogisticBlochRule(0), zplus(), random_mixed_state<double>(2, rng));
    ASSERT_LE(bloch_of(out.post_state).radius(), 1e-15);
  }
}

TEST(Logistic, UnnormalizedExample) {
  const auto rho = bloch_to_density(BlochVectord{0, 0, 0.5});
  const ComplexMatrixd expected = 0.75 * bloch_to_density(BlochVectord{0, 0, 1}).matrix();
  EXPECT_LE(max_abs_diff(unnormalized_map(LogisticBlochRule(4), zplus(), rho), expected), 1e-15);
}

TEST(Logistic, UnnormalizedIsNotConvexLinear) {
  // Canonical witness {(1/2, I/2), (1/2, |z+><z+|)}; both members map to I/2.
  const auto half = DensityMatrixd::maximally_mixed(2);
  const auto zp = DensityMatrixd::basis_state(2, 0);
  const auto m = mix(EnsembleDecompositiond({{0.5, half}, {0.5, zp}}));
  const LogisticBlochRule rule(4);
  const ComplexMatrixd avg = 0.5 * unnormalized_map(rule, zplus(), half) + 0.5 * unnormalized_map(rule, zplus(), zp);
  EXPECT_GE(max_abs_diff(unnormalized_map(rule, zplus(), m), avg), 0.1);
}

TEST(Logistic, RejectsNonQubit) {
  const auto rho = DensityMatrixd::maximally_mixed(3);
  EXPECT_THROW(apply_update(LogisticBlochRule(2), Effectd::identity(3), rho), UnsupportedDimension);
  EXPECT_THROW(unnormalized_map(LogisticBlochRule(2), Effectd::identity(3), rho), UnsupportedDimension);
}

TEST(ZeroProbability, ApplyThrowsMapIsZero) {
  const auto zp = DensityMatrixd::basis_state(2, 0);
  for (const UpdateRule& rule : {UpdateRule{LudersRule{}}, UpdateRule{LogisticBlochRule(3)},
                                 UpdateRule{ProbabilityDependentRule{}}}) {
    EXPECT_THROW(apply_update(rule, zminus(), zp), UndefinedPostState);
    EXPECT_LE(unnormalized_map(rule, zminus(), zp).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(ProbabilityDependent, DepolarizesByOutcomeProbability) {
  const auto rho = bloch_to_density(BlochVectord{0, 0, 0.5});
  const auto out = apply_update(ProbabilityDependentRule{}, zplus(), rho);
  // Lueders post-state |z+>, mixed with I/2 at weight p = 0.75: z = 0.25.
  EXPECT_NEAR(out.probability, 0.75, 1e-15);
  EXPECT_NEAR(bloch_of(out.post_state).z, 0.25, 1e-15);
}

TEST(ProbabilityDependent, EigenstateEdgeCases) {
  const auto zp = DensityMatrixd::basis_state(2, 0);
  const auto pd = apply_update(ProbabilityDependentRule{}, zplus(), zp);
  const auto lu = apply_update(LudersRule{}, zplus(), zp);
  EXPECT_NEAR(pd.probability, lu.probability, 1e-12);
  // p = 1: full depolarization.
  EXPECT_LE(max_abs_diff(pd.post_state.matrix(), DensityMatrixd::maximally_mixed(2).matrix()), 1e-15);
  // p = 0: both unnormalized maps vanish.
  EXPECT_LE(max_abs_diff(unnormalized_map(ProbabilityDependentRule{}, zminus(), zp),
                         unnormalized_map(LudersRule{}, zminus(), zp)),
            1e-12);
}

TEST(AllRules, PostStatesValidAndTracesMatchBorn) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> lam(0, 4);
  for (int t = 0; t < 300; ++t) {
    const auto rho = random_mixed_state<double>(2, rng);
    const Effectd f(random_mixed_state<double>(2, rng).matrix());
    for (const UpdateRule& rule : {UpdateRule{LudersRule{}}, UpdateRule{LogisticBlochRule(lam(rng))},
                                   UpdateRule{ProbabilityDependentRule{}}}) {
      const auto out = apply_update(rule, f, rho);
      ASSERT_TRUE(validate_density<double>(out.post_state.matrix()).ok());
      ASSERT_NEAR(unnormalized_map(rule, f, rho).trace().real(), born_probability(f, rho), 1e-12);
    }
  }
}

TEST(PsdSqrt, SquaresBack) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_mixed_state<double>(3, rng).matrix();
    const auto s = psd_sqrt(m);
    ASSERT_LE(max_abs_diff(ComplexMatrixd(s * s), m), 1e-12);
  }
}
