// Copyright 2026 The mxl Authors
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

#include <cmath>
#include <limits>

#include "mxl/geometry.hpp"
#include "support.hpp"

namespace mxl {
namespace {

using testing::Gen;

FeasibleAction scalar_action(double x) {
  RealVector v(1);
  v(0) = x;
  return FeasibleAction::from_matrix(BlockHermitian(HermitianMatrix::diagonal(v)));
}

BlockHermitian scalar_dual(double y) {
  RealVector v(1);
  v(0) = y;
  return BlockHermitian(HermitianMatrix::diagonal(v));
}

TEST(FeasibleAction, RejectsBoundaryPoints) {
  RealVector v(2);
  v << 0.5, 0.0;
  EXPECT_THROW(FeasibleAction::from_matrix(BlockHermitian(HermitianMatrix::diagonal(v))), DomainError);
  v << 0.5, 0.5;
  EXPECT_THROW(FeasibleAction::from_matrix(BlockHermitian(HermitianMatrix::diagonal(v))), DomainError);
  v << 0.5, 0.4;
  EXPECT_NO_THROW(FeasibleAction::from_matrix(BlockHermitian(HermitianMatrix::diagonal(v))));
  EXPECT_NO_THROW(FeasibleAction::from_matrix(BlockHermitian(HermitianMatrix::diagonal(v)), 0.95));
  EXPECT_THROW(FeasibleAction::from_matrix(BlockHermitian(HermitianMatrix::diagonal(v)), 0.9), DomainError);
}

TEST(FeasibleAction, EigenFloorAdmitsNumericalBoundary) {
  RealVector v(2);
  v << 0.5, -1e-18;
  const auto a = FeasibleAction::from_matrix(BlockHermitian(HermitianMatrix::diagonal(v)), 1.0, kLogFloor);
  EXPECT_NEAR(a.min_log_eigenvalue(), std::log(kLogFloor), 1e-12);
}

TEST(Entropy, ScalarClosedForm) {
  EXPECT_NEAR(entropy(scalar_action(0.5)), -std::log(2.0), 1e-15);
  EXPECT_NEAR(entropy(scalar_action(1e-12)), 0.0, 1e-10);
}

TEST(Entropy, UniformPointMatchesEigenvalueSum) {
  for (Index m : {1, 3, 6}) {
    const double u = 1.0 / static_cast<double>(m + 1);
    const FeasibleAction x = FeasibleAction::from_matrix(BlockHermitian(u * HermitianMatrix::identity(m)));
    const double direct = static_cast<double>(m) * u * std::log(u) + (1.0 - m * u) * std::log(1.0 - m * u);
    EXPECT_NEAR(entropy(x), direct, 1e-12);
  }
}

TEST(Conjugate, ClosedForms) {
  EXPECT_NEAR(conjugate(zero_blocks(1, 2)), std::log(3.0), 1e-15);
  RealVector v(2);
  v << 100.0, 100.0;
  const double t = 100.0;
  EXPECT_NEAR(conjugate(BlockHermitian(HermitianMatrix::diagonal(v))) - t, std::log(std::exp(-t) + 2.0), 1e-12);
  v << 800.0, -3.0;
  EXPECT_TRUE(std::isfinite(conjugate(BlockHermitian(HermitianMatrix::diagonal(v)))));
}

TEST(Conjugate, NonFiniteInputIsARangeError) {
  RealVector v(2);
  v << 1e308, 0.0;
  const BlockHermitian overflowed(10.0 * HermitianMatrix::diagonal(v));
  EXPECT_THROW(conjugate(overflowed), RangeError);
  EXPECT_THROW(mirror_map(overflowed), RangeError);
}

TEST(Conjugate, FenchelYoungInequality) {
  Gen g(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const FeasibleAction x = testing::random_feasible(2, 3, g);
    const BlockHermitian y = testing::random_blocks(2, 3, -5.0, 5.0, g);
    EXPECT_GE(conjugate(y), trace_product(y, x.normalized()) - entropy(x) - 1e-12);
  }
}

TEST(MirrorMap, KnownValues) {
  const FeasibleAction x0 = mirror_map(zero_blocks(1, 3));
  EXPECT_LT(testing::max_abs(x0.matrix()[0].matrix() - 0.25 * ComplexMatrix::Identity(3, 3)), 1e-15);
  EXPECT_NEAR(mirror_map(scalar_dual(0.2)).matrix()[0](0, 0).real(), std::exp(0.2) / (1.0 + std::exp(0.2)), 1e-15);
  EXPECT_NEAR(mirror_map(scalar_dual(0.2)).matrix()[0](0, 0).real(), 0.549833997312478, 1e-12);
}

TEST(MirrorMap, BoundScalesTheAction) {
  Gen g(22);
  const BlockHermitian y = testing::random_blocks(2, 3, -2.0, 2.0, g);
  const ComplexMatrix a = mirror_map(y, 2.5).matrix()[1].matrix();
  const ComplexMatrix b = mirror_map(y, 1.0).matrix()[1].matrix();
  EXPECT_LT(testing::max_abs(a - 2.5 * b), 1e-15);
}

TEST(MirrorMap, StrictlyFeasibleOnWideSpectra) {
  Gen g(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const FeasibleAction x = mirror_map(testing::random_blocks(2, 3, -50.0, 50.0, g));
    EXPECT_GT(std::exp(x.log_slack()), 0.0);
    EXPECT_TRUE(std::isfinite(x.min_log_eigenvalue()));
    EXPECT_LT(x.normalized_trace(), 1.0 + 1e-15);
  }
}

TEST(QuantumKl, IdentityAndScalarValue) {
  Gen g(24);
  const FeasibleAction x = testing::random_feasible(2, 3, g);
  EXPECT_NEAR(quantum_kl(x, x), 0.0, 1e-12);
  EXPECT_NEAR(quantum_kl(scalar_action(0.5), scalar_action(0.25)), 0.5 * std::log(4.0 / 3.0), 1e-15);
}

TEST(QuantumKl, PinskerTypeLowerBound) {
  Gen g(25);
  for (int trial = 0; trial < 1000; ++trial) {
    const FeasibleAction a = testing::random_feasible(2, 3, g);
    const FeasibleAction b = testing::random_feasible(2, 3, g);
    const double d = quantum_kl(a, b);
    const double t = trace_norm(a.normalized() - b.normalized());
    EXPECT_GE(d, 0.25 * t * t);
    EXPECT_GT(d, 1e-8);
  }
}

TEST(QuantumKl, BlockCountMismatch) {
  Gen g(26);
  EXPECT_THROW(quantum_kl(testing::random_feasible(2, 3, g), testing::random_feasible(1, 3, g)), InvalidInput);
}

TEST(FenchelCoupling, EqualsDivergenceOfMirrorImage) {
  Gen g(27);
  for (int trial = 0; trial < 1000; ++trial) {
    const FeasibleAction xs = testing::random_feasible(2, 3, g);
    const BlockHermitian y = testing::random_blocks(2, 3, -50.0, 50.0, g);
    const double f = fenchel_coupling(xs, y);
    EXPECT_GE(f, 0.0);
    EXPECT_NEAR(f, quantum_kl(xs, mirror_map(y)), 1e-8 * std::max(1.0, f));
  }
}

TEST(FenchelCoupling, VanishesAtMirrorImage) {
  Gen g(28);
  for (int trial = 0; trial < 100; ++trial) {
    const BlockHermitian y = testing::random_blocks(2, 3, -5.0, 5.0, g);
    EXPECT_NEAR(fenchel_coupling(mirror_map(y), y), 0.0, 1e-10);
  }
}

TEST(ThreePoint, ZeroAndSmallSteps) {
  Gen g(29);
  const FeasibleAction xs = testing::random_feasible(2, 3, g);
  const BlockHermitian y = testing::random_blocks(2, 3, -5.0, 5.0, g);
  EXPECT_NEAR(three_point_slack(xs, y, zero_blocks(2, 3)), 0.0, 1e-12);
  EXPECT_TRUE(three_point_check(xs, y, zero_blocks(2, 3)));
  const BlockHermitian v = testing::random_blocks(2, 3, -1.0, 1.0, g);
  EXPECT_TRUE(three_point_check(xs, y, 1e-6 * v));
}

TEST(ThreePoint, HoldsOnRandomTriples) {
  Gen g(30);
  for (int trial = 0; trial < 1000; ++trial) {
    const FeasibleAction xs = testing::random_feasible(2, 3, g);
    const BlockHermitian y = testing::random_blocks(2, 3, -5.0, 5.0, g);
    const BlockHermitian u = testing::random_blocks(2, 3, -5.0, 5.0, g);
    EXPECT_GE(three_point_slack(xs, y, u), -1e-9);
  }
}

}  // namespace
}  // namespace mxl
