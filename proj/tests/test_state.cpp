#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "krylov/dense_oracle.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/models.hpp"
#include "krylov/state.hpp"
#include "test_support.hpp"

using namespace krylov;

namespace {

ComplexState make(std::initializer_list<complex_t> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return ComplexState(v);
}

}  // namespace

TEST(Inner, UnitVectorWithItself) { EXPECT_EQ(inner(make({1, 0}), make({1, 0})), complex_t(1, 0)); }

TEST(Inner, OrthogonalBasisVectors) { EXPECT_EQ(inner(make({1, 0}), make({0, 1})), complex_t(0, 0)); }

TEST(Inner, HadamardPairIsOrthogonal) {
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(inner(make({s, s}), make({s, -s}))), 0.0, 1e-16);
}

TEST(Inner, ConjugatesTheBra) {
  EXPECT_EQ(inner(make({complex_t(0, 1)}), make({1})), complex_t(0, -1));
  EXPECT_EQ(inner(make({1}), make({complex_t(0, 1)})), complex_t(0, 1));
}

TEST(Inner, DimensionMismatchThrows) {
  EXPECT_THROW(inner(make({1, 0}), make({1, 0, 0})), std::invalid_argument);
}

TEST(ComplexState, ZeroDimensionRejected) {
  EXPECT_THROW(ComplexState(std::size_t{0}), std::invalid_argument);
  EXPECT_THROW(ComplexState{CVector()}, std::invalid_argument);
}

TEST(ComplexState, BasisAndNormalize) {
  const auto e2 = ComplexState::basis(4, 2);
  EXPECT_EQ(e2[2], complex_t(1, 0));
  EXPECT_DOUBLE_EQ(e2.norm(), 1.0);
  EXPECT_THROW(ComplexState::basis(4, 4), std::invalid_argument);

  auto s = make({3, complex_t(0, 4)});
  s.normalize();
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
  EXPECT_THROW(ComplexState(3).normalize(), std::invalid_argument);
}

TEST(DenseOperator, RejectsNonHermitianAndNonSquare) {
  Eigen::MatrixXcd a(2, 2);
  a << 0, 1, 2, 0;
  EXPECT_THROW(DenseOperator{a}, std::invalid_argument);
  EXPECT_THROW(DenseOperator{Eigen::MatrixXcd::Zero(2, 3)}, std::invalid_argument);
}

TEST(DenseOperator, ApplyAndMaterialize) {
  Eigen::MatrixXcd a(2, 2);
  a << 1, complex_t(0, -2), complex_t(0, 2), 3;
  const DenseOperator op(a);
  EXPECT_FALSE(op.is_real());
  const Eigen::MatrixXcd m = materialize(op);
  EXPECT_LT((m - a).norm(), 1e-15);
  EXPECT_THROW(materialize(op, 1), std::invalid_argument);
}

TEST(ExactEvolveDense, ZeroTimeReturnsInput) {
  const auto h = goe_sample(16, 3);
  const auto psi = random_state(16, 5);
  const auto out = exact_evolve_dense(h, psi, 0.0);
  EXPECT_EQ(out.amplitudes(), psi.amplitudes());
}

TEST(ExactEvolveDense, TwoLevelRabi) {
  Eigen::MatrixXcd sx(2, 2);
  sx << 0, 1, 1, 0;
  const DenseOperator h(sx);
  for (double t : {0.3, 1.0, 2.7, 11.0}) {
    const auto out = exact_evolve_dense(h, ComplexState::basis(2, 0), t);
    EXPECT_NEAR(std::abs(out[0] - complex_t(std::cos(t), 0)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(out[1] - complex_t(0, -std::sin(t))), 0.0, 1e-13);
  }
}

TEST(ExactEvolveDense, MatchesPadeExponential) {
  const auto h = gue_sample(24, 9);
  const auto psi = random_state(24, 2);
  const double t = 1.7;
  const CVector ref = reference::expm_apply(h.matrix(), t, psi.amplitudes());
  const auto out = exact_evolve_dense(h, psi, t);
  EXPECT_LT((out.amplitudes() - ref).norm(), 1e-10);
}

TEST(ExactEvolveDense, PreservesNorm) {
  const auto h = goe_sample(32, 1);
  const auto psi = random_state(32, 1);
  const DenseOracle oracle(h);
  for (double t : {0.1, 1.0, 10.0, 100.0}) EXPECT_NEAR(oracle.evolve(psi, t).norm(), 1.0, 1e-12);
}

TEST(DenseOracle, RefusesAboveCap) {
  const auto h = goe_sample(16, 1);
  EXPECT_THROW(DenseOracle(h, 8), std::invalid_argument);
}
