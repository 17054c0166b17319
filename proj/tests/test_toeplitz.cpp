#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <stdexcept>

#include "krylov/estimators.hpp"
#include "krylov/toeplitz.hpp"
#include "krylov/tridiagonal.hpp"
#include "test_support.hpp"

using namespace krylov;

TEST(ToeplitzEigenvalue, Dimer) {
  const ToeplitzChain c{2, 0.0, 1.0};
  EXPECT_NEAR(toeplitz_eigenvalue(c, 1), 1.0, 1e-15);
  EXPECT_NEAR(toeplitz_eigenvalue(c, 2), -1.0, 1e-15);
  EXPECT_THROW(toeplitz_eigenvalue(c, 0), std::invalid_argument);
  EXPECT_THROW(toeplitz_eigenvalue(c, 3), std::invalid_argument);
}

TEST(ToeplitzEigenvalue, MatchesDenseSolver) {
  const ToeplitzChain c{5, 0.0, 1.0};
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(c.tridiagonal().dense());
  // E_k decreases with k; the solver sorts ascending.
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_NEAR(toeplitz_eigenvalue(c, k), ref.eigenvalues()[5 - k], 1e-12);
}

TEST(ToeplitzEigenvalue, ZeroHoppingIsFlat) {
  const ToeplitzChain c{7, 0.4, 0.0};
  for (std::size_t k = 1; k <= 7; ++k) EXPECT_EQ(toeplitz_eigenvalue(c, k), 0.4);
}

TEST(ToeplitzEigenvector, SingleSite) {
  EXPECT_NEAR(toeplitz_eigenvector_component({1, 0.0, 1.0}, 1, 1), 1.0, 1e-15);
}

TEST(ToeplitzEigenvector, MatchesDenseSolverUpToSign) {
  const ToeplitzChain c{5, 0.3, -0.8};
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(c.tridiagonal().dense());
  for (std::size_t k = 1; k <= 5; ++k) {
    // Locate the numeric eigenpair by eigenvalue.
    Eigen::Index j = 0;
    (ref.eigenvalues().array() - toeplitz_eigenvalue(c, k)).abs().minCoeff(&j);
    const Eigen::VectorXd v = ref.eigenvectors().col(j);
    Eigen::VectorXd a(5);
    for (std::size_t n = 1; n <= 5; ++n) a[static_cast<Eigen::Index>(n - 1)] = toeplitz_eigenvector_component(c, n, k);
    EXPECT_NEAR(std::abs(a.dot(v)), 1.0, 1e-12);
  }
}

TEST(ToeplitzTransition, ZeroTimeIsIdentity) {
  const ToeplitzChain c{6, 0.2, 1.1};
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t m = 1; m <= 6; ++m)
      EXPECT_NEAR(std::abs(toeplitz_transition(c, n, m, 0.0) - (n == m ? 1.0 : 0.0)), 0.0, 1e-14);
}

TEST(ToeplitzTransition, DimerCosine) {
  const ToeplitzChain c{2, 0.0, 1.0};
  for (double t : {0.3, 2.0, 7.5}) {
    EXPECT_NEAR(std::abs(toeplitz_transition(c, 1, 1, t) - std::cos(t)), 0.0, 1e-14);
  }
}

TEST(ToeplitzTransition, MatchesSpectralPropagationConjugated) {
  const ToeplitzChain c{30, 0.0, 1.0};
  CVector e1 = CVector::Zero(30);
  e1[0] = 1.0;
  for (double t : {0.5, 6.0, 31.0}) {
    // S carries e^{+iTt}; the propagator applies e^{-iTt}.
    const CVector ref = expi_tridiagonal_apply(c.tridiagonal(), -t, e1);
    for (std::size_t n = 1; n <= 30; ++n) {
      EXPECT_NEAR(std::abs(toeplitz_transition(c, n, 1, t) - ref[static_cast<Eigen::Index>(n - 1)]), 0.0, 1e-10);
    }
  }
}

TEST(ToeplitzTransition, MatchesPadeExponential) {
  const ToeplitzChain c{9, 0.35, -0.6};
  const Eigen::MatrixXcd u = (complex_t(0.0, 2.3) * c.tridiagonal().dense().cast<complex_t>()).exp();
  for (std::size_t n = 1; n <= 9; ++n)
    for (std::size_t m = 1; m <= 9; ++m)
      EXPECT_NEAR(std::abs(toeplitz_transition(c, n, m, 2.3) - u(n - 1, m - 1)), 0.0, 1e-12);
}

TEST(ToeplitzTransition, UnitaryRows) {
  const ToeplitzChain c{12, -0.3, 0.9};
  const ToeplitzPropagator prop(c);
  for (double t : {0.7, 5.0, 40.0}) {
    Eigen::MatrixXcd s(12, 12);
    for (std::size_t m = 1; m <= 12; ++m) s.col(static_cast<Eigen::Index>(m - 1)) = prop.column(m, t);
    for (Eigen::Index n = 0; n < 12; ++n) EXPECT_NEAR(s.row(n).squaredNorm(), 1.0, 1e-10);
  }
}

TEST(ToeplitzTransition, GroupProperty) {
  const ToeplitzChain c{20, 0.1, 1.0};
  const ToeplitzPropagator prop(c);
  auto matrix = [&](double t) {
    Eigen::MatrixXcd s(20, 20);
    for (std::size_t m = 1; m <= 20; ++m) s.col(static_cast<Eigen::Index>(m - 1)) = prop.column(m, t);
    return s;
  };
  const Eigen::MatrixXcd lhs = matrix(1.3 + 4.4);
  const Eigen::MatrixXcd rhs = matrix(1.3) * matrix(4.4);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ToeplitzEcho, EqualLengthsAndZeroTime) {
  for (double t : {0.0, 3.0, 50.0}) EXPECT_NEAR(std::abs(toeplitz_echo(12, 12, 0.4, 1.2, t)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(toeplitz_echo(30, 31, 0.0, 1.0, 0.0) - 1.0), 0.0, 1e-14);
}

TEST(ToeplitzEcho, MatchesNumericEcho) {
  const auto a = SymmetricTridiagonal::homogeneous(30, 0.0, 1.0);
  const auto b = SymmetricTridiagonal::homogeneous(31, 0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.5 * i;
    worst = std::max(worst, std::abs(std::abs(toeplitz_echo(30, 31, 0.0, 1.0, t)) - std::abs(echo_general(a, b, t))));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(ToeplitzEcho, InfidelityFormAgreesWithAmplitude) {
  for (double t : {5.0, 20.0, 60.0}) {
    EXPECT_NEAR(toeplitz_echo_infidelity(30, 31, 0.0, 1.0, t), 1.0 - std::norm(toeplitz_echo(30, 31, 0.0, 1.0, t)),
                1e-13);
  }
}

TEST(Rescaling, AlphaInvariance) {
  for (double alpha : {-3.0, 0.2, 7.0}) {
    for (double t : {1.0, 17.0}) {
      EXPECT_NEAR(std::abs(toeplitz_echo(20, 21, alpha, 1.0, t)), std::abs(toeplitz_echo(20, 21, 0.0, 1.0, t)), 1e-12);
    }
  }
}

TEST(Rescaling, BetaRescalesTime) {
  EXPECT_NEAR(std::abs(toeplitz_echo(30, 31, 0.0, 2.0, 5.0)), std::abs(toeplitz_echo(30, 31, 0.0, 1.0, 10.0)), 1e-12);
  const auto [direct, rescaled] = rescaling_check(30, 31, 0.0, 2.0, 5.0);
  EXPECT_NEAR(std::abs(direct), std::abs(rescaled), 1e-12);
}

TEST(Rescaling, ZeroHoppingIsStatic) {
  for (double t : {1.0, 50.0}) EXPECT_NEAR(std::abs(rescaling_check(30, 31, 0.5, 0.0, t).first), 1.0, 1e-14);
}

TEST(Rescaling, RandomTriples) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(-5.0, 5.0), ub(0.05, 3.0), ut(0.0, 60.0);
  for (int i = 0; i < 100; ++i) {
    const double a = ua(rng), b = ub(rng), t = ut(rng);
    const auto [direct, rescaled] = rescaling_check(30, 31, a, b, t);
    EXPECT_NEAR(std::abs(direct), std::abs(rescaled), 1e-10) << a << ' ' << b << ' ' << t;
  }
}
