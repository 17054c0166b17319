#pragma once

#include <cstddef>
#include <vector>

#include "krylov/state.hpp"

namespace krylov {

/// Real symmetric tridiagonal matrix: diag has n entries, offdiag n-1.
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  SymmetricTridiagonal() = default;
  /// Throws std::invalid_argument unless offdiag.size() + 1 == diag.size().
  SymmetricTridiagonal(std::vector<double> diag, std::vector<double> offdiag);

  /// Constant diagonal `alpha`, constant off-diagonal `beta`.
  static SymmetricTridiagonal homogeneous(std::size_t n, double alpha, double beta);

  std::size_t size() const { return diag.size(); }

  /// Leading m x m block.
  SymmetricTridiagonal leading(std::size_t m) const;

  /// Appends a site with onsite energy `alpha` coupled by `coupling` to the last one.
  SymmetricTridiagonal extended(double coupling, double alpha) const;

  Eigen::MatrixXd dense() const;

  /// max(|diag|, |offdiag|); zero for the empty matrix.
  double max_abs() const;
};

/// Eigenvalues in ascending order, eigenvectors in the columns.
struct TridiagonalEigen {
  RVector eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// Implicit-shift QL with Wilkinson shifts, accumulating eigenvectors.
/// Output is sorted ascending and each eigenvector column carries a
/// nonnegative first nonzero component so the result is deterministic.
TridiagonalEigen eig_sym_tridiagonal(const SymmetricTridiagonal& t);

/// exp(-i T t) applied to real-space chains via a cached eigendecomposition.
class TridiagonalPropagator {
public:
  explicit TridiagonalPropagator(const SymmetricTridiagonal& t);

  std::size_t size() const { return static_cast<std::size_t>(eig_.eigenvalues.size()); }
  const TridiagonalEigen& eigen() const { return eig_; }

  /// e^{-iTt} v. Throws std::invalid_argument on dimension mismatch.
  CVector apply(double t, const CVector& v) const;

  /// e^{-iTt} e_1, the evolution of the chain state localized on the first site.
  CVector evolve_first_site(double t) const;

private:
  TridiagonalEigen eig_;
  RVector first_row_;  // Q(0, k)
};

/// One-shot e^{-iTt} v.
CVector expi_tridiagonal_apply(const SymmetricTridiagonal& t, double time, const CVector& v);

}  // namespace krylov
