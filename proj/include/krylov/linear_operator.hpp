#pragma once

#include <cstddef>
#include <memory>

#include "krylov/state.hpp"

namespace krylov {

/// Hermitian operator on C^D exposed through its action on vectors.
///
/// Implementations must keep apply() free of shared mutable state so that
/// several threads may apply the same operator to distinct vectors.
class LinearOperator {
public:
  virtual ~LinearOperator() = default;

  virtual std::size_t dim() const = 0;

  /// out = H in. `out` is resized by the callee.
  virtual void apply(const CVector& in, CVector& out) const = 0;

  bool hermitian() const { return true; }

  CVector operator*(const CVector& in) const {
    CVector out;
    apply(in, out);
    return out;
  }
};

/// Dense Hermitian matrix. Used for random-matrix ensembles and as the
/// reference representation for the exact-evolution oracle.
class DenseOperator final : public LinearOperator {
public:
  /// Throws std::invalid_argument unless `matrix` is square and Hermitian
  /// (to 1e-12 relative to its largest entry).
  explicit DenseOperator(Eigen::MatrixXcd matrix);

  std::size_t dim() const override { return static_cast<std::size_t>(matrix_.rows()); }
  void apply(const CVector& in, CVector& out) const override;

  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  /// True when every entry has zero imaginary part.
  bool is_real() const { return real_; }

private:
  Eigen::MatrixXcd matrix_;
  bool real_ = false;
};

/// Builds the dense matrix of any operator column by column.
/// Throws std::invalid_argument when dim exceeds `cap`.
Eigen::MatrixXcd materialize(const LinearOperator& op, std::size_t cap = 4096);

}  // namespace krylov
