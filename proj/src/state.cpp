#include "krylov/state.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "krylov/linear_operator.hpp"

namespace krylov {

ComplexState::ComplexState(std::size_t dim) : amps_(CVector::Zero(static_cast<Eigen::Index>(dim))) {
  if (dim == 0) throw std::invalid_argument("ComplexState: dimension must be positive");
}

ComplexState::ComplexState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw std::invalid_argument("ComplexState: dimension must be positive");
}

ComplexState ComplexState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("ComplexState::basis: index out of range");
  ComplexState s(dim);
  s[index] = 1.0;
  return s;
}

void ComplexState::normalize() {
  const double n = amps_.norm();
  if (n == 0.0) throw std::invalid_argument("ComplexState::normalize: zero state");
  amps_ /= n;
}

ComplexState ComplexState::normalized() const {
  ComplexState s = *this;
  s.normalize();
  return s;
}

complex_t inner(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("inner: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
  return u.dot(v);  // Eigen's dot conjugates the first argument
}

complex_t inner(const ComplexState& u, const ComplexState& v) { return inner(u.amplitudes(), v.amplitudes()); }

DenseOperator::DenseOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw std::invalid_argument("DenseOperator: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("DenseOperator: matrix is not Hermitian");
  }
  real_ = matrix_.imag().cwiseAbs().maxCoeff() == 0.0;
}

void DenseOperator::apply(const CVector& in, CVector& out) const {
  if (static_cast<std::size_t>(in.size()) != dim()) throw std::invalid_argument("DenseOperator::apply: dimension mismatch");
  out.noalias() = matrix_ * in;
}

Eigen::MatrixXcd materialize(const LinearOperator& op, std::size_t cap) {
  const std::size_t d = op.dim();
  if (d > cap) {
    throw std::invalid_argument("materialize: dimension " + std::to_string(d) + " exceeds cap " + std::to_string(cap));
  }
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd m(n, n);
  CVector e = CVector::Zero(n);
  CVector col;
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    m.col(j) = col;
    e[j] = 0.0;
  }
  return m;
}

}  // namespace krylov
