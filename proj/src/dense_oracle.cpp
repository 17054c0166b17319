#include "krylov/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace krylov {

DenseOracle::DenseOracle(const LinearOperator& h, std::size_t cap) {
  if (h.dim() > cap) {
    throw std::invalid_argument("dense oracle refused: dimension " + std::to_string(h.dim()) + " exceeds oracle cap " +
                                std::to_string(cap) + " (the oracle is a verification tool, not a propagator)");
  }
  const Eigen::MatrixXcd m = materialize(h, cap);
  real_ = m.imag().cwiseAbs().maxCoeff() == 0.0;
  if (real_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense oracle: eigensolver failed");
    eigenvalues_ = solver.eigenvalues();
    real_vectors_ = solver.eigenvectors();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense oracle: eigensolver failed");
    eigenvalues_ = solver.eigenvalues();
    complex_vectors_ = solver.eigenvectors();
  }
}

ComplexState DenseOracle::evolve(const ComplexState& psi, double t) const {
  if (psi.dim() != dim()) throw std::invalid_argument("DenseOracle::evolve: dimension mismatch");
  if (t == 0.0) return psi;
  const CVector& v = psi.amplitudes();
  CVector coeffs;
  if (real_) {
    coeffs.resize(v.size());
    coeffs.real() = real_vectors_.transpose() * v.real();
    coeffs.imag() = real_vectors_.transpose() * v.imag();
  } else {
    coeffs = complex_vectors_.adjoint() * v;
  }
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::polar(1.0, -eigenvalues_[k] * t);
  }
  CVector out;
  if (real_) {
    out.resize(v.size());
    out.real() = real_vectors_ * coeffs.real();
    out.imag() = real_vectors_ * coeffs.imag();
  } else {
    out = complex_vectors_ * coeffs;
  }
  return ComplexState(std::move(out));
}

ComplexState exact_evolve_dense(const LinearOperator& h, const ComplexState& psi, double t, std::size_t cap) {
  return DenseOracle(h, cap).evolve(psi, t);
}

}  // namespace krylov
