#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace krylov {

using complex_t = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Complex amplitude vector of a pure state in a D-dimensional Hilbert space.
class ComplexState {
public:
  ComplexState() = default;
  explicit ComplexState(std::size_t dim);
  explicit ComplexState(CVector amplitudes);

  /// Basis state |index> in dimension dim.
  static ComplexState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  CVector& amplitudes() { return amps_; }

  complex_t operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
  complex_t& operator[](std::size_t i) { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }

  /// Rescales to unit norm. Throws std::invalid_argument for the zero vector.
  void normalize();
  ComplexState normalized() const;

private:
  CVector amps_;
};

/// <u|v> = sum_i conj(u_i) v_i. Throws std::invalid_argument on dimension mismatch.
complex_t inner(const ComplexState& u, const ComplexState& v);
complex_t inner(const CVector& u, const CVector& v);

}  // namespace krylov
