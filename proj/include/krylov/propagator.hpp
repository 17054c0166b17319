#pragma once

#include <vector>

#include "krylov/lanczos.hpp"
#include "krylov/state.hpp"
#include "krylov/tridiagonal.hpp"

namespace krylov {

/// Populations |<v_i|state>|^2 of a state on the stored Lanczos vectors.
struct WavepacketProfile {
  std::vector<double> site_populations;
  double time = 0.0;
};

/// Krylov-approximate evolution psi_M(t) = V^dagger e^{-i T_M t} e_1 for one
/// basis. Holds the eigendecomposition of T_M so time sweeps are cheap.
class KrylovPropagator {
public:
  explicit KrylovPropagator(const KrylovBasis& basis);

  /// Chain coefficients e^{-i T_M t} e_1.
  CVector coefficients(double t) const;
  /// Full-space state, scaled by the norm of the input state.
  ComplexState evolve(double t) const;

private:
  const KrylovBasis& basis_;
  TridiagonalPropagator chain_;
};

ComplexState krylov_evolve(const KrylovBasis& basis, double t);

CVector reduced_coefficients(const KrylovBasis& basis, double t);

/// Throws std::invalid_argument if state.dim() != basis.source_dim().
WavepacketProfile project_profile(const KrylovBasis& basis, const ComplexState& state, double time = 0.0);

/// 1 - |<a|b>|^2 of the normalized inputs, evaluated as the squared norm of
/// the component of b orthogonal to a so that tiny values are resolved below
/// double-precision epsilon. Clamped to [0, 1].
double infidelity(const CVector& a, const CVector& b);

double true_infidelity(const ComplexState& approx, const ComplexState& exact);

}  // namespace krylov
