#pragma once

#include <cstddef>
#include <vector>

#include "krylov/linear_operator.hpp"
#include "krylov/state.hpp"
#include "krylov/tridiagonal.hpp"

namespace krylov {

enum class Reorthogonalization {
  full,  ///< re-project every new vector against all stored vectors, twice
  none,  ///< plain three-term recurrence
};

struct LanczosOptions {
  Reorthogonalization reorth = Reorthogonalization::full;
  /// Breakdown when beta <= breakdown_rel_tol * running max(|alpha|, beta).
  double breakdown_rel_tol = 1e-12;
};

/// Orthonormal Lanczos basis v_0..v_{M-1} of the Krylov space of (H, psi)
/// together with the tridiagonal reduction T_M.
///
/// residual_beta() is the norm of the unnormalized residual after M steps,
/// i.e. the coupling beta_M between site M and a prospective site M+1.
/// breakdown() means that residual vanished: the span is invariant under H,
/// residual_beta() is reported as 0 and Krylov evolution is exact.
class KrylovBasis {
public:
  std::size_t size() const { return vectors_.size(); }
  std::size_t source_dim() const { return source_dim_; }
  const std::vector<CVector>& vectors() const { return vectors_; }
  const CVector& vector(std::size_t i) const { return vectors_.at(i); }
  const SymmetricTridiagonal& tridiag() const { return tridiag_; }
  double residual_beta() const { return residual_beta_; }
  bool breakdown() const { return breakdown_; }
  /// Norm of the state the basis was built from.
  double input_norm() const { return input_norm_; }
  /// Number of extend_one() calls that produced this basis.
  std::size_t extensions() const { return extensions_; }
  const LanczosOptions& options() const { return options_; }

private:
  friend KrylovBasis lanczos_iterate(const LinearOperator&, const ComplexState&, std::size_t, const LanczosOptions&);
  friend KrylovBasis extend_one(const KrylovBasis&, const LinearOperator&);
  friend class LanczosStepper;

  std::vector<CVector> vectors_;
  SymmetricTridiagonal tridiag_;
  CVector residual_;
  double residual_beta_ = 0.0;
  double scale_ = 0.0;
  bool breakdown_ = false;
  std::size_t source_dim_ = 0;
  double input_norm_ = 1.0;
  std::size_t extensions_ = 0;
  LanczosOptions options_;
};

/// Runs min(n, breakdown point) Lanczos steps from psi.
/// Throws std::invalid_argument for a zero state, n < 1, n > H.dim() or a
/// dimension mismatch.
KrylovBasis lanczos_iterate(const LinearOperator& h, const ComplexState& psi, std::size_t n,
                            const LanczosOptions& options = {});

/// One more Lanczos step: exact alpha_{M+1} and the new residual coupling.
/// Throws std::logic_error on a breakdown basis (the subspace is already
/// invariant) or when the basis already spans the whole space.
KrylovBasis extend_one(const KrylovBasis& basis, const LinearOperator& h);

}  // namespace krylov
