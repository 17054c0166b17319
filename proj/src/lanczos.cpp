#include "krylov/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace krylov {

class LanczosStepper {
public:
  LanczosStepper(KrylovBasis& basis, const LinearOperator& h) : b_(basis), h_(h) {}

  void start(const ComplexState& psi) {
    b_.input_norm_ = psi.norm();
    if (b_.input_norm_ == 0.0) throw std::invalid_argument("lanczos_iterate: zero input state");
    b_.source_dim_ = h_.dim();
    b_.vectors_.push_back(psi.amplitudes() / b_.input_norm_);
    b_.tridiag_ = SymmetricTridiagonal();
    b_.scale_ = 0.0;
    expand_last(0.0);
  }

  // Promotes the pending residual to the next basis vector and expands it.
  // Returns false, marking breakdown, when the residual is negligible.
  bool advance() {
    if (negligible(b_.residual_beta_)) {
      mark_breakdown();
      return false;
    }
    const double beta = b_.residual_beta_;
    b_.vectors_.push_back(b_.residual_ / beta);
    b_.tridiag_.offdiag.push_back(beta);
    b_.scale_ = std::max(b_.scale_, beta);
    expand_last(beta);
    return true;
  }

  void finish() {
    if (negligible(b_.residual_beta_)) mark_breakdown();
  }

private:
  bool negligible(double beta) const { return beta <= b_.options_.breakdown_rel_tol * b_.scale_; }

  void mark_breakdown() {
    b_.breakdown_ = true;
    b_.residual_beta_ = 0.0;
  }

  // Applies H to the newest vector v_j, records alpha_{j+1} and leaves the
  // orthogonalized residual w_{j+1} in residual_.
  void expand_last(double beta_prev) {
    const std::size_t j = b_.vectors_.size() - 1;
    const CVector& v = b_.vectors_[j];
    CVector w;
    h_.apply(v, w);
    const double alpha = v.dot(w).real();
    w -= alpha * v;
    if (j > 0) w -= beta_prev * b_.vectors_[j - 1];

    if (b_.options_.reorth == Reorthogonalization::full) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const CVector& u : b_.vectors_) w -= u.dot(w) * u;
      }
    }

    b_.tridiag_.diag.push_back(alpha);
    b_.scale_ = std::max(b_.scale_, std::abs(alpha));
    b_.residual_beta_ = w.norm();
    b_.residual_ = std::move(w);
  }

  KrylovBasis& b_;
  const LinearOperator& h_;
};

KrylovBasis lanczos_iterate(const LinearOperator& h, const ComplexState& psi, std::size_t n,
                            const LanczosOptions& options) {
  if (n < 1) throw std::invalid_argument("lanczos_iterate: basis size must be at least 1");
  if (psi.dim() != h.dim()) throw std::invalid_argument("lanczos_iterate: state and operator dimensions differ");
  if (n > h.dim()) throw std::invalid_argument("lanczos_iterate: basis size exceeds the Hilbert-space dimension");

  KrylovBasis basis;
  basis.options_ = options;
  LanczosStepper stepper(basis, h);
  stepper.start(psi);
  while (basis.size() < n) {
    if (!stepper.advance()) return basis;
  }
  stepper.finish();
  return basis;
}

KrylovBasis extend_one(const KrylovBasis& basis, const LinearOperator& h) {
  if (basis.breakdown()) {
    throw std::logic_error("extend_one: basis is an invariant subspace; the Krylov error is exactly zero");
  }
  if (basis.size() == 0) throw std::logic_error("extend_one: empty basis");
  if (h.dim() != basis.source_dim()) throw std::invalid_argument("extend_one: operator dimension differs from basis");
  if (basis.size() >= basis.source_dim()) throw std::logic_error("extend_one: basis already spans the whole space");

  KrylovBasis out = basis;
  LanczosStepper stepper(out, h);
  if (stepper.advance()) stepper.finish();
  ++out.extensions_;
  return out;
}

}  // namespace krylov
