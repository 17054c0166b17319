#include "krylov/propagator.hpp"

#include <algorithm>
#include <stdexcept>

namespace krylov {

KrylovPropagator::KrylovPropagator(const KrylovBasis& basis) : basis_(basis), chain_(basis.tridiag()) {
  if (basis.size() == 0) throw std::invalid_argument("KrylovPropagator: empty basis");
}

CVector KrylovPropagator::coefficients(double t) const { return chain_.evolve_first_site(t); }

ComplexState KrylovPropagator::evolve(double t) const {
  const CVector c = coefficients(t);
  CVector out = CVector::Zero(static_cast<Eigen::Index>(basis_.source_dim()));
  for (std::size_t i = 0; i < basis_.size(); ++i) out += c[static_cast<Eigen::Index>(i)] * basis_.vector(i);
  if (basis_.input_norm() != 1.0) out *= basis_.input_norm();
  return ComplexState(std::move(out));
}

ComplexState krylov_evolve(const KrylovBasis& basis, double t) { return KrylovPropagator(basis).evolve(t); }

CVector reduced_coefficients(const KrylovBasis& basis, double t) { return KrylovPropagator(basis).coefficients(t); }

WavepacketProfile project_profile(const KrylovBasis& basis, const ComplexState& state, double time) {
  if (state.dim() != basis.source_dim()) throw std::invalid_argument("project_profile: dimension mismatch");
  WavepacketProfile p;
  p.time = time;
  p.site_populations.reserve(basis.size());
  for (const CVector& v : basis.vectors()) p.site_populations.push_back(std::norm(v.dot(state.amplitudes())));
  return p;
}

double infidelity(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("infidelity: dimension mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("infidelity: zero state");
  const CVector ua = a / na;
  const CVector ub = b / nb;
  const CVector perp = ub - ua.dot(ub) * ua;
  return std::clamp(perp.squaredNorm(), 0.0, 1.0);
}

double true_infidelity(const ComplexState& approx, const ComplexState& exact) {
  return infidelity(approx.amplitudes(), exact.amplitudes());
}

}  // namespace krylov
