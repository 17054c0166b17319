#include "krylov/estimators.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

#include "krylov/propagator.hpp"
#include "krylov/toeplitz.hpp"

namespace krylov {

namespace {

constexpr std::array<std::pair<EstimatorKind, std::string_view>, 5> kKindNames{{
    {EstimatorKind::oracle, "oracle"},
    {EstimatorKind::extra_site_exact, "extra_site_exact"},
    {EstimatorKind::extra_site_averaged, "extra_site_averaged"},
    {EstimatorKind::toeplitz_analytic, "toeplitz_analytic"},
    {EstimatorKind::park_light, "park_light"},
}};

CVector padded(const CVector& v, Eigen::Index len) {
  CVector out = CVector::Zero(len);
  out.head(v.size()) = v;
  return out;
}

void require_history(const KrylovBasis& basis, const char* who) {
  if (basis.size() < 2) {
    throw std::invalid_argument(std::string(who) + ": needs a basis of size >= 2 to average coefficients");
  }
}

SymmetricTridiagonal averaged_extension(const KrylovBasis& basis, AveragingMode mode) {
  const AveragedCoefficients avg = averaged_coefficients(basis);
  const double coupling = mode == AveragingMode::literal ? avg.beta_bar : basis.residual_beta();
  return basis.tridiag().extended(coupling, avg.alpha_bar);
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown estimator kind '" + std::string(name) + "'");
}

std::string_view to_string(AveragingMode mode) { return mode == AveragingMode::literal ? "literal" : "hybrid"; }

AveragingMode parse_averaging_mode(std::string_view name) {
  if (name == "literal") return AveragingMode::literal;
  if (name == "hybrid") return AveragingMode::hybrid;
  throw std::invalid_argument("unknown averaging mode '" + std::string(name) + "'");
}

ChainEcho::ChainEcho(const SymmetricTridiagonal& a, const SymmetricTridiagonal& b) : a_(a), b_(b) {}

std::pair<CVector, CVector> ChainEcho::states(double t) const {
  const auto len = static_cast<Eigen::Index>(std::max(a_.size(), b_.size()));
  return {padded(a_.evolve_first_site(t), len), padded(b_.evolve_first_site(t), len)};
}

complex_t ChainEcho::amplitude(double t) const {
  const auto [a, b] = states(t);
  return a.dot(b);
}

double ChainEcho::infidelity(double t) const {
  const auto [a, b] = states(t);
  return krylov::infidelity(a, b);
}

complex_t echo_general(const SymmetricTridiagonal& a, const SymmetricTridiagonal& b, double t) {
  if (a.size() == 0 || b.size() == 0) throw std::invalid_argument("echo_general: empty chain");
  return ChainEcho(a, b).amplitude(t);
}

AveragedCoefficients averaged_coefficients(const KrylovBasis& basis) {
  if (basis.size() == 0) throw std::invalid_argument("averaged_coefficients: empty basis");
  const auto& t = basis.tridiag();
  AveragedCoefficients avg;
  avg.alpha_bar = std::accumulate(t.diag.begin(), t.diag.end(), 0.0) / static_cast<double>(t.diag.size());
  if (!t.offdiag.empty()) {
    avg.beta_bar = std::accumulate(t.offdiag.begin(), t.offdiag.end(), 0.0) / static_cast<double>(t.offdiag.size());
  }
  return avg;
}

ErrorEstimate estimate_extra_site_exact(const KrylovBasis& extended, double t) {
  const EstimatorKind kind = EstimatorKind::extra_site_exact;
  if (extended.breakdown() && extended.extensions() == 0) return {0.0, t, kind};
  if (extended.size() < 2) throw std::invalid_argument("estimate_extra_site_exact: needs an extended basis of size >= 2");
  const auto& full = extended.tridiag();
  return {ChainEcho(full.leading(full.size() - 1), full).infidelity(t), t, kind};
}

ErrorEstimate estimate_extra_site_averaged(const KrylovBasis& basis, double t, AveragingMode mode) {
  require_history(basis, "estimate_extra_site_averaged");
  const EstimatorKind kind = EstimatorKind::extra_site_averaged;
  if (basis.breakdown()) return {0.0, t, kind};
  return {ChainEcho(basis.tridiag(), averaged_extension(basis, mode)).infidelity(t), t, kind};
}

ErrorEstimate estimate_toeplitz_analytic(const KrylovBasis& basis, double t) {
  require_history(basis, "estimate_toeplitz_analytic");
  const EstimatorKind kind = EstimatorKind::toeplitz_analytic;
  if (basis.breakdown()) return {0.0, t, kind};
  const AveragedCoefficients avg = averaged_coefficients(basis);
  return {toeplitz_echo_infidelity(basis.size(), basis.size() + 1, avg.alpha_bar, avg.beta_bar, t), t, kind};
}

ErrorEstimate estimate_park_light(const KrylovBasis& basis, double t) {
  if (basis.size() == 0) throw std::invalid_argument("estimate_park_light: empty basis");
  const CVector c = TridiagonalPropagator(basis.tridiag()).evolve_first_site(t);
  return {std::clamp(std::norm(c[c.size() - 1]), 0.0, 1.0), t, EstimatorKind::park_light};
}

EstimateBand estimate_extra_site_band(const KrylovBasis& basis, double t) {
  require_history(basis, "estimate_extra_site_band");
  if (basis.breakdown()) return {0.0, 0.0};
  const auto& tri = basis.tridiag();
  const auto [amin, amax] = std::minmax_element(tri.diag.begin(), tri.diag.end());
  const auto [bmin, bmax] = std::minmax_element(tri.offdiag.begin(), tri.offdiag.end());
  EstimateBand band{1.0, 0.0};
  for (double a : {*amin, *amax}) {
    for (double b : {*bmin, *bmax}) {
      const double e = ChainEcho(tri, tri.extended(b, a)).infidelity(t);
      band.lower = std::min(band.lower, e);
      band.upper = std::max(band.upper, e);
    }
  }
  return band;
}

ErrorEstimator::ErrorEstimator(EstimatorKind kind, const KrylovBasis& basis, const LinearOperator* h,
                               AveragingMode mode)
    : kind_(kind) {
  if (basis.size() == 0) throw std::invalid_argument("ErrorEstimator: empty basis");
  if (kind != EstimatorKind::park_light && kind != EstimatorKind::oracle && basis.breakdown()) {
    fn_ = [](double) { return 0.0; };
    return;
  }
  const auto& tri = basis.tridiag();
  switch (kind) {
    case EstimatorKind::oracle:
      throw std::invalid_argument("ErrorEstimator: the oracle needs the exact evolution and is not a cheap estimator");
    case EstimatorKind::extra_site_exact: {
      if (h == nullptr) throw std::invalid_argument("ErrorEstimator: extra_site_exact needs the operator");
      if (basis.size() >= basis.source_dim()) {
        fn_ = [](double) { return 0.0; };
        return;
      }
      const KrylovBasis ext = extend_one(basis, *h);
      auto echo = std::make_shared<ChainEcho>(tri, ext.tridiag());
      fn_ = [echo](double t) { return echo->infidelity(t); };
      return;
    }
    case EstimatorKind::extra_site_averaged: {
      require_history(basis, "ErrorEstimator(extra_site_averaged)");
      auto echo = std::make_shared<ChainEcho>(tri, averaged_extension(basis, mode));
      fn_ = [echo](double t) { return echo->infidelity(t); };
      return;
    }
    case EstimatorKind::toeplitz_analytic: {
      require_history(basis, "ErrorEstimator(toeplitz_analytic)");
      const AveragedCoefficients avg = averaged_coefficients(basis);
      auto shorter = std::make_shared<ToeplitzPropagator>(ToeplitzChain{basis.size(), avg.alpha_bar, avg.beta_bar});
      auto longer = std::make_shared<ToeplitzPropagator>(ToeplitzChain{basis.size() + 1, avg.alpha_bar, avg.beta_bar});
      fn_ = [shorter, longer](double t) {
        const CVector b = longer->column(1, t);
        return infidelity(padded(shorter->column(1, t), b.size()), b);
      };
      return;
    }
    case EstimatorKind::park_light: {
      auto chain = std::make_shared<TridiagonalPropagator>(tri);
      fn_ = [chain](double t) {
        const CVector c = chain->evolve_first_site(t);
        return std::clamp(std::norm(c[c.size() - 1]), 0.0, 1.0);
      };
      return;
    }
  }
  throw std::invalid_argument("ErrorEstimator: unknown estimator kind");
}

}  // namespace krylov
