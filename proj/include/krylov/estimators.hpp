#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "krylov/lanczos.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/tridiagonal.hpp"

namespace krylov {

// Cheap surrogates for the Krylov infidelity eps_N(t). The error of a size-N
// basis is a Loschmidt echo between the truncated chain T_N and the full
// Lanczos chain T_D; the surrogates replace T_D by an (N+1)-site chain whose
// last site is either computed exactly, guessed from averages, or treated
// analytically as part of a homogeneous chain.

enum class EstimatorKind {
  oracle,
  extra_site_exact,
  extra_site_averaged,
  toeplitz_analytic,
  park_light,
};

std::string_view to_string(EstimatorKind kind);
/// Accepts the names produced by to_string. Throws std::invalid_argument otherwise.
EstimatorKind parse_estimator_kind(std::string_view name);

struct ErrorEstimate {
  double value = 0.0;
  double time = 0.0;
  EstimatorKind kind = EstimatorKind::oracle;
};

/// Mean onsite energy over alpha_1..alpha_N and mean hopping over the
/// couplings beta_1..beta_{N-1} inside T_N.
struct AveragedCoefficients {
  double alpha_bar = 0.0;
  double beta_bar = 0.0;
};

/// How the virtual site N+1 is coupled in the averaged estimator.
enum class AveragingMode {
  literal,  ///< coupling beta_bar, onsite alpha_bar
  hybrid,   ///< coupling = exact residual beta_N, onsite alpha_bar
};

std::string_view to_string(AveragingMode mode);
AveragingMode parse_averaging_mode(std::string_view name);

/// <0| e^{+i A t} e^{-i B t} |0> with both chains zero-padded to a common
/// length. The padding realizes the truncated operator whose sites beyond
/// the shorter chain carry no onsite energy and no hopping.
complex_t echo_general(const SymmetricTridiagonal& a, const SymmetricTridiagonal& b, double t);

/// Echo between two chains with both eigendecompositions cached.
class ChainEcho {
public:
  ChainEcho(const SymmetricTridiagonal& a, const SymmetricTridiagonal& b);

  complex_t amplitude(double t) const;
  /// 1 - |amplitude|^2 in orthogonal-complement form, clamped to [0, 1].
  double infidelity(double t) const;

private:
  std::pair<CVector, CVector> states(double t) const;

  TridiagonalPropagator a_;
  TridiagonalPropagator b_;
};

AveragedCoefficients averaged_coefficients(const KrylovBasis& basis);

/// eps_{M-1}^{M}(t) from a basis of size M, normally the output of
/// extend_one. A breakdown basis that was never extended is an invariant
/// subspace and yields an exact zero.
ErrorEstimate estimate_extra_site_exact(const KrylovBasis& extended, double t);

/// Extra-site estimate with the site N+1 coefficients replaced by averages.
/// Requires N >= 2 (std::invalid_argument otherwise). No operator
/// applications are made.
ErrorEstimate estimate_extra_site_averaged(const KrylovBasis& basis, double t,
                                           AveragingMode mode = AveragingMode::literal);

/// Closed-form homogeneous-chain echo with (alpha_bar, beta_bar) between N
/// and N+1 sites. Requires N >= 2.
ErrorEstimate estimate_toeplitz_analytic(const KrylovBasis& basis, double t);

/// Population of the far end of the truncated chain, |<e_N| e^{-iT_N t} |e_1>|^2.
ErrorEstimate estimate_park_light(const KrylovBasis& basis, double t);

/// Envelope of the averaged estimator over the four choices of
/// (min or max alpha_i) x (min or max beta_i) for the virtual site.
struct EstimateBand {
  double lower = 0.0;
  double upper = 0.0;
};
EstimateBand estimate_extra_site_band(const KrylovBasis& basis, double t);

/// Time-sweep form of the estimators: all chain eigendecompositions are
/// computed once at construction.
class ErrorEstimator {
public:
  /// `basis` is the size-N basis whose error is being estimated. The
  /// extra_site_exact kind needs `h` to run the extra Lanczos step (unless
  /// the basis is already invariant); other kinds ignore it. The oracle kind
  /// is not constructible here.
  ErrorEstimator(EstimatorKind kind, const KrylovBasis& basis, const LinearOperator* h = nullptr,
                 AveragingMode mode = AveragingMode::literal);

  EstimatorKind kind() const { return kind_; }
  double operator()(double t) const { return fn_(t); }
  ErrorEstimate estimate(double t) const { return {fn_(t), t, kind_}; }

private:
  EstimatorKind kind_;
  std::function<double(double)> fn_;
};

}  // namespace krylov
