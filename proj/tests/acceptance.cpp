// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. Tolerances and runtime budgets are pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "krylov/dense_oracle.hpp"
#include "krylov/estimators.hpp"
#include "krylov/experiments.hpp"
#include "krylov/lanczos.hpp"
#include "krylov/models.hpp"
#include "krylov/propagator.hpp"
#include "krylov/stepper.hpp"
#include "krylov/toeplitz.hpp"

using namespace krylov;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

template <class... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

// 1. Full-subspace exactness.
Outcome full_subspace() {
  constexpr double kTol = 1e-10;
  const IsingOperator h(IsingParams{8});
  const auto psi = random_state(h.dim(), 1);
  const auto basis = lanczos_iterate(h, psi, h.dim());
  const DenseOracle oracle(h);
  double worst = 0.0;
  for (double t : {1.0, 5.0, 20.0}) worst = std::max(worst, true_infidelity(krylov_evolve(basis, t), oracle.evolve(psi, t)));
  return {worst <= kTol, fmt("max infidelity %.3e (tol %.0e)", worst, kTol)};
}

// 2. Echo identity against the full Lanczos chain.
Outcome echo_identity() {
  constexpr double kTol = 1e-8;
  const IsingOperator h(IsingParams{8});
  const auto psi = random_state(h.dim(), 1);
  const auto full = lanczos_iterate(h, psi, h.dim());
  const auto basis = lanczos_iterate(h, psi, 20);
  const DenseOracle oracle(h);
  const KrylovPropagator prop(basis);
  const ChainEcho echo(basis.tridiag(), full.tridiag());
  double worst = 0.0;
  for (double t : linspace(0.0, 60.0, 50)) {
    const double lhs = 1.0 - true_infidelity(prop.evolve(t), oracle.evolve(psi, t));
    worst = std::max(worst, std::abs(lhs - std::norm(echo.amplitude(t))));
  }
  return {worst <= kTol, fmt("max |(1-eps) - |echo|^2| %.3e over 50 points (tol %.0e), full chain length %zu", worst,
                             kTol, full.size())};
}

struct WindowSeries {
  std::vector<double> oracle, exact, averaged;
};

WindowSeries ising_window(std::uint64_t seed) {
  constexpr double kLow = 1e-12, kHigh = 1e-3;
  const IsingOperator h(IsingParams{});
  const auto psi = random_state(h.dim(), seed);
  const auto basis = lanczos_iterate(h, psi, 30);
  const DenseOracle oracle(h);
  const KrylovPropagator prop(basis);
  const ErrorEstimator exact(EstimatorKind::extra_site_exact, basis, &h);
  const ErrorEstimator averaged(EstimatorKind::extra_site_averaged, basis, nullptr, AveragingMode::literal);
  WindowSeries w;
  for (double t : linspace(0.0, 3.0, 301)) {
    const double eps = true_infidelity(prop.evolve(t), oracle.evolve(psi, t));
    if (eps < kLow || eps > kHigh) continue;
    w.oracle.push_back(eps);
    w.exact.push_back(exact(t));
    w.averaged.push_back(averaged(t));
  }
  return w;
}

std::vector<WindowSeries>& windows() {
  static std::vector<WindowSeries> cache = [] {
    std::vector<WindowSeries> w;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) w.push_back(ising_window(seed));
    return w;
  }();
  return cache;
}

// 3. Extra-site estimator within a decade of the oracle.
Outcome extra_site_fidelity() {
  constexpr double kDecades = 1.0, kFraction = 0.95;
  bool pass = true;
  std::string detail;
  for (std::size_t s = 0; s < windows().size(); ++s) {
    const auto& w = windows()[s];
    std::size_t good = 0;
    for (std::size_t i = 0; i < w.oracle.size(); ++i) {
      if (std::abs(std::log10(w.exact[i]) - std::log10(w.oracle[i])) <= kDecades) ++good;
    }
    const double frac = w.oracle.empty() ? 0.0 : static_cast<double>(good) / static_cast<double>(w.oracle.size());
    pass = pass && !w.oracle.empty() && frac >= kFraction;
    detail += fmt("seed %zu: %zu/%zu; ", s + 1, good, w.oracle.size());
  }
  return {pass, detail + fmt("need >= %.0f%% within %.0f decade", 100 * kFraction, kDecades)};
}

// 4. Averaged-estimator ratio stays roughly constant.
Outcome averaged_constancy() {
  constexpr double kMaxStd = 1.0;
  bool pass = true;
  std::string detail;
  for (std::size_t s = 0; s < windows().size(); ++s) {
    const auto& w = windows()[s];
    std::vector<double> logs;
    for (std::size_t i = 0; i < w.oracle.size(); ++i) logs.push_back(std::log10(w.averaged[i] / w.oracle[i]));
    const double n = static_cast<double>(logs.size());
    const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
    double var = 0.0;
    for (double l : logs) var += (l - mean) * (l - mean);
    const double sd = std::sqrt(var / n);
    pass = pass && logs.size() > 1 && sd <= kMaxStd;
    detail += fmt("seed %zu: std %.3f mean %.3f; ", s + 1, sd, mean);
  }
  return {pass, detail + fmt("tol %.1f", kMaxStd)};
}

// 5. Toeplitz closed form against numerics, plus the alpha/beta laws.
Outcome toeplitz_checks() {
  constexpr double kEchoTol = 1e-8, kRescaleTol = 1e-10;
  const auto a = SymmetricTridiagonal::homogeneous(30, 0.0, 1.0);
  const auto b = SymmetricTridiagonal::homogeneous(31, 0.0, 1.0);
  const ChainEcho numeric(a, b);
  double worst = 0.0;
  for (double t : linspace(0.0, 100.0, 200)) {
    worst = std::max(worst, std::abs(std::abs(toeplitz_echo(30, 31, 0.0, 1.0, t)) - std::abs(numeric.amplitude(t))));
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(-5.0, 5.0), ub(0.05, 3.0), ut(0.0, 100.0);
  double worst_rescale = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double alpha = ua(rng), beta = ub(rng), t = ut(rng);
    const auto [direct, rescaled] = rescaling_check(30, 31, alpha, beta, t);
    worst_rescale = std::max(worst_rescale, std::abs(std::abs(direct) - std::abs(rescaled)));
  }
  return {worst <= kEchoTol && worst_rescale <= kRescaleTol,
          fmt("max echo difference %.3e (tol %.0e), max rescaling mismatch %.3e over 100 triples (tol %.0e)", worst,
              kEchoTol, worst_rescale, kRescaleTol)};
}

// 6. Regime structure of the error and echo.
Outcome regime_structure() {
  constexpr double kPlateau = 1e-10, kDecades = 6.0, kHighEcho = 0.99, kLowEcho = 0.9, kWindow = 0.2;
  ExperimentConfig cfg;
  cfg.krylov_dim = 30;
  cfg.t_min = 0.0;
  cfg.t_max = 5.0;
  cfg.n_points = 501;
  cfg.seed = 1;
  const auto r = run_regimes(cfg);
  if (std::isnan(r.t_exp)) return {false, "error never left the plateau"};

  double plateau = 0.0, start = std::numeric_limits<double>::infinity(), peak = 0.0;
  bool monotone = true;
  double high_echo_min = 1.0;
  bool dropped = false;
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    const double t = r.t[i], e = r.error[i];
    if (t < r.t_exp) plateau = std::max(plateau, e);
    if (t >= r.t_exp && t <= r.t_col) {
      start = std::min(start, e);
      // Smoothed monotonicity: never fall below half of the running maximum.
      if (e < 0.5 * peak) monotone = false;
      peak = std::max(peak, e);
    }
    if (t < (1.0 - kWindow) * r.t_col) high_echo_min = std::min(high_echo_min, r.echo[i]);
    if (t <= (1.0 + kWindow) * r.t_col && r.echo[i] < kLowEcho) dropped = true;
  }
  const double decades = std::log10(peak / start);
  const bool pass = r.t_exp < r.t_col && plateau <= kPlateau && monotone && decades >= kDecades &&
                    high_echo_min >= kHighEcho && dropped;
  return {pass, fmt("t_exp %.3f < t_col %.3f; plateau max %.2e (tol %.0e); growth %.1f decades (need %.0f, "
                    "monotone %s); min echo before 0.8 t_col %.4f (need %.2f); drop below %.1f by 1.2 t_col: %s",
                    r.t_exp, r.t_col, plateau, kPlateau, decades, kDecades, monotone ? "yes" : "no", high_echo_min,
                    kHighEcho, kLowEcho, dropped ? "yes" : "no")};
}

// 7. Adaptive stepper keeps the final error within ten times the tolerance.
Outcome stepper_guarantee() {
  constexpr double kTol = 1e-8, kFactor = 10.0;
  constexpr int kSeeds = 10, kNeeded = 9;
  const IsingOperator h(IsingParams{8});
  const DenseOracle oracle(h);
  int good = 0;
  bool sums_exact = true;
  double worst = 0.0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const auto psi = random_state(h.dim(), static_cast<std::uint64_t>(seed));
    EvolveConfig cfg;
    cfg.t_final = 100.0;
    cfg.tol = kTol;
    cfg.krylov_dim = 20;
    const auto r = evolve_adaptive(h, psi, cfg);
    double sum = 0.0;
    for (const auto& s : r.steps) sum += s.estimated_error;
    sums_exact = sums_exact && sum == r.total_estimated_error;
    const double eps = true_infidelity(r.final_state, oracle.evolve(psi, cfg.t_final));
    worst = std::max(worst, eps);
    if (eps <= kFactor * kTol) ++good;
  }
  return {good >= kNeeded && sums_exact,
          fmt("%d/%d runs with final infidelity <= %.0e (need %d), worst %.3e, totals exact: %s", good, kSeeds,
              kFactor * kTol, kNeeded, worst, sums_exact ? "yes" : "no")};
}

// 8. Lanczos orthonormality, reduction and prefix stability.
Outcome lanczos_invariants() {
  constexpr double kTol = 1e-10;
  const IsingOperator ising(IsingParams{10});
  const DenseOperator goe = goe_sample(256, 1);
  struct Case {
    const LinearOperator* h;
    std::size_t n;
    const char* name;
  };
  bool pass = true;
  std::string detail;
  for (const Case& c : {Case{&ising, 60, "ising n=10 N=60"}, Case{&goe, 40, "goe D=256 N=40"}}) {
    const auto psi = random_state(c.h->dim(), 2);
    const auto b = lanczos_iterate(*c.h, psi, c.n);
    const Eigen::MatrixXd t = b.tridiag().dense();
    double ortho = 0.0, reduction = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const CVector hv = *c.h * b.vector(j);
      for (std::size_t i = 0; i < b.size(); ++i) {
        ortho = std::max(ortho, std::abs(b.vector(i).dot(b.vector(j)) - (i == j ? 1.0 : 0.0)));
        reduction = std::max(reduction, std::abs(b.vector(i).dot(hv) - t(static_cast<Eigen::Index>(i),
                                                                          static_cast<Eigen::Index>(j))));
      }
    }
    double prefix = 0.0;
    const auto b10 = lanczos_iterate(*c.h, psi, 10), b20 = lanczos_iterate(*c.h, psi, 20),
               b40 = lanczos_iterate(*c.h, psi, 40);
    for (const KrylovBasis* small : {&b10, &b20}) {
      for (std::size_t i = 0; i < small->size(); ++i) {
        prefix = std::max(prefix, std::abs(small->tridiag().diag[i] - b40.tridiag().diag[i]));
      }
      for (std::size_t i = 0; i + 1 < small->size(); ++i) {
        prefix = std::max(prefix, std::abs(small->tridiag().offdiag[i] - b40.tridiag().offdiag[i]));
      }
    }
    pass = pass && b.size() == c.n && ortho <= kTol && reduction <= kTol && prefix <= kTol;
    detail += fmt("%s: ortho %.1e, reduction %.1e, prefix %.1e; ", c.name, ortho, reduction, prefix);
  }
  return {pass, detail + fmt("tol %.0e", kTol)};
}

// Not a criterion: the same runs as 7 with per-step budgets summed linearly.
void report_linear_budget() {
  const IsingOperator h(IsingParams{8});
  const DenseOracle oracle(h);
  double worst = 0.0;
  for (int seed = 1; seed <= 3; ++seed) {
    const auto psi = random_state(h.dim(), static_cast<std::uint64_t>(seed));
    EvolveConfig cfg;
    cfg.t_final = 100.0;
    cfg.budget_rule = BudgetRule::linear;
    const auto r = evolve_adaptive(h, psi, cfg);
    worst = std::max(worst, true_infidelity(r.final_state, oracle.evolve(psi, cfg.t_final)));
  }
  std::printf("[INFO] stepper with linear budget rule, seeds 1-3: worst final infidelity %.3e\n", worst);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "full-subspace exactness", 10, full_subspace},
      {2, "echo identity", 60, echo_identity},
      {3, "extra-site estimator fidelity", 120, extra_site_fidelity},
      {4, "averaged-bound constancy", 120, averaged_constancy},
      {5, "toeplitz analytic vs numeric", 30, toeplitz_checks},
      {6, "regime structure", 300, regime_structure},
      {7, "adaptive stepper guarantee", 300, stepper_guarantee},
      {8, "lanczos invariants", 60, lanczos_invariants},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto started = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d (%s): %s; runtime %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
  }
  report_linear_budget();
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
