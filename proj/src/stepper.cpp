#include "krylov/stepper.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "krylov/propagator.hpp"

namespace krylov {

double max_step_for_tolerance(const std::function<double(double)>& estimate, double budget, double t_cap,
                              const StepPolicy& policy) {
  if (!(budget > 0.0 && budget <= 1.0)) throw std::invalid_argument("max_step_for_tolerance: budget must lie in (0, 1]");
  if (!(t_cap > 0.0)) throw std::invalid_argument("max_step_for_tolerance: t_cap must be positive");

  double lo = std::min(policy.dt_min, t_cap);
  if (estimate(lo) > budget) {
    throw BudgetUnreachable("error estimate exceeds the budget " + std::to_string(budget) + " already at dt = " +
                            std::to_string(lo) + "; increase the Krylov dimension or the tolerance");
  }
  if (lo >= t_cap) return t_cap;

  double hi = 0.0;
  for (;;) {
    const double next = std::min(2.0 * lo, t_cap);
    if (estimate(next) > budget) {
      hi = next;
      break;
    }
    lo = next;
    if (lo >= t_cap) return t_cap;
  }

  while (hi - lo > policy.rel_bisection_tol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (estimate(mid) > budget) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  const double dt = policy.safety * lo;
  // lo is known to satisfy the budget; the scaled step is only a guess.
  return estimate(dt) <= budget ? dt : lo;
}

double max_step_for_tolerance(const ErrorEstimator& estimator, double budget, double t_cap, const StepPolicy& policy) {
  return max_step_for_tolerance([&estimator](double t) { return estimator(t); }, budget, t_cap, policy);
}

double max_step_for_tolerance(const KrylovBasis& basis, double budget, EstimatorKind kind, double t_cap,
                              const LinearOperator* h, const StepPolicy& policy) {
  return max_step_for_tolerance(ErrorEstimator(kind, basis, h), budget, t_cap, policy);
}

std::string_view to_string(BudgetRule rule) {
  return rule == BudgetRule::amplitude ? "amplitude" : "linear";
}

BudgetRule parse_budget_rule(std::string_view name) {
  if (name == "amplitude") return BudgetRule::amplitude;
  if (name == "linear") return BudgetRule::linear;
  throw std::invalid_argument("unknown budget rule '" + std::string(name) + "' (expected amplitude or linear)");
}

EvolutionReport evolve_adaptive(const LinearOperator& h, const ComplexState& psi, const EvolveConfig& config) {
  if (!(config.tol > 0.0 && config.tol < 1.0)) throw std::invalid_argument("evolve_adaptive: tol must lie in (0, 1)");
  if (!(config.t_final > 0.0)) throw std::invalid_argument("evolve_adaptive: t_final must be positive");
  if (config.krylov_dim < 1) throw std::invalid_argument("evolve_adaptive: Krylov dimension must be at least 1");
  if (psi.dim() != h.dim()) throw std::invalid_argument("evolve_adaptive: state and operator dimensions differ");

  using clock = std::chrono::steady_clock;

  EvolutionReport report;
  report.config = config;
  ComplexState state = psi.normalized();
  double t = 0.0;
  const bool amplitude = config.budget_rule == BudgetRule::amplitude;
  // Remaining allowance in the rule's own units: infidelity or sqrt(infidelity).
  double remaining = amplitude ? std::sqrt(config.tol) : config.tol;
  double amplitude_sum = 0.0;
  const auto to_budget = [amplitude](double x) { return amplitude ? x * x : x; };
  const std::size_t n = std::min(config.krylov_dim, h.dim());

  while (config.t_final - t > 1e-12 * config.t_final) {
    if (report.steps.size() >= config.policy.max_steps) {
      throw std::runtime_error("evolve_adaptive: exceeded " + std::to_string(config.policy.max_steps) + " steps");
    }
    const auto started = clock::now();
    const double t_remaining = config.t_final - t;

    const KrylovBasis basis = lanczos_iterate(h, state, n, config.lanczos);
    StepRecord rec;
    rec.t_start = t;
    rec.basis_size = basis.size();
    rec.estimator = config.estimator;

    if (basis.breakdown()) {
      // Invariant subspace: the Krylov evolution is exact for any time.
      rec.dt = t_remaining;
      rec.estimated_error = 0.0;
      rec.budget = to_budget(remaining);
    } else {
      if (!(remaining > 0.0)) throw BudgetUnreachable("evolve_adaptive: tolerance exhausted before t_final");
      const ErrorEstimator estimator(config.estimator, basis, &h, config.averaging);
      const double proposed = max_step_for_tolerance(estimator, to_budget(remaining), t_remaining, config.policy);
      if (proposed >= t_remaining) {
        rec.dt = t_remaining;
        rec.budget = to_budget(remaining);
      } else {
        rec.budget = to_budget(remaining * proposed / t_remaining);
        rec.dt = max_step_for_tolerance(estimator, rec.budget, proposed, config.policy);
      }
      rec.estimated_error = estimator(rec.dt);
    }

    state = KrylovPropagator(basis).evolve(rec.dt);
    state.normalize();

    t = rec.dt >= t_remaining ? config.t_final : t + rec.dt;
    report.total_estimated_error += rec.estimated_error;
    amplitude_sum += std::sqrt(rec.estimated_error);
    remaining = std::max(0.0, remaining - (amplitude ? std::sqrt(rec.estimated_error) : rec.estimated_error));
    rec.wall_time = std::chrono::duration<double>(clock::now() - started).count();
    report.steps.push_back(rec);
  }

  report.amplitude_error_bound = amplitude_sum * amplitude_sum;
  report.final_state = std::move(state);
  return report;
}

}  // namespace krylov
