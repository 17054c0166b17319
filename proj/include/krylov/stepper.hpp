#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "krylov/estimators.hpp"
#include "krylov/lanczos.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/state.hpp"

namespace krylov {

/// The estimator already exceeds the budget at the smallest trial step.
class BudgetUnreachable : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct StepPolicy {
  double dt_min = 1e-6;
  double safety = 0.9;
  /// Bisection stops once the bracket is narrower than this fraction of its lower end.
  double rel_bisection_tol = 1e-3;
  std::size_t max_steps = 100000;
};

/// Largest dt <= t_cap with estimate(dt) <= budget, located at the first
/// upward crossing by geometric bracket expansion from dt_min followed by
/// bisection, then scaled by the safety factor. Returns t_cap untouched when
/// the budget is never exceeded on the probed points up to t_cap.
/// Throws BudgetUnreachable when estimate(dt_min) > budget.
double max_step_for_tolerance(const std::function<double(double)>& estimate, double budget, double t_cap,
                              const StepPolicy& policy = {});

double max_step_for_tolerance(const ErrorEstimator& estimator, double budget, double t_cap,
                              const StepPolicy& policy = {});

/// Convenience form building the estimator; `h` is needed for extra_site_exact.
double max_step_for_tolerance(const KrylovBasis& basis, double budget, EstimatorKind kind, double t_cap,
                              const LinearOperator* h = nullptr, const StepPolicy& policy = {});

struct StepRecord {
  double t_start = 0.0;
  double dt = 0.0;
  std::size_t basis_size = 0;
  double estimated_error = 0.0;
  double budget = 0.0;
  EstimatorKind estimator = EstimatorKind::extra_site_exact;
  double wall_time = 0.0;  // seconds
};

/// How the total tolerance is shared between steps. `linear` spends it as a
/// sum of per-step infidelities. `amplitude` spends sqrt(tol) as a sum of
/// per-step sqrt(eps): step errors are vectors that can add in phase, so the
/// final infidelity is bounded by (sum sqrt(eps))^2 rather than sum eps.
enum class BudgetRule { amplitude, linear };

std::string_view to_string(BudgetRule rule);
BudgetRule parse_budget_rule(std::string_view name);

struct EvolveConfig {
  double t_final = 1.0;
  double tol = 1e-8;
  std::size_t krylov_dim = 20;
  EstimatorKind estimator = EstimatorKind::extra_site_exact;
  AveragingMode averaging = AveragingMode::literal;
  BudgetRule budget_rule = BudgetRule::amplitude;
  StepPolicy policy;
  LanczosOptions lanczos;
};

struct EvolutionReport {
  ComplexState final_state;
  std::vector<StepRecord> steps;
  double total_estimated_error = 0.0;  // sum of step estimates, in order
  double amplitude_error_bound = 0.0;  // (sum of sqrt(step estimates))^2
  EvolveConfig config;
};

/// Restarted Krylov evolution to t_final with step sizes chosen from the
/// cheap estimator. Per-step budgets are allocated from the remaining
/// tolerance (in the units of the budget rule) in proportion to the step's
/// share of the remaining time. Under either rule the sum of accepted
/// estimates never exceeds tol.
EvolutionReport evolve_adaptive(const LinearOperator& h, const ComplexState& psi, const EvolveConfig& config);

}  // namespace krylov
