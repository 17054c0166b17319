#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "krylov/config.hpp"
#include "krylov/dense_oracle.hpp"
#include "krylov/estimators.hpp"
#include "krylov/linear_operator.hpp"
#include "krylov/models.hpp"
#include "krylov/stepper.hpp"

namespace krylov {

// Experiment harness behind the command-line tool. Every command returns a
// typed result plus a CsvTable view of it; tables carry a config echo so the
// files are self-describing.

enum class ModelKind { ising, goe, gue, toeplitz };

struct ModelSpec {
  ModelKind kind = ModelKind::ising;
  IsingParams ising;      // ising
  std::size_t size = 10;  // spins (ising), D (goe/gue), sites (toeplitz)
  double alpha = 0.0;     // toeplitz
  double beta = 1.0;      // toeplitz

  std::size_t dimension() const;
};

struct ExperimentConfig {
  ModelSpec model;
  std::size_t krylov_dim = 30;
  double t_min = 0.0;
  double t_max = 5.0;
  std::size_t n_points = 201;
  std::uint64_t seed = 1;
  std::vector<EstimatorKind> estimators{EstimatorKind::extra_site_exact, EstimatorKind::extra_site_averaged,
                                        EstimatorKind::toeplitz_analytic, EstimatorKind::park_light};
  bool band = false;
  std::string out;
  std::size_t oracle_cap = kDefaultOracleCap;

  // snapshots
  std::vector<double> times{0.5, 1.25, 2.5, 3.5};
  std::size_t snapshot_dim = 0;  // 0 means min(2 N, D)

  // toeplitz
  std::size_t n_prime = 31;

  // evolve
  double tol = 1e-8;
  double t_final = 100.0;
  EstimatorKind step_estimator = EstimatorKind::extra_site_exact;
  AveragingMode averaging = AveragingMode::literal;
  BudgetRule budget_rule = BudgetRule::amplitude;
  std::string state_out;

  /// Reads known keys from a flat key=value config; unknown keys are rejected.
  static ExperimentConfig from_config(const KeyValueConfig& kv);

  /// Throws std::invalid_argument when t_min >= t_max, n_points < 2 or
  /// the Krylov dimension exceeds the model dimension.
  void validate() const;

  std::vector<double> grid() const;
  std::vector<std::pair<std::string, std::string>> echo() const;
};

std::unique_ptr<LinearOperator> build_model(const ModelSpec& model);

/// Seeded random state, except for the Toeplitz model, which starts on its first site.
ComplexState initial_state(const ModelSpec& model, std::uint64_t seed);

/// CSV with '#' comment lines for the config echo and trailing summaries.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;

  void add_row(const std::vector<double>& values);
  void write(std::ostream& out) const;
};

/// Scientific notation with 15 significant digits.
std::string format_number(double x);

struct RegimesResult {
  std::vector<double> t;
  std::vector<double> echo;   // |<psi_N(t)|psi(t)>|^2
  std::vector<double> error;  // eps_N(t)
  double t_exp = 0.0;         // NaN when the error never leaves the plateau
  double t_col = 0.0;
  std::vector<std::pair<std::string, std::string>> config;

  CsvTable table() const;
};

/// First grid time at which eps exceeds `threshold` on `sustain` consecutive points; NaN if never.
double measure_t_exp(const std::vector<double>& t, const std::vector<double>& error, double threshold = 1e-10,
                     std::size_t sustain = 3);
/// Midpoint of the grid interval with the steepest echo drop.
double measure_t_col(const std::vector<double>& t, const std::vector<double>& echo);

RegimesResult run_regimes(const ExperimentConfig& cfg);

struct SnapshotRow {
  double t;
  std::size_t site;
  double exact_population;
  double krylov_population;
};

struct SnapshotsResult {
  std::vector<SnapshotRow> rows;
  std::size_t basis_length = 0;
  std::vector<std::pair<std::string, std::string>> config;

  CsvTable table() const;
  /// sum_i i p_i / sum_i p_i for one snapshot time.
  double center_of_mass(double t, bool exact) const;
};

SnapshotsResult run_snapshots(const ExperimentConfig& cfg);

struct BoundsResult {
  std::vector<double> t;
  std::vector<double> oracle;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[column][time]
  std::vector<double> band_lower, band_upper;
  std::vector<std::pair<std::string, std::string>> config;

  const std::vector<double>& column(const std::string& name) const;
  CsvTable table() const;
};

/// Oracle error and each requested estimator over the time grid. The
/// averaged estimator contributes both its literal and hybrid variants.
BoundsResult run_bounds(const ExperimentConfig& cfg);

struct ToeplitzResult {
  std::vector<double> t;
  std::vector<double> analytic;  // |echo|^2 from the closed form
  std::vector<double> numeric;   // |echo|^2 from spectral propagation
  std::vector<std::pair<std::string, std::string>> config;

  double max_abs_difference() const;
  CsvTable table() const;
};

ToeplitzResult run_toeplitz(std::size_t n, std::size_t n_prime, double alpha, double beta,
                            const std::vector<double>& grid);

struct EvolveResult {
  EvolutionReport report;
  bool oracle_checked = false;
  double true_final_infidelity = 0.0;
  std::vector<std::pair<std::string, std::string>> config;

  CsvTable table() const;
};

EvolveResult run_evolve(const ExperimentConfig& cfg);

}  // namespace krylov
