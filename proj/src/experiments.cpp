#include "krylov/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "krylov/lanczos.hpp"
#include "krylov/propagator.hpp"
#include "krylov/toeplitz.hpp"

namespace krylov {

namespace {

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::ising: return "ising";
    case ModelKind::goe: return "goe";
    case ModelKind::gue: return "gue";
    case ModelKind::toeplitz: return "toeplitz";
  }
  return "unknown";
}

ModelKind parse_model(const std::string& name) {
  for (ModelKind k : {ModelKind::ising, ModelKind::goe, ModelKind::gue, ModelKind::toeplitz}) {
    if (model_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown model '" + name + "' (expected ising, goe, gue or toeplitz)");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "model", "n",     "J",        "hx",         "hz",           "alpha",  "beta",      "krylov_dim",
      "t_min", "t_max", "n_points", "seed",       "estimators",   "band",   "out",       "oracle_cap",
      "times", "snapshot_dim", "n_prime", "tol",  "t_final",      "estimator", "averaging", "state_out",
      "budget_rule"};
  return keys;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: '" + key + "' is not a boolean: " + v);
}

std::string join_kinds(const std::vector<EstimatorKind>& kinds) {
  std::string s;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i) s += ',';
    s += to_string(kinds[i]);
  }
  return s;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += format_number(xs[i]);
  }
  return s;
}

}  // namespace

std::size_t ModelSpec::dimension() const {
  switch (kind) {
    case ModelKind::ising:
      if (ising.n_spins >= 63) throw std::invalid_argument("ising: too many spins");
      return std::size_t{1} << ising.n_spins;
    case ModelKind::goe:
    case ModelKind::gue:
    case ModelKind::toeplitz: return size;
  }
  return 0;
}

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& kv) {
  for (const auto& [key, value] : kv.entries()) {
    if (!known_keys().count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  ExperimentConfig c;
  c.model.kind = parse_model(kv.get_string("model", "ising"));
  c.model.size = kv.get_size("n", c.model.kind == ModelKind::ising ? 10 : 128);
  c.model.ising.n_spins = c.model.size;
  c.model.ising.J = kv.get_double("J", c.model.ising.J);
  c.model.ising.h_x = kv.get_double("hx", c.model.ising.h_x);
  c.model.ising.h_z = kv.get_double("hz", c.model.ising.h_z);
  c.model.alpha = kv.get_double("alpha", c.model.alpha);
  c.model.beta = kv.get_double("beta", c.model.beta);

  c.krylov_dim = kv.get_size("krylov_dim", c.krylov_dim);
  c.t_min = kv.get_double("t_min", c.t_min);
  c.t_max = kv.get_double("t_max", c.t_max);
  c.n_points = kv.get_size("n_points", c.n_points);
  c.seed = kv.get_u64("seed", c.seed);
  if (kv.contains("estimators")) {
    c.estimators.clear();
    for (const auto& w : kv.get_words("estimators", {})) c.estimators.push_back(parse_estimator_kind(w));
  }
  if (auto b = kv.get("band")) c.band = parse_bool("band", *b);
  c.out = kv.get_string("out", c.out);
  c.oracle_cap = kv.get_size("oracle_cap", c.oracle_cap);
  c.times = kv.get_doubles("times", c.times);
  c.snapshot_dim = kv.get_size("snapshot_dim", c.snapshot_dim);
  c.n_prime = kv.get_size("n_prime", c.n_prime);
  c.tol = kv.get_double("tol", c.tol);
  c.t_final = kv.get_double("t_final", c.t_final);
  if (auto e = kv.get("estimator")) c.step_estimator = parse_estimator_kind(*e);
  if (auto a = kv.get("averaging")) c.averaging = parse_averaging_mode(*a);
  if (auto r = kv.get("budget_rule")) c.budget_rule = parse_budget_rule(*r);
  c.state_out = kv.get_string("state_out", c.state_out);
  return c;
}

void ExperimentConfig::validate() const {
  if (!(t_min < t_max)) throw std::invalid_argument("config: t_min must be smaller than t_max");
  if (n_points < 2) throw std::invalid_argument("config: n_points must be at least 2");
  if (krylov_dim < 1) throw std::invalid_argument("config: krylov_dim must be at least 1");
  if (krylov_dim > model.dimension()) {
    throw std::invalid_argument("config: krylov_dim " + std::to_string(krylov_dim) + " exceeds the model dimension " +
                                std::to_string(model.dimension()));
  }
}

std::vector<double> ExperimentConfig::grid() const {
  std::vector<double> g(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    g[i] = t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
  }
  return g;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("model", std::string(model_name(model.kind)));
  e.emplace_back("n", std::to_string(model.kind == ModelKind::ising ? model.ising.n_spins : model.size));
  if (model.kind == ModelKind::ising) {
    e.emplace_back("J", format_number(model.ising.J));
    e.emplace_back("hx", format_number(model.ising.h_x));
    e.emplace_back("hz", format_number(model.ising.h_z));
  }
  if (model.kind == ModelKind::toeplitz) {
    e.emplace_back("alpha", format_number(model.alpha));
    e.emplace_back("beta", format_number(model.beta));
  }
  e.emplace_back("krylov_dim", std::to_string(krylov_dim));
  e.emplace_back("t_min", format_number(t_min));
  e.emplace_back("t_max", format_number(t_max));
  e.emplace_back("n_points", std::to_string(n_points));
  e.emplace_back("seed", std::to_string(seed));
  e.emplace_back("estimators", join_kinds(estimators));
  e.emplace_back("band", band ? "true" : "false");
  e.emplace_back("times", join_numbers(times));
  e.emplace_back("snapshot_dim", std::to_string(snapshot_dim));
  e.emplace_back("n_prime", std::to_string(n_prime));
  e.emplace_back("tol", format_number(tol));
  e.emplace_back("t_final", format_number(t_final));
  e.emplace_back("estimator", std::string(to_string(step_estimator)));
  e.emplace_back("averaging", std::string(to_string(averaging)));
  e.emplace_back("budget_rule", std::string(to_string(budget_rule)));
  return e;
}

std::unique_ptr<LinearOperator> build_model(const ModelSpec& model) {
  switch (model.kind) {
    case ModelKind::ising: return std::make_unique<IsingOperator>(model.ising);
    case ModelKind::goe: return std::make_unique<DenseOperator>(goe_sample(model.size, 0x60E0000ULL + model.size));
    case ModelKind::gue: return std::make_unique<DenseOperator>(gue_sample(model.size, 0x6E0000ULL + model.size));
    case ModelKind::toeplitz:
      return std::make_unique<DenseOperator>(toeplitz_operator(model.size, model.alpha, model.beta));
  }
  throw std::invalid_argument("build_model: unknown model");
}

ComplexState initial_state(const ModelSpec& model, std::uint64_t seed) {
  if (model.kind == ModelKind::toeplitz) return ComplexState::basis(model.dimension(), 0);
  return random_state(model.dimension(), seed);
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.14e", x);
  return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_number(v));
  rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  for (const auto& [k, v] : summary) out << "# " << k << '=' << v << '\n';
}

double measure_t_exp(const std::vector<double>& t, const std::vector<double>& error, double threshold,
                     std::size_t sustain) {
  for (std::size_t i = 0; i + sustain <= error.size(); ++i) {
    bool above = true;
    for (std::size_t j = i; j < i + sustain; ++j) above = above && error[j] > threshold;
    if (above) return t[i];
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double measure_t_col(const std::vector<double>& t, const std::vector<double>& echo) {
  if (t.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  std::size_t best = 0;
  double steepest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double slope = (echo[i + 1] - echo[i]) / (t[i + 1] - t[i]);
    if (slope < steepest) {
      steepest = slope;
      best = i;
    }
  }
  return 0.5 * (t[best] + t[best + 1]);
}

RegimesResult run_regimes(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto h = build_model(cfg.model);
  const DenseOracle oracle(*h, cfg.oracle_cap);
  const ComplexState psi = initial_state(cfg.model, cfg.seed);
  const KrylovBasis basis = lanczos_iterate(*h, psi, cfg.krylov_dim);
  const KrylovPropagator prop(basis);

  RegimesResult r;
  r.config = cfg.echo();
  r.t = cfg.grid();
  for (double t : r.t) {
    const ComplexState exact = oracle.evolve(psi, t);
    const ComplexState approx = prop.evolve(t);
    const double eps = true_infidelity(approx, exact);
    r.error.push_back(eps);
    r.echo.push_back(std::norm(inner(approx, exact)) / (approx.norm() * approx.norm() * exact.norm() * exact.norm()));
  }
  r.t_exp = measure_t_exp(r.t, r.error);
  r.t_col = measure_t_col(r.t, r.echo);
  return r;
}

CsvTable RegimesResult::table() const {
  CsvTable tab;
  tab.meta = config;
  tab.meta.emplace_back("command", "regimes");
  tab.columns = {"t", "echo", "error"};
  for (std::size_t i = 0; i < t.size(); ++i) tab.add_row({t[i], echo[i], error[i]});
  tab.summary = {{"t_exp", format_number(t_exp)}, {"t_col", format_number(t_col)}};
  return tab;
}

SnapshotsResult run_snapshots(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto h = build_model(cfg.model);
  const std::size_t dim = cfg.model.dimension();
  const std::size_t m = cfg.snapshot_dim ? cfg.snapshot_dim : std::min(2 * cfg.krylov_dim, dim);
  if (m < cfg.krylov_dim || m > dim) {
    throw std::invalid_argument("snapshots: snapshot_dim must lie between krylov_dim and the model dimension");
  }
  const DenseOracle oracle(*h, cfg.oracle_cap);
  const ComplexState psi = initial_state(cfg.model, cfg.seed);
  const KrylovBasis long_basis = lanczos_iterate(*h, psi, m);
  const KrylovBasis basis = lanczos_iterate(*h, psi, cfg.krylov_dim);
  const KrylovPropagator prop(basis);

  SnapshotsResult r;
  r.config = cfg.echo();
  r.basis_length = long_basis.size();
  for (double t : cfg.times) {
    const WavepacketProfile exact = project_profile(long_basis, oracle.evolve(psi, t), t);
    const WavepacketProfile approx = project_profile(long_basis, prop.evolve(t), t);
    for (std::size_t i = 0; i < long_basis.size(); ++i) {
      r.rows.push_back({t, i, exact.site_populations[i], approx.site_populations[i]});
    }
  }
  return r;
}

double SnapshotsResult::center_of_mass(double t, bool exact) const {
  double num = 0.0, den = 0.0;
  for (const auto& row : rows) {
    if (row.t != t) continue;
    const double p = exact ? row.exact_population : row.krylov_population;
    num += static_cast<double>(row.site) * p;
    den += p;
  }
  if (den == 0.0) throw std::invalid_argument("center_of_mass: no snapshot at that time");
  return num / den;
}

CsvTable SnapshotsResult::table() const {
  CsvTable tab;
  tab.meta = config;
  tab.meta.emplace_back("command", "snapshots");
  tab.meta.emplace_back("basis_length", std::to_string(basis_length));
  tab.columns = {"t", "site", "exact_population", "krylov_population"};
  for (const auto& r : rows) {
    tab.rows.push_back({format_number(r.t), std::to_string(r.site), format_number(r.exact_population),
                        format_number(r.krylov_population)});
  }
  return tab;
}

BoundsResult run_bounds(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto h = build_model(cfg.model);
  const DenseOracle oracle(*h, cfg.oracle_cap);
  const ComplexState psi = initial_state(cfg.model, cfg.seed);
  const KrylovBasis basis = lanczos_iterate(*h, psi, cfg.krylov_dim);
  const KrylovPropagator prop(basis);

  std::vector<std::pair<std::string, ErrorEstimator>> estimators;
  for (EstimatorKind kind : cfg.estimators) {
    switch (kind) {
      case EstimatorKind::oracle: break;
      case EstimatorKind::extra_site_averaged:
        estimators.emplace_back("extra_site_averaged_literal", ErrorEstimator(kind, basis, h.get(), AveragingMode::literal));
        estimators.emplace_back("extra_site_averaged_hybrid", ErrorEstimator(kind, basis, h.get(), AveragingMode::hybrid));
        break;
      default: estimators.emplace_back(std::string(to_string(kind)), ErrorEstimator(kind, basis, h.get()));
    }
  }

  BoundsResult r;
  r.config = cfg.echo();
  r.t = cfg.grid();
  for (const auto& e : estimators) r.names.push_back(e.first);
  r.values.assign(estimators.size(), {});
  for (double t : r.t) {
    r.oracle.push_back(true_infidelity(prop.evolve(t), oracle.evolve(psi, t)));
    for (std::size_t j = 0; j < estimators.size(); ++j) r.values[j].push_back(estimators[j].second(t));
    if (cfg.band) {
      const EstimateBand b = estimate_extra_site_band(basis, t);
      r.band_lower.push_back(b.lower);
      r.band_upper.push_back(b.upper);
    }
  }
  return r;
}

const std::vector<double>& BoundsResult::column(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return values[j];
  }
  throw std::invalid_argument("bounds: no column named '" + name + "'");
}

CsvTable BoundsResult::table() const {
  CsvTable tab;
  tab.meta = config;
  tab.meta.emplace_back("command", "bounds");
  tab.columns = {"t", "oracle"};
  for (const auto& n : names) tab.columns.push_back(n);
  for (const auto& n : names) tab.columns.push_back("ratio_" + n);
  const bool band = !band_lower.empty();
  if (band) {
    tab.columns.push_back("band_lower");
    tab.columns.push_back("band_upper");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<double> row{t[i], oracle[i]};
    for (const auto& col : values) row.push_back(col[i]);
    for (const auto& col : values) {
      row.push_back(oracle[i] > 0.0 ? col[i] / oracle[i] : std::numeric_limits<double>::quiet_NaN());
    }
    if (band) {
      row.push_back(band_lower[i]);
      row.push_back(band_upper[i]);
    }
    tab.add_row(row);
  }
  return tab;
}

ToeplitzResult run_toeplitz(std::size_t n, std::size_t n_prime, double alpha, double beta,
                            const std::vector<double>& grid) {
  if (n < 1 || n_prime < 1) throw std::invalid_argument("toeplitz: chain lengths must be at least 1");
  const ChainEcho numeric(SymmetricTridiagonal::homogeneous(n, alpha, beta),
                          SymmetricTridiagonal::homogeneous(n_prime, alpha, beta));
  ToeplitzResult r;
  r.config = {{"n", std::to_string(n)},
              {"n_prime", std::to_string(n_prime)},
              {"alpha", format_number(alpha)},
              {"beta", format_number(beta)}};
  r.t = grid;
  for (double t : grid) {
    r.analytic.push_back(std::norm(toeplitz_echo(n, n_prime, alpha, beta, t)));
    r.numeric.push_back(std::norm(numeric.amplitude(t)));
  }
  return r;
}

double ToeplitzResult::max_abs_difference() const {
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, std::abs(analytic[i] - numeric[i]));
  return m;
}

CsvTable ToeplitzResult::table() const {
  CsvTable tab;
  tab.meta = config;
  tab.meta.emplace_back("command", "toeplitz");
  tab.columns = {"t", "analytic_echo", "numeric_echo", "abs_difference"};
  for (std::size_t i = 0; i < t.size(); ++i) {
    tab.add_row({t[i], analytic[i], numeric[i], std::abs(analytic[i] - numeric[i])});
  }
  tab.summary = {{"max_abs_difference", format_number(max_abs_difference())}};
  return tab;
}

EvolveResult run_evolve(const ExperimentConfig& cfg) {
  if (cfg.krylov_dim < 1 || cfg.krylov_dim > cfg.model.dimension()) {
    throw std::invalid_argument("evolve: krylov_dim must lie between 1 and the model dimension");
  }
  const auto h = build_model(cfg.model);
  const ComplexState psi = initial_state(cfg.model, cfg.seed);

  EvolveConfig ec;
  ec.t_final = cfg.t_final;
  ec.tol = cfg.tol;
  ec.krylov_dim = cfg.krylov_dim;
  ec.estimator = cfg.step_estimator;
  ec.averaging = cfg.averaging;
  ec.budget_rule = cfg.budget_rule;

  EvolveResult r;
  r.config = cfg.echo();
  r.report = evolve_adaptive(*h, psi, ec);
  if (h->dim() <= cfg.oracle_cap) {
    const DenseOracle oracle(*h, cfg.oracle_cap);
    r.oracle_checked = true;
    r.true_final_infidelity = true_infidelity(r.report.final_state, oracle.evolve(psi, cfg.t_final));
  }
  return r;
}

CsvTable EvolveResult::table() const {
  CsvTable tab;
  tab.meta = config;
  tab.meta.emplace_back("command", "evolve");
  tab.columns = {"step", "t_start", "dt", "basis_size", "estimated_error", "budget", "estimator", "wall_time"};
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const StepRecord& s = report.steps[i];
    tab.rows.push_back({std::to_string(i), format_number(s.t_start), format_number(s.dt), std::to_string(s.basis_size),
                        format_number(s.estimated_error), format_number(s.budget), std::string(to_string(s.estimator)),
                        format_number(s.wall_time)});
  }
  tab.summary.emplace_back("steps", std::to_string(report.steps.size()));
  tab.summary.emplace_back("total_estimated_error", format_number(report.total_estimated_error));
  tab.summary.emplace_back("amplitude_error_bound", format_number(report.amplitude_error_bound));
  if (oracle_checked) tab.summary.emplace_back("true_final_infidelity", format_number(true_final_infidelity));
  return tab;
}

}  // namespace krylov
