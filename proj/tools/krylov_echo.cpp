// krylov-echo: command-line front end for the Krylov echo experiments.
//
//   krylov-echo regimes   --model ising --n 10 --krylov 30 --out regimes.csv
//   krylov-echo snapshots --times 0.5,2.5 --krylov 30
//   krylov-echo bounds    --estimator extra_site_exact,park_light --band
//   krylov-echo toeplitz  --n 30 --nprime 31 --t-max 100 --points 200
//   krylov-echo evolve    --n 8 --tol 1e-8 --t-final 100 --state-out final.kryv
//
// Every subcommand also accepts --config FILE (key = value lines); flags given
// on the command line override the file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "krylov/config.hpp"
#include "krylov/experiments.hpp"
#include "krylov/state_io.hpp"

namespace {

using krylov::CsvTable;
using krylov::ExperimentConfig;
using krylov::KeyValueConfig;

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool band = false;

  KeyValueConfig merged() const {
    KeyValueConfig kv = config_path.empty() ? KeyValueConfig{} : KeyValueConfig::parse_file(config_path);
    for (const auto& [k, v] : values) {
      if (!v.empty()) kv.set(k, v);
    }
    if (band) kv.set("band", "true");
    return kv;
  }
};

void add_option(CLI::App* app, Overrides& o, const std::string& flag, const std::string& key,
                const std::string& help) {
  app->add_option(flag, o.values[key], help);
}

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  add_option(app, o, "--model", "model", "ising, goe, gue or toeplitz");
  add_option(app, o, "--n", "n", "spins (ising), dimension (goe/gue) or sites (toeplitz)");
  add_option(app, o, "--J", "J", "Ising coupling");
  add_option(app, o, "--hx", "hx", "transverse field");
  add_option(app, o, "--hz", "hz", "longitudinal field");
  add_option(app, o, "--alpha", "alpha", "Toeplitz diagonal");
  add_option(app, o, "--beta", "beta", "Toeplitz hopping");
  add_option(app, o, "--krylov", "krylov_dim", "Krylov dimension N");
  add_option(app, o, "--seed", "seed", "seed of the initial state");
  add_option(app, o, "--oracle-cap", "oracle_cap", "largest dimension handed to the dense oracle");
  add_option(app, o, "--out", "out", "CSV output path (stdout when omitted)");
}

void add_grid(CLI::App* app, Overrides& o) {
  add_option(app, o, "--t-min", "t_min", "first grid time");
  add_option(app, o, "--t-max", "t_max", "last grid time");
  add_option(app, o, "--points", "n_points", "number of grid points");
}

void emit(const CsvTable& table, const std::string& path) {
  if (path.empty()) {
    table.write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  table.write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov echo experiments: regimes, snapshots, error bounds, Toeplitz echo, adaptive evolution"};
  app.require_subcommand(1);

  Overrides regimes_o, snapshots_o, bounds_o, toeplitz_o, evolve_o;

  auto* regimes = app.add_subcommand("regimes", "echo and oracle error over a time grid");
  add_common(regimes, regimes_o);
  add_grid(regimes, regimes_o);

  auto* snapshots = app.add_subcommand("snapshots", "Krylov-site populations at chosen times");
  add_common(snapshots, snapshots_o);
  add_option(snapshots, snapshots_o, "--times", "times", "comma-separated snapshot times");
  add_option(snapshots, snapshots_o, "--snapshot-dim", "snapshot_dim", "length of the projection basis");

  auto* bounds = app.add_subcommand("bounds", "oracle error against the error estimators");
  add_common(bounds, bounds_o);
  add_grid(bounds, bounds_o);
  add_option(bounds, bounds_o, "--estimator", "estimators", "comma-separated estimator names");
  bounds->add_flag("--band", bounds_o.band, "also report the extra-site band");

  auto* toeplitz = app.add_subcommand("toeplitz", "closed-form chain echo against numerical propagation");
  add_common(toeplitz, toeplitz_o);
  add_grid(toeplitz, toeplitz_o);
  add_option(toeplitz, toeplitz_o, "--nprime", "n_prime", "length of the second chain");

  auto* evolve = app.add_subcommand("evolve", "adaptive time stepping to a tolerance");
  add_common(evolve, evolve_o);
  add_option(evolve, evolve_o, "--tol", "tol", "total infidelity tolerance");
  add_option(evolve, evolve_o, "--t-final", "t_final", "final time");
  add_option(evolve, evolve_o, "--estimator", "estimator", "step-size estimator");
  add_option(evolve, evolve_o, "--mode", "averaging", "averaging mode for extra_site_averaged (literal or hybrid)");
  add_option(evolve, evolve_o, "--budget-rule", "budget_rule", "how tol is shared between steps (amplitude or linear)");
  add_option(evolve, evolve_o, "--state-out", "state_out", "write the final state in KRYV1 format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*regimes) {
      const auto cfg = ExperimentConfig::from_config(regimes_o.merged());
      emit(krylov::run_regimes(cfg).table(), cfg.out);
    } else if (*snapshots) {
      const auto cfg = ExperimentConfig::from_config(snapshots_o.merged());
      emit(krylov::run_snapshots(cfg).table(), cfg.out);
    } else if (*bounds) {
      const auto cfg = ExperimentConfig::from_config(bounds_o.merged());
      emit(krylov::run_bounds(cfg).table(), cfg.out);
    } else if (*toeplitz) {
      KeyValueConfig kv = toeplitz_o.merged();
      if (!kv.contains("model")) kv.set("model", "toeplitz");
      if (!kv.contains("n")) kv.set("n", "30");
      if (!kv.contains("t_max")) kv.set("t_max", "100");
      if (!kv.contains("n_points")) kv.set("n_points", "200");
      const auto cfg = ExperimentConfig::from_config(kv);
      if (cfg.model.kind != krylov::ModelKind::toeplitz) throw std::invalid_argument("toeplitz: model must be toeplitz");
      emit(krylov::run_toeplitz(cfg.model.size, cfg.n_prime, cfg.model.alpha, cfg.model.beta, cfg.grid()).table(),
           cfg.out);
    } else if (*evolve) {
      KeyValueConfig kv = evolve_o.merged();
      if (!kv.contains("n")) kv.set("n", "8");
      if (!kv.contains("krylov_dim")) kv.set("krylov_dim", "20");
      const auto cfg = ExperimentConfig::from_config(kv);
      const auto result = krylov::run_evolve(cfg);
      emit(result.table(), cfg.out);
      if (!cfg.state_out.empty()) krylov::write_state_file(cfg.state_out, result.report.final_state);
    }
  } catch (const std::exception& e) {
    std::cerr << "krylov-echo: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
