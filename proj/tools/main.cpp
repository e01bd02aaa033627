#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rumorgame/cli.hpp"

namespace cli = rumorgame::cli;

namespace {

struct Overrides {
  std::string config;
  std::optional<double> r1, r2, p0, q0, dt, horizon;
  std::optional<std::string> out;
  bool plots = false;
};

void add_common(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config, "JSON configuration file");
  cmd.add_option("--r1", o.r1, "netizen emotion index");
  cmd.add_option("--r2", o.r2, "government emotion index");
  cmd.add_option("--p0", o.p0, "initial share of spreading netizens");
  cmd.add_option("--q0", o.q0, "initial share of active monitoring");
  cmd.add_option("--dt", o.dt, "integrator step");
  cmd.add_option("--horizon", o.horizon, "integration horizon");
  cmd.add_option("--out", o.out, "output directory");
  cmd.add_flag("--plots", o.plots, "also write SVG plots");
}

cli::RunConfig assemble(const Overrides& o) {
  cli::RunConfig cfg = o.config.empty() ? cli::RunConfig{} : cli::load_run_config(o.config);
  if (o.r1) cfg.r1 = *o.r1;
  if (o.r2) cfg.r2 = *o.r2;
  if (o.p0) cfg.p0 = *o.p0;
  if (o.q0) cfg.q0 = *o.q0;
  if (o.dt) cfg.integrator.dt = *o.dt;
  if (o.horizon) cfg.integrator.horizon = *o.horizon;
  if (o.out) cfg.output_dir = *o.out;
  if (o.plots) cfg.emit_plots = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emotion-weighted evolutionary game between rumor spreaders and a monitoring government"};
  app.require_subcommand(1);

  Overrides o;
  auto* simulate = app.add_subcommand("simulate", "integrate one trajectory and classify it");
  auto* equilibria = app.add_subcommand("equilibria", "locate equilibria and their stability");
  auto* sweep = app.add_subcommand("sweep", "classify outcomes over an (r1, r2) grid");
  auto* threshold = app.add_subcommand("threshold", "bisect for an emotional threshold");
  auto* regimes = app.add_subcommand("regimes", "regime labels over the default grid");
  for (auto* cmd : {simulate, equilibria, sweep, threshold, regimes}) add_common(*cmd, o);

  std::string r1_range = "0.2:3.0:0.2";
  std::string r2_range = "0.2:3.0:0.2";
  sweep->add_option("--r1-range", r1_range, "start:stop:step")->capture_default_str();
  sweep->add_option("--r2-range", r2_range, "start:stop:step")->capture_default_str();

  std::string axis = "r1";
  double fixed = 1.0;
  double lo = 1.0;
  double hi = 2.0;
  double tol = 0.01;
  threshold->add_option("--axis", axis, "index to vary")
      ->check(CLI::IsMember({"r1", "r2"}))
      ->capture_default_str();
  threshold->add_option("--fixed", fixed, "value of the other index")->capture_default_str();
  threshold->add_option("--lo", lo, "lower bracket end")->capture_default_str();
  threshold->add_option("--hi", hi, "upper bracket end")->capture_default_str();
  threshold->add_option("--tol", tol, "bracket width at which bisection stops")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  cli::RunConfig cfg;
  try {
    cfg = assemble(o);
  } catch (const cli::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return cli::kExitConfig;
  }

  if (*simulate) return cli::cmd_simulate(cfg, std::cout);
  if (*equilibria) return cli::cmd_equilibria(cfg, std::cout);
  if (*sweep) return cli::cmd_sweep(cfg, r1_range, r2_range, std::cout);
  if (*threshold) {
    const auto a = axis == "r1" ? rumorgame::Axis::R1 : rumorgame::Axis::R2;
    return cli::cmd_threshold(cfg, a, fixed, lo, hi, tol, std::cout);
  }
  return cli::cmd_regimes(cfg, std::cout);
}
