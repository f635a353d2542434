// Command-line front end: solve, sweep, verify <profile.csv>, table.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "skydyon/cli_runner.hpp"
#include "skydyon/errors.hpp"

using namespace skydyon;

int main(int argc, char** argv) {
  CLI::App app{"Spherically symmetric dyons of the gauged Skyrme model"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string omega = "0.75pi", q = "0.3", kappa = "1", rmax = "60", grading = "default", tol = "1e-10";
  std::string steps, sweep_values, far_field = "asymptotic";
  std::size_t nodes = cfg.N;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--omega", omega, "vacuum angle, radians or e.g. 0.75pi");
    sub->add_option("--q", q, "asymptotic electric potential");
    sub->add_option("--kappa", kappa, "Skyrme coupling");
    sub->add_option("--rmax", rmax, "outer radius R");
    sub->add_option("--nodes", nodes, "number of mesh intervals N");
    sub->add_option("--grading", grading, "uniform, default or quadratic:<c>");
    sub->add_option("--tol", tol, "residual infinity-norm target");
    sub->add_option("--continuation-steps", steps, "comma-separated q legs ending at --q");
    sub->add_option("--far-field", far_field, "asymptotic or dirichlet");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--seed", cfg.seed, "seed of the constraint test functions");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one point and verify it");
  common(solve);
  CLI::App* sweep = app.add_subcommand("sweep", "solve a list of points, write summary.csv");
  common(sweep);
  sweep->add_option("--sweep-param", cfg.sweep_param, "q, omega or kappa");
  sweep->add_option("--sweep-values", sweep_values, "comma-separated values");
  CLI::App* verify = app.add_subcommand("verify", "run the property battery on a profile CSV");
  verify->add_option("profile", cfg.input, "profile CSV")->required();
  verify->add_option("--tol", tol, "residual infinity-norm target");
  verify->add_option("--out", cfg.out, "output directory");
  verify->add_option("--seed", cfg.seed, "seed of the constraint test functions");
  CLI::App* table = app.add_subcommand("table", "analytic table and plot data, no solving");
  table->add_option("--sweep-values", sweep_values, "comma-separated omega values");
  table->add_option("--out", cfg.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.omega = parse_angle(omega);
    cfg.q = parse_number(q, "q");
    cfg.kappa = parse_number(kappa, "kappa");
    cfg.R = parse_number(rmax, "rmax");
    cfg.N = nodes;
    cfg.grading = Grading::parse(grading);
    cfg.solver.tol_residual = parse_number(tol, "tol");
    cfg.solver.outer = parse_outer_boundary(far_field);
    if (!steps.empty()) cfg.solver.continuation_steps = parse_list(steps, "continuation-steps", false);
    if (!sweep_values.empty()) {
      const bool angles = cfg.command == "table" || cfg.sweep_param == "omega";
      cfg.sweep_values = parse_list(sweep_values, "sweep-values", angles);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run(cfg, std::cout);
}
