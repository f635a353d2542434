#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skydyon/radial_grid.hpp"
#include "skydyon/solver.hpp"

namespace skydyon {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNoConvergence = 2, kExitVerify = 3 };

struct RunConfig {
  std::string command;
  real omega = 0.75L * pi;
  real q = 0.3L;
  real kappa = 1;
  real R = 60;
  std::size_t N = 2000;
  Grading grading;
  SolveConfig solver;
  std::string sweep_param = "q";
  std::vector<real> sweep_values;
  std::string out = ".";
  std::uint64_t seed = 42;
  /// Profile to check (verify only).
  std::string input;
};

/// "0.75pi", "pi", "-0.5pi" or a plain number in radians.
real parse_angle(const std::string& text);
real parse_number(const std::string& text, const std::string& field);

/// Comma-separated list; angles when `angles` is set.
std::vector<real> parse_list(const std::string& text, const std::string& field, bool angles);

/// Throws ParameterError / RegionError for unusable settings.
void validate_run_config(const RunConfig& cfg);

int run_solve(const RunConfig& cfg, std::ostream& log);
int run_sweep(const RunConfig& cfg, std::ostream& log);
int run_table(const RunConfig& cfg, std::ostream& log);
int run_verify(const RunConfig& cfg, std::ostream& log);

/// Dispatches on cfg.command; validation errors become kExitConfig.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace skydyon
