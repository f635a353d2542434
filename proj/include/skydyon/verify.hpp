#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skydyon/observables.hpp"
#include "skydyon/solver.hpp"

namespace skydyon {

struct Tolerances {
  real residual = 1e-10L;
  real charge = 1e-3L;
  /// Relative bands for the decay exponent and the tail laws.
  real decay = 0.03L;
  real tail_g = 0.02L;
  real tail_f = 0.05L;
  /// Weak constraint, relative to 1 + E2 (plus the part implied by the residual).
  real constraint = 1e-12L;
  std::uint64_t seed = 42;
  std::size_t test_functions = 5;
};

enum class CheckStatus { pass, fail, skip };
std::string to_string(CheckStatus status);

struct Check {
  std::string id;
  std::string anchor;
  real measured = 0;
  real threshold = 0;
  CheckStatus status = CheckStatus::pass;
  std::string detail;

  bool ok() const { return status != CheckStatus::fail; }
};

struct VerifyReport {
  std::vector<Check> checks;
  bool overall = true;

  const Check* find(const std::string& id) const;
};

/// Smooth test functions for the weak constraint: sums of three Gaussian
/// bumps times (1 - r/R), zero at r_N, drawn from a fixed seed.
std::vector<Array> constraint_test_functions(const RadialGrid& grid, std::size_t count,
                                             std::uint64_t seed);

/// The property battery on a profile that claims convergence.
VerifyReport run_suite(const ModelParams& p, const FieldProfile& s, const Tolerances& tol = {});

/// One `check_id status measured threshold anchor` line per check, plus
/// `# detail` when a check carries one, and a closing `overall` line.
void write_report(std::ostream& out, const VerifyReport& report);

struct RefinementLevel {
  std::size_t N = 0;
  real R = 0;
  bool converged = false;
  real Qe = 0;
  real QS = 0;
  real E = 0;
};

struct RefinementReport {
  std::vector<RefinementLevel> levels;
  /// Same finest N per unit length on [0, 1.5 R].
  RefinementLevel extended_domain;
  bool complete = false;
  /// Cauchy differences between the two finest levels.
  real dQe = 0;
  real dQS = 0;
  real dE = 0;
  /// log2 of successive difference ratios (needs three levels; NaN otherwise).
  real order_Qe = 0;
  real order_E = 0;
  /// Change of Q_e and E when the domain grows to 1.5 R.
  real dQe_domain = 0;
  real dE_domain = 0;
};

/// Solves on N, 2N, ... (levels grids) and on the extended domain.
/// ParameterError if levels < 2.
RefinementReport refinement_study(const ModelParams& p, real R, std::size_t N, Grading grading,
                                  const SolveConfig& cfg, std::size_t levels);

}  // namespace skydyon
