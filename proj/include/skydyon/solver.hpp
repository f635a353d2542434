#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "skydyon/model.hpp"

namespace skydyon {

struct SolveConfig {
  /// Infinity-norm target on all three residual arrays (Newton).
  real tol_residual = 1e-10L;
  std::size_t max_newton_iters = 60;
  /// Backtracking factor and smallest admissible step of the line search.
  real backtrack = 0.5L;
  real min_step = 1e-10L;
  /// Intermediate q values; empty means `default_legs` uniform legs up to q.
  std::vector<real> continuation_steps;
  std::size_t default_legs = 6;
  /// Initial pseudo-time step and step limit of the gradient flow.
  real flow_dt = 1;
  std::size_t flow_max_steps = 20000;
  /// Infinity-norm target of the flow on the a- and f-residuals.
  real flow_tol = 1e-8L;
  OuterBoundary outer = OuterBoundary::asymptotic;

  /// Throws ParameterError on inconsistent settings; target_q checks the legs.
  void validate(real target_q) const;
};

enum class SolvePath { newton, flow, both };
std::string to_string(SolvePath path);

struct LegRecord {
  real q = 0;
  bool converged = false;
  std::size_t iterations = 0;
  real residual = 0;
  real L = 0;
  SolvePath path = SolvePath::newton;
};

struct SolveReport {
  bool converged = false;
  std::size_t iterations = 0;
  real final_residual_norm = 0;
  ActionBreakdown action;
  SolvePath path = SolvePath::newton;
  std::vector<LegRecord> continuation_trace;
  /// Reduced functional after each accepted flow step (flow only).
  std::vector<real> flow_trace;
  /// Trace indices where the flow re-matched the exterior tail rate; J is
  /// nonincreasing between consecutive stage starts.
  std::vector<std::size_t> flow_stage_starts;
  std::string message;
};

/// Closed-form starting profile with a = 1/(1+r^2), f = (pi-omega)(1-e^{-r}),
/// g = q r/(1+r), clipped to the boundary values.
FieldProfile initial_guess(const ModelParams& p, std::shared_ptr<const RadialGrid> grid,
                           OuterBoundary outer = OuterBoundary::asymptotic);

/// First violation of the strict solution bounds and monotonicity at interior
/// nodes (a > 0 decreasing, 0 < f < pi-omega increasing, 0 < g < q increasing),
/// or an empty string.
std::string solution_shape_violation(const ModelParams& p, const FieldProfile& s);

/// Jacobian of the stacked residual vector [res_a, res_f, res_g] at nodes
/// 1..last (unknown 3(i-1)+field), with the exterior tail rate held fixed.
Eigen::SparseMatrix<real> assemble_jacobian(const ModelParams& p, const FieldProfile& s);

/// Stacked residual vector in the same ordering as assemble_jacobian.
Eigen::Matrix<real, Eigen::Dynamic, 1> stacked_residual(const ModelParams& p, const FieldProfile& s);

/// Damped Newton on the full system.
std::pair<FieldProfile, SolveReport> newton_solve(const ModelParams& p, const FieldProfile& guess,
                                                  const SolveConfig& cfg);

/// J(a, f) = E1(a, f) - E2(a, g(a)) with g(a) the inner minimizer; the returned
/// profile carries that g.
real reduced_functional(const ModelParams& p, FieldProfile& s);

/// Descent on the reduced functional with the electric sector eliminated by
/// the inner solve at every step.
std::pair<FieldProfile, SolveReport> flow_solve(const ModelParams& p, const FieldProfile& guess,
                                                const SolveConfig& cfg);

/// Monopole solve at q = 0, then Newton continuation in q to the target,
/// with a flow fallback on failed legs.
std::pair<FieldProfile, SolveReport> continuation_solve(const ModelParams& target,
                                                        std::shared_ptr<const RadialGrid> grid,
                                                        const SolveConfig& cfg);

/// Uniform legs q/n, 2q/n, ..., q.
std::vector<real> uniform_legs(real q, std::size_t n);

}  // namespace skydyon
