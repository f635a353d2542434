#include <cmath>
#include <cstdio>
#include <string>

#include "skydyon/errors.hpp"
#include "skydyon/inner_gsolve.hpp"
#include "skydyon/solver.hpp"

namespace skydyon {

void SolveConfig::validate(real target_q) const {
  if (!(tol_residual > 0)) throw ParameterError("tol", "residual tolerance must be positive");
  if (!(backtrack > 0 && backtrack < 1)) {
    throw ParameterError("backtrack", "backtracking factor must lie in (0, 1)");
  }
  if (!(min_step > 0)) throw ParameterError("min_step", "minimum step must be positive");
  if (!(flow_dt > 0)) throw ParameterError("flow_dt", "pseudo-time step must be positive");
  if (!(flow_tol > 0)) throw ParameterError("flow_tol", "flow tolerance must be positive");
  if (continuation_steps.empty()) {
    if (default_legs == 0) throw ParameterError("continuation-steps", "need at least one leg");
    return;
  }
  real prev = 0;
  for (real q : continuation_steps) {
    if (!std::isfinite(q) || q < prev) {
      throw ParameterError("continuation-steps", "q values must be finite, nonnegative and nondecreasing");
    }
    prev = q;
  }
  if (continuation_steps.back() != target_q) {
    throw ParameterError("continuation-steps", "last continuation value must equal the target q");
  }
}

std::string to_string(SolvePath path) {
  switch (path) {
    case SolvePath::newton: return "newton";
    case SolvePath::flow: return "flow";
    case SolvePath::both: return "both";
  }
  return "unknown";
}

std::vector<real> uniform_legs(real q, std::size_t n) {
  std::vector<real> legs(n);
  for (std::size_t k = 1; k <= n; ++k) legs[k - 1] = q * static_cast<real>(k) / static_cast<real>(n);
  if (n > 0) legs.back() = q;
  return legs;
}

FieldProfile initial_guess(const ModelParams& p, std::shared_ptr<const RadialGrid> grid,
                           OuterBoundary outer) {
  const std::size_t N = grid->N();
  FieldProfile s = make_profile(grid, FarField{outer, 0});
  const real Omega = p.vacuum_angle();
  for (std::size_t i = 1; i <= N; ++i) {
    const real r = grid->r(i);
    s.a[i] = 1 / (1 + r * r);
    s.f[i] = Omega * -std::expm1(-r);
    s.g[i] = p.q * r / (1 + r);
  }
  if (outer == OuterBoundary::dirichlet) {
    s.a[N] = 0;
    s.f[N] = Omega;
    s.g[N] = p.q;
  } else {
    s.far_field.tail_rate = local_tail_rate(grid->R(), s.f[N], s.g[N]);
  }
  return s;
}

std::string solution_shape_violation(const ModelParams& p, const FieldProfile& s) {
  const std::size_t N = s.grid->N();
  const std::size_t last = s.last_unknown();
  const real Omega = p.vacuum_angle();
  auto at = [](const char* what, std::size_t i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s at node %zu", what, i);
    return std::string(buf);
  };
  for (std::size_t i = 1; i <= N; ++i) {
    if (i <= last) {
      if (!(s.a[i] > 0)) return at("a not positive", i);
      if (!(s.f[i] > 0 && s.f[i] < Omega)) return at("f outside (0, pi - omega)", i);
      if (p.q > 0 && !(s.g[i] > 0 && s.g[i] < p.q)) return at("g outside (0, q)", i);
    }
    if (!(s.a[i] < s.a[i - 1])) return at("a not strictly decreasing", i);
    if (!(s.f[i] > s.f[i - 1])) return at("f not strictly increasing", i);
    if (p.q > 0 && !(s.g[i] > s.g[i - 1])) return at("g not strictly increasing", i);
  }
  return {};
}

namespace {

// Newton first; on failure the flow from the same guess, then a Newton polish.
std::pair<FieldProfile, SolveReport> robust_solve(const ModelParams& p, const FieldProfile& guess,
                                                  const SolveConfig& cfg) {
  auto newton = newton_solve(p, guess, cfg);
  if (newton.second.converged) return newton;
  auto flow = flow_solve(p, guess, cfg);
  auto polish = newton_solve(p, flow.first, cfg);
  polish.second.path = SolvePath::both;
  polish.second.iterations += newton.second.iterations + flow.second.iterations;
  polish.second.flow_trace = std::move(flow.second.flow_trace);
  polish.second.flow_stage_starts = std::move(flow.second.flow_stage_starts);
  if (!polish.second.converged) {
    polish.second.message = "newton: " + newton.second.message + "; flow: " + flow.second.message +
                            "; polish: " + polish.second.message;
  }
  return polish;
}

}  // namespace

std::pair<FieldProfile, SolveReport> continuation_solve(const ModelParams& target,
                                                        std::shared_ptr<const RadialGrid> grid,
                                                        const SolveConfig& cfg) {
  cfg.validate(target.q);
  const std::vector<real> legs =
      cfg.continuation_steps.empty() ? uniform_legs(target.q, cfg.default_legs) : cfg.continuation_steps;

  ModelParams base = target;
  base.q = 0;
  auto [s, report] = robust_solve(base, initial_guess(base, grid, cfg.outer), cfg);
  if (!report.converged) {
    report.message = "monopole solve failed: " + report.message;
    return {std::move(s), std::move(report)};
  }
  SolvePath path = report.path;
  std::size_t iterations = report.iterations;
  std::vector<real> flow_trace = report.flow_trace;
  std::vector<LegRecord> trace;

  if (target.q == 0) {
    trace.push_back({0, true, report.iterations, report.final_residual_norm, report.action.L, path});
  }
  for (real q : (target.q == 0 ? std::vector<real>{} : legs)) {
    ModelParams p = target;
    p.q = q;
    FieldProfile guess = s;
    guess.g = solve_inner_g(p, *grid, guess.a, guess.far_field);
    auto [next, leg] = robust_solve(p, guess, cfg);
    trace.push_back({q, leg.converged, leg.iterations, leg.final_residual_norm, leg.action.L, leg.path});
    iterations += leg.iterations;
    if (leg.path != SolvePath::newton) path = SolvePath::both;
    if (!leg.flow_trace.empty()) flow_trace = leg.flow_trace;
    s = std::move(next);
    report = std::move(leg);
    if (!report.converged) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "continuation leg q = %.6Lg failed: ", q);
      report.message = buf + report.message;
      break;
    }
  }
  report.path = path;
  report.iterations = iterations;
  report.continuation_trace = std::move(trace);
  report.flow_trace = std::move(flow_trace);
  return {std::move(s), std::move(report)};
}

}  // namespace skydyon
