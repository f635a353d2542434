#include <cmath>
#include <string>

#include <Eigen/SparseLU>

#include "skydyon/solver.hpp"

namespace skydyon {

namespace {

using Vector = Eigen::Matrix<real, Eigen::Dynamic, 1>;

void refresh_tail_rate(FieldProfile& s) {
  if (s.far_field.kind != OuterBoundary::asymptotic) return;
  const std::size_t N = s.grid->N();
  s.far_field.tail_rate = local_tail_rate(s.grid->R(), s.f[N], s.g[N]);
}

void apply_step(FieldProfile& s, const FieldProfile& base, const Vector& dx, real t) {
  const std::size_t last = base.last_unknown();
  for (std::size_t i = 1; i <= last; ++i) {
    s.a[i] = base.a[i] + t * dx(3 * (i - 1));
    s.f[i] = base.f[i] + t * dx(3 * (i - 1) + 1);
    s.g[i] = base.g[i] + t * dx(3 * (i - 1) + 2);
  }
}

bool finite(const Vector& v) { return v.allFinite(); }

}  // namespace

std::pair<FieldProfile, SolveReport> newton_solve(const ModelParams& p, const FieldProfile& guess,
                                                  const SolveConfig& cfg) {
  FieldProfile s = guess;
  refresh_tail_rate(s);
  check_profile(p, s);

  SolveReport report;
  report.path = SolvePath::newton;
  Eigen::SparseLU<Eigen::SparseMatrix<real>, Eigen::COLAMDOrdering<int>> lu;
  bool pattern_ready = false;

  Vector F = stacked_residual(p, s);
  for (std::size_t it = 0;; ++it) {
    report.iterations = it;
    report.final_residual_norm = F.template lpNorm<Eigen::Infinity>();
    if (!finite(F)) {
      report.message = "non-finite residual";
      break;
    }
    if (report.final_residual_norm <= cfg.tol_residual) {
      report.converged = true;
      break;
    }
    if (it == cfg.max_newton_iters) {
      report.message = "iteration limit reached";
      break;
    }

    const Eigen::SparseMatrix<real> J = assemble_jacobian(p, s);
    if (!pattern_ready) {
      lu.analyzePattern(J);
      pattern_ready = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) {
      report.message = "singular Jacobian";
      break;
    }
    const Vector dx = lu.solve(-F);
    if (!finite(dx)) {
      report.message = "non-finite Newton step";
      break;
    }

    // Backtracking on the merit 0.5 |F|^2 with the tail rate held fixed.
    const real merit = F.squaredNorm() / 2;
    FieldProfile trial = s;
    real t = 1;
    bool accepted = false;
    while (t >= cfg.min_step) {
      apply_step(trial, s, dx, t);
      const Vector Ft = stacked_residual(p, trial);
      if (finite(Ft) && Ft.squaredNorm() / 2 <= (1 - 1e-4L * t) * merit) {
        accepted = true;
        break;
      }
      t *= cfg.backtrack;
    }
    if (!accepted) {
      report.message = "line search stalled";
      break;
    }
    s = std::move(trial);
    refresh_tail_rate(s);
    F = stacked_residual(p, s);
  }

  if (report.converged) {
    const std::string bad = solution_shape_violation(p, s);
    if (!bad.empty()) {
      report.converged = false;
      report.message = "converged to a non-admissible profile: " + bad;
    }
  }
  report.action = action_breakdown(p, s);
  return {std::move(s), std::move(report)};
}

}  // namespace skydyon
