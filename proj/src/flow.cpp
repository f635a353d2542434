#include <algorithm>
#include <cmath>
#include <limits>

#include "skydyon/inner_gsolve.hpp"
#include "skydyon/solver.hpp"

namespace skydyon {

namespace {

// Symmetric tridiagonal matrix on nodes 1..n (index 0 unused).
struct Tridiagonal {
  Array diag, off;  // off[i] couples i and i+1

  explicit Tridiagonal(std::size_t n) : diag(n + 1, 0), off(n + 1, 0) {}

  Array solve(const Array& rhs) const {
    const std::size_t n = diag.size() - 1;
    Array d = diag, b = rhs, x(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
      const real m = off[i - 1] / d[i - 1];
      d[i] -= m * off[i - 1];
      b[i] -= m * b[i - 1];
    }
    for (std::size_t i = n; i >= 1; --i) {
      const real next = i < n ? off[i] * x[i + 1] : 0;
      x[i] = (b[i] - next) / d[i];
    }
    return x;
  }
};

// Variable metric: the a-a and f-f blocks of the Hessian of the action at
// frozen g, symmetrized and lifted to diagonal dominance so they stay positive
// definite where the Hessian is not.
std::pair<Tridiagonal, Tridiagonal> metric(const ModelParams& p, const FieldProfile& s) {
  const std::size_t last = s.last_unknown();
  const RadialGrid& grid = *s.grid;
  const Eigen::SparseMatrix<real> J = assemble_jacobian(p, s);
  Tridiagonal Ma(last), Mf(last);
  Array lower_a(last + 2, 0), lower_f(last + 2, 0), upper_a(last + 2, 0), upper_f(last + 2, 0);
  for (int col = 0; col < J.outerSize(); ++col) {
    for (Eigen::SparseMatrix<real>::InnerIterator it(J, col); it; ++it) {
      const int field = static_cast<int>(it.row()) % 3;
      if (field == 2 || static_cast<int>(it.col()) % 3 != field) continue;
      const std::size_t i = static_cast<std::size_t>(it.row()) / 3 + 1;
      const std::size_t j = static_cast<std::size_t>(it.col()) / 3 + 1;
      const real h = -(field == 0 ? 8 : 1) * grid.weight(i) * it.value();
      Tridiagonal& M = field == 0 ? Ma : Mf;
      if (j == i) {
        M.diag[i] += h;
      } else if (j == i + 1) {
        (field == 0 ? upper_a : upper_f)[i] += h;
      } else if (j + 1 == i) {
        (field == 0 ? lower_a : lower_f)[i] += h;
      }
    }
  }
  for (int field = 0; field < 2; ++field) {
    Tridiagonal& M = field == 0 ? Ma : Mf;
    const Array& up = field == 0 ? upper_a : upper_f;
    const Array& lo = field == 0 ? lower_a : lower_f;
    for (std::size_t i = 1; i < last; ++i) M.off[i] = (up[i] + lo[i + 1]) / 2;
    for (std::size_t i = 1; i <= last; ++i) {
      const real bound = std::fabs(M.off[i]) + (i > 1 ? std::fabs(M.off[i - 1]) : 0);
      M.diag[i] = std::max(M.diag[i], bound * (1 + 1e-9L));
    }
  }
  return {std::move(Ma), std::move(Mf)};
}

real flow_residual(const ResidualSet& r) { return std::max(r.norm_a(), r.norm_f()); }

void refresh_tail_rate(FieldProfile& s) {
  if (s.far_field.kind != OuterBoundary::asymptotic) return;
  const std::size_t N = s.grid->N();
  s.far_field.tail_rate = local_tail_rate(s.grid->R(), s.f[N], s.g[N]);
}

}  // namespace

real reduced_functional(const ModelParams& p, FieldProfile& s) {
  s.g = solve_inner_g(p, *s.grid, s.a, s.far_field);
  const ActionBreakdown b = action_breakdown(p, s);
  return b.L;
}

std::pair<FieldProfile, SolveReport> flow_solve(const ModelParams& p, const FieldProfile& guess,
                                                const SolveConfig& cfg) {
  FieldProfile s = guess;
  refresh_tail_rate(s);
  check_profile(p, s);
  const RadialGrid& grid = *s.grid;
  const std::size_t last = s.last_unknown();
  constexpr real eps = std::numeric_limits<real>::epsilon();

  SolveReport report;
  report.path = SolvePath::flow;
  real Jcur = reduced_functional(p, s);
  ResidualSet res = residuals(p, s);
  report.flow_trace.push_back(Jcur);
  real tau = cfg.flow_dt;

  std::size_t step = 0;
  for (;;) {
    // One stage: descend with the exterior tail rate frozen.
    while (flow_residual(res) > cfg.flow_tol && step < cfg.flow_max_steps) {
      ++step;
      const auto [Ma, Mf] = metric(p, s);
      Array ga(last + 1, 0), gf(last + 1, 0);
      for (std::size_t i = 1; i <= last; ++i) {
        ga[i] = -8 * grid.weight(i) * res.a[i - 1];
        gf[i] = -grid.weight(i) * res.f[i - 1];
      }
      const Array da = Ma.solve(ga);
      const Array df = Mf.solve(gf);
      real slope = 0;
      for (std::size_t i = 1; i <= last; ++i) slope -= ga[i] * da[i] + gf[i] * df[i];

      FieldProfile trial = s;
      bool accepted = false;
      real t = std::min(2 * tau, cfg.flow_dt);
      while (t >= cfg.min_step) {
        for (std::size_t i = 1; i <= last; ++i) {
          trial.a[i] = s.a[i] - t * da[i];
          trial.f[i] = s.f[i] - t * df[i];
        }
        const real Jt = reduced_functional(p, trial);
        if (std::isfinite(Jt)) {
          if (Jt <= Jcur + 1e-4L * t * slope) {
            accepted = true;
          } else if (Jt <= Jcur && Jcur - Jt <= 64 * eps * std::fabs(Jcur)) {
            // The decrease is below the resolution of J; accept only if the
            // gradient also drops.
            accepted = flow_residual(residuals(p, trial)) < flow_residual(res);
          }
          if (accepted) {
            Jcur = Jt;
            break;
          }
        }
        t *= cfg.backtrack;
      }
      if (!accepted) {
        report.message = "flow step underflow";
        break;
      }
      tau = t;
      s = std::move(trial);
      res = residuals(p, s);
      report.flow_trace.push_back(Jcur);
    }
    if (!report.message.empty() || step >= cfg.flow_max_steps) break;

    // Re-match the exterior; a new stage starts if the residual moved.
    const real old_rate = s.far_field.tail_rate;
    refresh_tail_rate(s);
    if (s.far_field.tail_rate == old_rate) break;
    Jcur = reduced_functional(p, s);
    res = residuals(p, s);
    report.flow_stage_starts.push_back(report.flow_trace.size());
    report.flow_trace.push_back(Jcur);
    if (flow_residual(res) <= cfg.flow_tol) break;
  }

  report.iterations = step;
  report.final_residual_norm = residuals(p, s).max_norm();
  report.converged = flow_residual(res) <= cfg.flow_tol;
  if (!report.converged && report.message.empty()) report.message = "flow step limit reached";
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
