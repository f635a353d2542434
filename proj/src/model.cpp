#include "skydyon/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "discrete_terms.hpp"
#include "skydyon/errors.hpp"

namespace skydyon {

using detail::sq;

namespace {

std::string fmt(real x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6Lg", x);
  return buf;
}

/// Width-weighted average of interval quantities X_k onto node i.
template <class IntervalFn>
real node_average(const RadialGrid& grid, std::size_t i, IntervalFn X) {
  const std::size_t N = grid.N();
  if (i == 0) return X(0);
  if (i == N) return X(N - 1);
  return (grid.h(i - 1) * X(i - 1) + grid.h(i) * X(i)) / (2 * grid.weight(i));
}

}  // namespace

real admissible_q_max(real omega) {
  return std::min(std::sin(omega) / std::sqrt(2.0L), std::sqrt(2.0L) * (1 - omega / pi));
}

ModelParams validate_params(real omega, real q, real kappa) {
  if (!std::isfinite(omega)) throw ParameterError("omega", "must be finite");
  if (!std::isfinite(q)) throw ParameterError("q", "must be finite");
  if (!std::isfinite(kappa)) throw ParameterError("kappa", "must be finite");
  if (!(omega > pi / 2 && omega < pi)) {
    throw RegionError("omega = " + fmt(omega) + " outside the admissible interval pi/2 < omega < pi");
  }
  const real q_max = admissible_q_max(omega);
  if (q < 0 || q >= q_max) {
    throw RegionError("q = " + fmt(q) + " outside the admissible interval 0 <= q < q_max = " +
                      fmt(q_max) + " (q_max = min{sin(omega)/sqrt2, sqrt2 (1 - omega/pi)})");
  }
  if (kappa < 0) throw ParameterError("kappa", "Skyrme coupling must be nonnegative");
  return ModelParams{omega, q, kappa, q_max};
}

std::string to_string(OuterBoundary kind) {
  return kind == OuterBoundary::dirichlet ? "dirichlet" : "asymptotic";
}

OuterBoundary parse_outer_boundary(const std::string& text) {
  if (text == "dirichlet") return OuterBoundary::dirichlet;
  if (text == "asymptotic") return OuterBoundary::asymptotic;
  throw ParameterError("far-field", "expected 'dirichlet' or 'asymptotic', got '" + text + "'");
}

real local_tail_rate(real R, real f_R, real g_R) {
  const real v = sq(std::sin(f_R)) / 4 - sq(g_R) / 2 - 1 / sq(R);
  return std::sqrt(std::max(v, sq(kMinTailRate)));
}

std::size_t FieldProfile::last_unknown() const {
  return far_field.kind == OuterBoundary::asymptotic ? grid->N() : grid->N() - 1;
}

FieldProfile make_profile(std::shared_ptr<const RadialGrid> grid, FarField far_field) {
  FieldProfile s;
  const std::size_t n = grid->size();
  s.grid = std::move(grid);
  s.a.assign(n, 0);
  s.f.assign(n, 0);
  s.g.assign(n, 0);
  s.a[0] = 1;
  s.far_field = far_field;
  return s;
}

void check_profile(const ModelParams& p, const FieldProfile& s) {
  if (!s.grid) throw std::invalid_argument("profile has no grid");
  const std::size_t n = s.grid->size();
  if (s.a.size() != n || s.f.size() != n || s.g.size() != n) {
    throw std::invalid_argument("profile arrays do not match the grid size");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(s.a[i]) || !std::isfinite(s.f[i]) || !std::isfinite(s.g[i])) {
      throw NumericError(i, "non-finite profile value");
    }
  }
  if (s.a[0] != 1 || s.f[0] != 0 || s.g[0] != 0) {
    throw std::invalid_argument("profile violates a(0) = 1, f(0) = 0, g(0) = 0");
  }
  const std::size_t N = s.grid->N();
  if (s.far_field.kind == OuterBoundary::dirichlet) {
    if (s.a[N] != 0 || s.f[N] != p.vacuum_angle() || s.g[N] != p.q) {
      throw std::invalid_argument("profile violates a(R) = 0, f(R) = pi - omega, g(R) = q");
    }
  } else if (!(s.far_field.tail_rate > 0)) {
    throw std::invalid_argument("asymptotic profile needs a positive tail rate");
  }
}

ExteriorTail exterior_tail(const ModelParams& p, const FieldProfile& s) {
  ExteriorTail t;
  if (s.far_field.kind != OuterBoundary::asymptotic) return t;
  const std::size_t N = s.grid->N();
  const real R = s.grid->R();
  const real a = s.a[N], f = s.f[N], g = s.g[N];
  const real lam = s.far_field.tail_rate;
  const real a2 = sq(a);
  t.E1 = 2 / R + R * sq(p.vacuum_angle() - f) / 2 +
         a2 * (2 * lam + (sq(std::sin(f)) - 4 / sq(R)) / (2 * lam));
  t.E2 = R * sq(p.q - g) + a2 * sq(g) / lam;
  t.Qe = a2 * g / lam;
  return t;
}

Array e1_density(const ModelParams& p, const FieldProfile& s) {
  const RadialGrid& grid = *s.grid;
  const std::size_t N = grid.N();
  const real k = p.kappa;
  Array coef(N + 1);
  for (std::size_t i = 0; i <= N; ++i) coef[i] = sq(s.a[i]) * sq(std::sin(s.f[i]));
  Array interval(N);
  for (std::size_t j = 0; j < N; ++j) {
    const real Da = (s.a[j + 1] - s.a[j]) / grid.h(j);
    const real Df = (s.f[j + 1] - s.f[j]) / grid.h(j);
    const real c = (coef[j] + coef[j + 1]) / 2;
    interval[j] = 4 * sq(Da) + grid.flux_coeff(j) * sq(Df) / 2 + 4 * k * c * sq(Df);
  }
  Array e(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    real V = coef[i];
    if (i > 0) {
      const real r2 = sq(grid.r(i));
      V += 2 * sq(sq(s.a[i]) - 1) / r2 + 2 * k * sq(coef[i]) / r2;
    }
    e[i] = node_average(grid, i, [&](std::size_t j) { return interval[j]; }) + V;
  }
  return e;
}

Array e2_density(const ModelParams&, const FieldProfile& s) {
  const RadialGrid& grid = *s.grid;
  const std::size_t N = grid.N();
  Array interval(N);
  for (std::size_t j = 0; j < N; ++j) {
    interval[j] = grid.flux_coeff(j) * sq((s.g[j + 1] - s.g[j]) / grid.h(j));
  }
  Array e(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    e[i] = node_average(grid, i, [&](std::size_t j) { return interval[j]; }) +
           2 * sq(s.a[i]) * sq(s.g[i]);
  }
  return e;
}

namespace {

void check_interior_index(const FieldProfile& s, std::size_t i) {
  if (i < 1 || i + 1 > s.grid->N()) {
    throw std::out_of_range("density node " + std::to_string(i) + " outside the interior");
  }
}

}  // namespace

real density_e1(const ModelParams& p, const FieldProfile& s, std::size_t i) {
  check_interior_index(s, i);
  return e1_density(p, s)[i];
}

real density_e2(const ModelParams& p, const FieldProfile& s, std::size_t i) {
  check_interior_index(s, i);
  return e2_density(p, s)[i];
}

ActionBreakdown action_breakdown(const ModelParams& p, const FieldProfile& s) {
  const RadialGrid& grid = *s.grid;
  const ExteriorTail tail = exterior_tail(p, s);
  ActionBreakdown out;
  out.E1 = integrate(grid, e1_density(p, s)) + tail.E1;
  out.E2 = integrate(grid, e2_density(p, s)) + tail.E2;
  out.L = out.E1 - out.E2;
  out.E = out.E1 + out.E2;
  return out;
}

NodeResidual node_residual(const ModelParams& p, const FieldProfile& s, std::size_t i) {
  if (i < 1 || i > s.last_unknown()) {
    throw std::out_of_range("residual node " + std::to_string(i) + " is not an unknown");
  }
  const detail::NodeState n = detail::gather(p, s, i);
  const real k = p.kappa;
  NodeResidual res;
  if (n.has_right) {
    res.a = (n.Dap - n.Dam) / n.w - detail::a_source(p, n);
    res.f = (n.pp * n.Dfp - n.pm * n.Dfm) / n.w + 8 * k * (n.cp * n.Dfp - n.cm * n.Dfm) / n.w -
            detail::f_source(p, n);
    res.g = (n.pp * n.Dgp - n.pm * n.Dgm) / n.w - 2 * sq(n.a) * n.g;
  } else {
    // Far-field node: the right-hand fluxes come from the exterior solution.
    res.a = (-n.Lambda * n.a / 4 - n.Dam) / n.w - detail::a_source(p, n);
    res.f = (n.R * (n.Omega - n.f) - n.pm * n.Dfm) / n.w - 8 * k * n.cm * n.Dfm / n.w -
            detail::f_source(p, n) - sq(n.a) * n.Sp / (2 * n.lambda * n.w);
    res.g = (n.R * (n.q - n.g) - n.pm * n.Dgm) / n.w - 2 * sq(n.a) * n.g -
            sq(n.a) * n.g / (n.lambda * n.w);
  }
  return res;
}

real residual_a(const ModelParams& p, const FieldProfile& s, std::size_t i) {
  return node_residual(p, s, i).a;
}
real residual_f(const ModelParams& p, const FieldProfile& s, std::size_t i) {
  return node_residual(p, s, i).f;
}
real residual_g(const ModelParams& p, const FieldProfile& s, std::size_t i) {
  return node_residual(p, s, i).g;
}

namespace {

real inf_norm(const Array& v) {
  real m = 0;
  for (real x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

real ResidualSet::norm_a() const { return inf_norm(a); }
real ResidualSet::norm_f() const { return inf_norm(f); }
real ResidualSet::norm_g() const { return inf_norm(g); }
real ResidualSet::max_norm() const { return std::max({norm_a(), norm_f(), norm_g()}); }

ResidualSet residuals(const ModelParams& p, const FieldProfile& s) {
  const std::size_t n = s.last_unknown();
  ResidualSet out;
  out.a.resize(n);
  out.f.resize(n);
  out.g.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const NodeResidual r = node_residual(p, s, i);
    out.a[i - 1] = r.a;
    out.f[i - 1] = r.f;
    out.g[i - 1] = r.g;
  }
  return out;
}

}  // namespace skydyon
