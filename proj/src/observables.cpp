#include "skydyon/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skydyon/errors.hpp"

namespace skydyon {

namespace {

real sq(real x) { return x * x; }

// Antiderivative of sin^2.
real sin2_primitive(real f) { return f / 2 - std::sin(2 * f) / 4; }

real median(std::vector<real> v) {
  const std::size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  const real hi = v[n / 2];
  if (n % 2) return hi;
  return (*std::max_element(v.begin(), v.begin() + n / 2) + hi) / 2;
}

real relative_variation(const std::vector<real>& v, real centre) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return centre == 0 ? (*hi - *lo == 0 ? 0 : INFINITY) : (*hi - *lo) / std::fabs(centre);
}

}  // namespace

real skyrme_charge_numeric(const ModelParams& p, const FieldProfile& s) {
  const std::size_t N = s.grid->N();
  real sum = 0;
  for (std::size_t k = 0; k < N; ++k) {
    const real mid = (s.f[k] + s.f[k + 1]) / 2;
    sum += sq(std::sin(mid)) * (s.f[k + 1] - s.f[k]);
  }
  if (s.far_field.kind == OuterBoundary::asymptotic) {
    sum += sin2_primitive(p.vacuum_angle()) - sin2_primitive(s.f[N]);
  }
  return 2 * sum / pi;
}

real skyrme_charge_closed(real omega) {
  if (!(omega >= 0 && omega <= pi)) throw ParameterError("omega", "closed-form Q_S needs 0 <= omega <= pi");
  return 1 + (std::sin(2 * omega) / 2 - omega) / pi;
}

real electric_charge(const ModelParams& p, const FieldProfile& s) {
  const RadialGrid& grid = *s.grid;
  Array rho(grid.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = 2 * sq(s.a[i]) * s.g[i];
  return integrate(grid, rho) + exterior_tail(p, s).Qe;
}

real magnetic_charge() { return 1; }

real gamma_theory(const ModelParams& p) {
  const real v = sq(std::sin(p.omega)) - 2 * sq(p.q);
  if (!(v > 0)) throw RegionError("decay exponent undefined: q >= sin(omega)/sqrt2");
  return std::sqrt(v) / 2;
}

DecayFit fit_decay_rate(const FieldProfile& s, const DecayFitOptions& opt) {
  const RadialGrid& grid = *s.grid;
  const std::size_t n = grid.size();
  auto collect = [&](auto keep) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i < n; ++i) {
      if (s.a[i] > 0 && keep(i)) idx.push_back(i);
    }
    return idx;
  };

  DecayFit fit;
  std::vector<std::size_t> idx;
  if (opt.r_max > opt.r_min) {
    idx = collect([&](std::size_t i) { return grid.r(i) >= opt.r_min && grid.r(i) <= opt.r_max; });
  } else {
    idx = collect([&](std::size_t i) { return s.a[i] >= opt.a_min && s.a[i] <= opt.a_max; });
    if (idx.size() < opt.min_nodes) {
      fit.fallback = true;
      idx = collect([&](std::size_t i) {
        return grid.r(i) >= grid.R() / 2 && s.a[i] >= opt.a_min && s.a[i] <= opt.fallback_a_max;
      });
    }
  }
  const std::size_t needed = opt.r_max > opt.r_min ? 3 : std::max<std::size_t>(opt.min_nodes, 3);
  if (idx.size() < needed) {
    throw DiagnosticError("decay fit window holds " + std::to_string(idx.size()) +
                          " nodes; the gauge profile has not reached its exponential tail, increase R");
  }

  using Mat = Eigen::Matrix<real, Eigen::Dynamic, 3>;
  using Vec = Eigen::Matrix<real, Eigen::Dynamic, 1>;
  Mat A(static_cast<Eigen::Index>(idx.size()), 3);
  Vec y(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const real r = grid.r(idx[k]);
    const auto row = static_cast<Eigen::Index>(k);
    A(row, 0) = 1;
    A(row, 1) = -r;
    A(row, 2) = std::log(r);
    y(row) = std::log(s.a[idx[k]]);
  }
  const Vec c = A.colPivHouseholderQr().solve(y);
  fit.gamma = c(1);
  fit.prefactor_power = c(2);
  fit.r_lo = grid.r(idx.front());
  fit.r_hi = grid.r(idx.back());
  fit.nodes = idx.size();
  return fit;
}

TailConstants tail_constants(const ModelParams& p, const FieldProfile& s, real fraction) {
  const RadialGrid& grid = *s.grid;
  const real r0 = (1 - fraction) * grid.R();
  const real Omega = p.vacuum_angle();
  std::vector<real> cg, cf;
  TailConstants t;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const real r = grid.r(i);
    if (r < r0) continue;
    if (cg.empty()) t.r_lo = r;
    t.r_hi = r;
    cg.push_back(r * (p.q - s.g[i]));
    cf.push_back(r * (Omega - s.f[i]));
  }
  // The Dirichlet node carries the imposed limits, not the tail law.
  if (s.far_field.kind == OuterBoundary::dirichlet && cg.size() > 1) {
    cg.pop_back();
    cf.pop_back();
    t.r_hi = grid.r(grid.N() - 1);
  }
  t.cg = median(cg);
  t.cf = median(cf);
  t.cg_variation = relative_variation(cg, t.cg);
  t.cf_variation = relative_variation(cf, t.cf);
  return t;
}

ObservableReport compute_observables(const ModelParams& p, const FieldProfile& s,
                                     const DecayFitOptions& fit) {
  ObservableReport o;
  o.QS_numeric = skyrme_charge_numeric(p, s);
  o.QS_closed = skyrme_charge_closed(p.omega);
  o.Qe = electric_charge(p, s);
  o.Qm = magnetic_charge();
  o.gamma_theory = gamma_theory(p);
  try {
    o.fit = fit_decay_rate(s, fit);
    o.gamma_fit = o.fit.gamma;
  } catch (const DiagnosticError& e) {
    o.fit_error = e.what();
  }
  o.tails = tail_constants(p, s);
  o.action = action_breakdown(p, s);
  return o;
}

}  // namespace skydyon
