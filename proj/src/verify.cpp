#include "skydyon/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "skydyon/errors.hpp"
#include "skydyon/inner_gsolve.hpp"

namespace skydyon {

namespace {

real sq(real x) { return x * x; }

std::string node_detail(const char* what, std::size_t i) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s at node %zu", what, i);
  return buf;
}

class Builder {
 public:
  void add(std::string id, std::string anchor, real measured, real threshold, bool pass,
           std::string detail = {}) {
    report_.checks.push_back({std::move(id), std::move(anchor), measured, threshold,
                              pass ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
  }
  // measured <= threshold
  void at_most(std::string id, std::string anchor, real measured, real threshold,
               std::string detail = {}) {
    add(std::move(id), std::move(anchor), measured, threshold,
        std::isfinite(measured) && measured <= threshold, std::move(detail));
  }
  void skip(std::string id, std::string anchor, std::string why) {
    report_.checks.push_back({std::move(id), std::move(anchor), NAN, NAN, CheckStatus::skip, std::move(why)});
  }
  VerifyReport finish() {
    report_.overall = std::all_of(report_.checks.begin(), report_.checks.end(),
                                  [](const Check& c) { return c.ok(); });
    return std::move(report_);
  }

 private:
  VerifyReport report_;
};

// Strict bounds lo < u_i < hi at interior nodes; returns count and first node.
std::pair<std::size_t, std::size_t> bound_violations(const Array& u, std::size_t first, std::size_t last,
                                                     real lo, real hi) {
  std::size_t count = 0, where = 0;
  for (std::size_t i = first; i <= last; ++i) {
    if (!(u[i] > lo && u[i] < hi)) {
      if (count++ == 0) where = i;
    }
  }
  return {count, where};
}

// sign * (u_i - u_{i-1}) > 0 for all i.
std::pair<std::size_t, std::size_t> monotone_violations(const Array& u, int sign) {
  std::size_t count = 0, where = 0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (!(sign * (u[i] - u[i - 1]) > 0)) {
      if (count++ == 0) where = i;
    }
  }
  return {count, where};
}

// Right-hand side of the partial coercive lower estimate of the action on
// [0, R], discretized like E1.
real coercive_lower_bound(const ModelParams& p, const FieldProfile& s) {
  const RadialGrid& grid = *s.grid;
  const std::size_t N = grid.N();
  const real Omega = p.vacuum_angle();
  const real q_omega = std::sqrt(2.0L) * Omega / pi;
  const real C1 = 0.5L - sq(p.q) / sq(Omega);
  const real C2 = 2 * (sq(q_omega) - sq(p.q)) / sq(Omega);
  const real k = p.kappa;
  Array coef(N + 1);
  for (std::size_t i = 0; i <= N; ++i) coef[i] = sq(s.a[i]) * sq(std::sin(s.f[i]));
  real sum = 0;
  for (std::size_t j = 0; j < N; ++j) {
    const real h = grid.h(j);
    const real Da = (s.a[j + 1] - s.a[j]) / h;
    const real Df = (s.f[j + 1] - s.f[j]) / h;
    sum += h * (4 * sq(Da) + C1 * grid.flux_coeff(j) * sq(Df) + 4 * k * (coef[j] + coef[j + 1]) / 2 * sq(Df));
  }
  for (std::size_t i = 0; i <= N; ++i) {
    real V = C2 * sq(s.a[i]) * sq(s.f[i]);
    if (i > 0) V += (2 * sq(sq(s.a[i]) - 1) + 2 * k * sq(coef[i])) / sq(grid.r(i));
    sum += grid.weight(i) * V;
  }
  return sum;
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "unknown";
}

const Check* VerifyReport::find(const std::string& id) const {
  for (const Check& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::vector<Array> constraint_test_functions(const RadialGrid& grid, std::size_t count,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const real R = grid.R();
  std::vector<Array> out;
  for (std::size_t t = 0; t < count; ++t) {
    real c[3], mu[3], sigma[3];
    for (int j = 0; j < 3; ++j) {
      c[j] = 2 * static_cast<real>(unit(rng)) - 1;
      mu[j] = R * static_cast<real>(unit(rng));
      sigma[j] = 0.5L + (R / 4) * static_cast<real>(unit(rng));
    }
    Array G(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const real r = grid.r(i);
      real v = 0;
      for (int j = 0; j < 3; ++j) v += c[j] * std::exp(-sq((r - mu[j]) / sigma[j]) / 2);
      G[i] = v * (1 - r / R);
    }
    G[grid.N()] = 0;
    out.push_back(std::move(G));
  }
  return out;
}

VerifyReport run_suite(const ModelParams& p, const FieldProfile& s, const Tolerances& tol) {
  Builder b;
  const RadialGrid& grid = *s.grid;
  const std::size_t N = grid.N();
  const std::size_t last = s.last_unknown();
  const real Omega = p.vacuum_angle();
  const bool asymptotic = s.far_field.kind == OuterBoundary::asymptotic;

  const ResidualSet res = residuals(p, s);
  b.at_most("residual_a", "field-equations", res.norm_a(), tol.residual);
  b.at_most("residual_f", "field-equations", res.norm_f(), tol.residual);
  b.at_most("residual_g", "field-equations", res.norm_g(), tol.residual);

  const real origin = std::max({std::fabs(s.a[0] - 1), std::fabs(s.f[0]), std::fabs(s.g[0])});
  b.at_most("boundary_origin", "boundary-conditions", origin, 0);
  if (asymptotic) {
    const real rate = local_tail_rate(grid.R(), s.f[N], s.g[N]);
    b.at_most("boundary_far", "boundary-conditions", std::fabs(s.far_field.tail_rate - rate) / rate,
              tol.residual, "relative mismatch of the exterior tail rate");
  } else {
    const real far = std::max({std::fabs(s.a[N]), std::fabs(s.f[N] - Omega), std::fabs(s.g[N] - p.q)});
    b.at_most("boundary_far", "boundary-conditions", far, 0);
  }

  {
    auto [n, at] = bound_violations(s.a, 1, last, 0, INFINITY);
    b.at_most("bounds_a", "strict-bounds", static_cast<real>(n), 0, n ? node_detail("a <= 0", at) : "");
  }
  {
    auto [n, at] = bound_violations(s.f, 1, last, 0, Omega);
    b.at_most("bounds_f", "strict-bounds", static_cast<real>(n), 0,
              n ? node_detail("f outside (0, pi - omega)", at) : "");
  }
  if (p.q > 0) {
    auto [n, at] = bound_violations(s.g, 1, last, 0, p.q);
    b.at_most("bounds_g", "strict-bounds", static_cast<real>(n), 0, n ? node_detail("g outside (0, q)", at) : "");
  } else {
    b.skip("bounds_g", "strict-bounds", "q = 0");
  }
  {
    auto [n, at] = monotone_violations(s.a, -1);
    b.at_most("monotone_a", "strict-monotonicity", static_cast<real>(n), 0,
              n ? node_detail("a not decreasing", at) : "");
  }
  {
    auto [n, at] = monotone_violations(s.f, 1);
    b.at_most("monotone_f", "strict-monotonicity", static_cast<real>(n), 0,
              n ? node_detail("f not increasing", at) : "");
  }
  if (p.q > 0) {
    auto [n, at] = monotone_violations(s.g, 1);
    b.at_most("monotone_g", "strict-monotonicity", static_cast<real>(n), 0,
              n ? node_detail("g not increasing", at) : "");
  } else {
    b.skip("monotone_g", "strict-monotonicity", "q = 0");
  }

  const ActionBreakdown action = action_breakdown(p, s);
  b.add("energy_E1", "finite-energy", action.E1, 0, std::isfinite(action.E1) && action.E1 >= 0);
  b.add("energy_E2", "finite-energy", action.E2, 0, std::isfinite(action.E2) && action.E2 >= 0);

  {
    const real lower = coercive_lower_bound(p, s);
    b.add("coercive_bound", "coercive-lower-bound", action.L, lower,
          std::isfinite(action.L) && action.L >= lower, "measured L, threshold lower estimate");
  }

  {
    // The weak form equals -sum w_i G_i res_g,i, so the attainable size is
    // set by the g residual on top of round-off.
    real worst = 0, allowed = 1, ratio = -1;
    for (const Array& G : constraint_test_functions(grid, tol.test_functions, tol.seed)) {
      const real w = std::fabs(constraint_residual(grid, s.a, s.g, G));
      real mass = 0;
      for (std::size_t i = 0; i <= N; ++i) mass += grid.weight(i) * std::fabs(G[i]);
      const real bound = tol.constraint * (1 + action.E2) + res.norm_g() * mass;
      if (!(w / bound <= ratio)) {
        ratio = w / bound;
        worst = w;
        allowed = bound;
      }
    }
    b.at_most("constraint_orthogonality", "weak-constraint", worst, allowed);
  }

  const ObservableReport obs = compute_observables(p, s);
  b.at_most("charge_consistency", "skyrme-charge-formula", std::fabs(obs.QS_numeric - obs.QS_closed),
            tol.charge);
  if (obs.fit_error.empty()) {
    char window[96];
    std::snprintf(window, sizeof window, "window [%.4Lg, %.4Lg], %zu nodes%s", obs.fit.r_lo, obs.fit.r_hi,
                  obs.fit.nodes, obs.fit.fallback ? ", far-half fallback" : "");
    b.at_most("decay_consistency", "decay-exponent", std::fabs(obs.gamma_fit / obs.gamma_theory - 1),
              tol.decay, window);
  } else {
    b.add("decay_consistency", "decay-exponent", NAN, tol.decay, false, obs.fit_error);
  }
  if (p.q > 0) {
    b.at_most("tail_g", "tail-laws", std::fabs(obs.tails.cg / obs.Qe - 1), tol.tail_g);
  } else {
    b.skip("tail_g", "tail-laws", "q = 0");
  }
  b.at_most("tail_f", "tail-laws", obs.tails.cf_variation, tol.tail_f);

  {
    // |a(r) - 1| <= sqrt(r) (int_0^r a'^2)^(1/2) near the origin (r <= 1).
    real worst = 0, dirichlet = 0;
    for (std::size_t i = 1; i <= N && grid.r(i) <= 1; ++i) {
      dirichlet += sq(s.a[i] - s.a[i - 1]) / grid.h(i - 1);
      const real bound = std::sqrt(grid.r(i) * dirichlet);
      if (bound > 0) worst = std::max(worst, std::fabs(s.a[i] - 1) / bound);
    }
    // Equality holds on the first interval, so allow round-off above 1.
    b.at_most("small_r_a", "small-r-estimates", worst, 1 + 1e-9L, "ratio to the Cauchy-Schwarz bound");
  }
  if (p.kappa > 0) {
    // sin^2 f(r) <= 2 kappa^(-1/2) r^(1/2) L^(1/2) while a >= 1/2.
    real worst = 0;
    const real scale = 2 / std::sqrt(p.kappa) * std::sqrt(std::max(action.L, real(0)));
    for (std::size_t i = 1; i <= N && s.a[i] >= 0.5L; ++i) {
      const real bound = scale * std::sqrt(grid.r(i));
      worst = std::max(worst, sq(std::sin(s.f[i])) / bound);
    }
    b.at_most("small_r_f", "small-r-estimates", worst, 1 + 1e-9L, "ratio to the Cauchy-Schwarz bound");
  } else {
    b.skip("small_r_f", "small-r-estimates", "kappa = 0");
  }

  b.at_most("flux_identity", "electric-flux-identity", flux_identity_defect(grid, s.a, s.g),
            std::max(res.norm_g(), tol.residual) * grid.R(), "bounded by R times the g residual");
  return b.finish();
}

void write_report(std::ostream& out, const VerifyReport& report) {
  char buf[256];
  for (const Check& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%s %s %.6Le %.6Le %s", c.id.c_str(), to_string(c.status).c_str(),
                  c.measured, c.threshold, c.anchor.c_str());
    out << buf;
    if (!c.detail.empty()) out << " # " << c.detail;
    out << '\n';
  }
  out << "overall " << (report.overall ? "pass" : "fail") << '\n';
}

namespace {

RefinementLevel solve_level(const ModelParams& p, real R, std::size_t N, Grading grading,
                            const SolveConfig& cfg) {
  auto grid = std::make_shared<const RadialGrid>(build_grid(R, N, grading));
  auto [s, rep] = continuation_solve(p, grid, cfg);
  RefinementLevel level;
  level.N = N;
  level.R = R;
  level.converged = rep.converged;
  level.Qe = electric_charge(p, s);
  level.QS = skyrme_charge_numeric(p, s);
  level.E = rep.action.E;
  return level;
}

}  // namespace

RefinementReport refinement_study(const ModelParams& p, real R, std::size_t N, Grading grading,
                                  const SolveConfig& cfg, std::size_t levels) {
  if (levels < 2) throw ParameterError("levels", "refinement study needs at least two levels");
  RefinementReport out;
  bool all = true;
  std::size_t n = N;
  for (std::size_t l = 0; l < levels; ++l, n *= 2) {
    out.levels.push_back(solve_level(p, R, n, grading, cfg));
    all = all && out.levels.back().converged;
  }
  const std::size_t finest = out.levels.back().N;
  out.extended_domain = solve_level(p, 1.5L * R, finest + finest / 2, grading, cfg);
  all = all && out.extended_domain.converged;
  out.complete = all;

  const auto& L = out.levels;
  const std::size_t m = L.size();
  out.dQe = std::fabs(L[m - 1].Qe - L[m - 2].Qe);
  out.dQS = std::fabs(L[m - 1].QS - L[m - 2].QS);
  out.dE = std::fabs(L[m - 1].E - L[m - 2].E);
  if (m >= 3) {
    out.order_Qe = std::log2(std::fabs(L[m - 2].Qe - L[m - 3].Qe) / out.dQe);
    out.order_E = std::log2(std::fabs(L[m - 2].E - L[m - 3].E) / out.dE);
  } else {
    out.order_Qe = out.order_E = NAN;
  }
  out.dQe_domain = std::fabs(out.extended_domain.Qe - L[m - 1].Qe);
  out.dE_domain = std::fabs(out.extended_domain.E - L[m - 1].E);
  return out;
}

}  // namespace skydyon
