#pragma once

// Local quantities shared by the residual evaluation and the Jacobian assembly.

#include <cmath>
#include <cstddef>

#include "skydyon/model.hpp"

namespace skydyon::detail {

inline real sq(real x) { return x * x; }

/// Everything the residual at node i needs. For the far-field node of an
/// asymptotic profile `has_right` is false and the right-hand fluxes are
/// replaced by the exterior closed forms.
struct NodeState {
  std::size_t i = 0;
  bool has_right = true;
  real r = 0, w = 0, hm = 0, hp = 0, pm = 0, pp = 0;
  real a = 0, f = 0, g = 0;
  real a_m = 0, f_m = 0, a_n = 0, f_n = 0;
  real S = 0;    // sin^2 f
  real Sp = 0;   // d/df sin^2 f = sin 2f
  real sc = 0;   // sin f cos f
  real c2 = 0;   // cos 2f
  real S_m = 0, Sp_m = 0, S_n = 0, Sp_n = 0;
  real s_m = 0, s_i = 0, s_n = 0;  // a^2 sin^2 f at i-1, i, i+1
  real cm = 0, cp = 0;             // interval averages of s
  real Dam = 0, Dap = 0, Dfm = 0, Dfp = 0, Dgm = 0, Dgp = 0;
  real F2 = 0;  // width-weighted mean of squared one-sided f slopes
  // Exterior data (asymptotic far-field node only).
  real R = 0, Omega = 0, q = 0, lambda = 0, Lambda = 0;
};

inline NodeState gather(const ModelParams& p, const FieldProfile& s, std::size_t i) {
  const RadialGrid& grid = *s.grid;
  const std::size_t N = grid.N();
  NodeState n;
  n.i = i;
  n.has_right = i < N;
  n.r = grid.r(i);
  n.w = grid.weight(i);
  n.hm = grid.h(i - 1);
  n.pm = grid.flux_coeff(i - 1);
  n.a = s.a[i];
  n.f = s.f[i];
  n.g = s.g[i];
  n.a_m = s.a[i - 1];
  n.f_m = s.f[i - 1];
  n.S = sq(std::sin(n.f));
  n.Sp = std::sin(2 * n.f);
  n.sc = n.Sp / 2;
  n.c2 = std::cos(2 * n.f);
  n.S_m = sq(std::sin(n.f_m));
  n.Sp_m = std::sin(2 * n.f_m);
  n.s_m = sq(n.a_m) * n.S_m;
  n.s_i = sq(n.a) * n.S;
  n.cm = (n.s_m + n.s_i) / 2;
  n.Dam = (n.a - n.a_m) / n.hm;
  n.Dfm = (n.f - n.f_m) / n.hm;
  n.Dgm = (n.g - s.g[i - 1]) / n.hm;
  if (n.has_right) {
    n.hp = grid.h(i);
    n.pp = grid.flux_coeff(i);
    n.a_n = s.a[i + 1];
    n.f_n = s.f[i + 1];
    n.S_n = sq(std::sin(n.f_n));
    n.Sp_n = std::sin(2 * n.f_n);
    n.s_n = sq(n.a_n) * n.S_n;
    n.cp = (n.s_i + n.s_n) / 2;
    n.Dap = (n.a_n - n.a) / n.hp;
    n.Dfp = (n.f_n - n.f) / n.hp;
    n.Dgp = (s.g[i + 1] - n.g) / n.hp;
    n.F2 = (n.hm * sq(n.Dfm) + n.hp * sq(n.Dfp)) / (2 * n.w);
  } else {
    n.F2 = sq(n.Dfm);
    n.R = grid.R();
    n.Omega = p.vacuum_angle();
    n.q = p.q;
    n.lambda = s.far_field.tail_rate;
    n.Lambda = 2 * n.lambda + (n.S - 4 / sq(n.R) - 2 * sq(n.g)) / (2 * n.lambda);
  }
  return n;
}

/// Potential part B of the a-equation: a'' = B.
inline real a_source(const ModelParams& p, const NodeState& n) {
  const real k = p.kappa;
  const real r2 = sq(n.r);
  return n.a * (sq(n.a) - 1) / r2 + n.a * n.S / 4 + k * n.a * n.S * n.F2 +
         k * n.a * sq(n.a) * sq(n.S) / r2 - n.a * sq(n.g) / 2;
}

/// Right-hand side T of the f-equation.
inline real f_source(const ModelParams& p, const NodeState& n) {
  const real k = p.kappa;
  const real a2 = sq(n.a);
  return 2 * a2 * n.sc + 8 * k * a2 * n.sc * n.F2 + 8 * k * sq(a2) * n.S * n.sc / sq(n.r);
}

}  // namespace skydyon::detail
