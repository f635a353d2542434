#include "skydyon/inner_gsolve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "skydyon/errors.hpp"

namespace skydyon {

namespace {

real sq(real x) { return x * x; }

void check_size(const RadialGrid& grid, ArrayView u, const char* name) {
  if (u.size() != grid.size()) {
    throw std::invalid_argument(std::string(name) + " does not match the grid size");
  }
}

}  // namespace

Array solve_inner_g(const ModelParams& p, const RadialGrid& grid, ArrayView a,
                    const FarField& far_field) {
  check_size(grid, a, "a");
  const std::size_t N = grid.N();
  const bool asymptotic = far_field.kind == OuterBoundary::asymptotic;
  const std::size_t last = asymptotic ? N : N - 1;

  Array g(N + 1, 0);
  g[N] = p.q;
  if (p.q == 0) return g;

  // Row i (1 <= i <= last):  lower g_{i-1} + diag g_i + upper g_{i+1} = rhs,
  // written with a positive diagonal.
  Array lower(last + 1, 0), diag(last + 1, 0), upper(last + 1, 0), rhs(last + 1, 0);
  for (std::size_t i = 1; i <= last; ++i) {
    const real w = grid.weight(i);
    const real cm = grid.flux_coeff(i - 1) / grid.h(i - 1) / w;
    lower[i] = -cm;
    diag[i] = cm + 2 * sq(a[i]);
    if (i < N) {
      const real cp = grid.flux_coeff(i) / grid.h(i) / w;
      diag[i] += cp;
      if (i < last) {
        upper[i] = -cp;
      } else {
        rhs[i] = cp * p.q;
      }
    } else {
      const real R = grid.R();
      const real lam = far_field.tail_rate;
      diag[i] += R / w + sq(a[i]) / (lam * w);
      rhs[i] = R * p.q / w;
    }
  }

  // Thomas elimination; the system is strictly diagonally dominant in the
  // last row and weakly elsewhere, with g_0 = 0 decoupled by the zero flux
  // coefficient r_0 r_1.
  for (std::size_t i = 2; i <= last; ++i) {
    assert(diag[i - 1] > 0);
    const real m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  for (std::size_t i = last; i >= 1; --i) {
    if (!(diag[i] > 0)) throw std::logic_error("inner g-solve: singular tridiagonal system");
    const real next = i < last ? g[i + 1] : 0;
    g[i] = (rhs[i] - upper[i] * next) / diag[i];
  }
  return g;
}

real test_function_energy(const RadialGrid& grid, ArrayView a, ArrayView G) {
  check_size(grid, a, "a");
  check_size(grid, G, "G");
  real sum = 0;
  for (std::size_t k = 0; k < grid.N(); ++k) {
    sum += grid.h(k) * grid.flux_coeff(k) * sq((G[k + 1] - G[k]) / grid.h(k));
  }
  for (std::size_t i = 0; i <= grid.N(); ++i) sum += grid.weight(i) * 2 * sq(a[i]) * sq(G[i]);
  return sum;
}

real electric_energy(const ModelParams& p, const RadialGrid& grid, ArrayView a, ArrayView g,
                     const FarField& far_field) {
  real e = test_function_energy(grid, a, g);
  if (far_field.kind == OuterBoundary::asymptotic) {
    const std::size_t N = grid.N();
    e += grid.R() * sq(p.q - g[N]) + sq(a[N]) * sq(g[N]) / far_field.tail_rate;
  }
  return e;
}

real constraint_residual(const RadialGrid& grid, ArrayView a, ArrayView g, ArrayView G) {
  check_size(grid, a, "a");
  check_size(grid, g, "g");
  check_size(grid, G, "G");
  if (G[grid.N()] != 0) throw TestFunctionError("test function must vanish at r = R");
  real sum = 0;
  for (std::size_t k = 0; k < grid.N(); ++k) {
    const real h = grid.h(k);
    sum += h * grid.flux_coeff(k) * ((g[k + 1] - g[k]) / h) * ((G[k + 1] - G[k]) / h);
  }
  for (std::size_t i = 0; i <= grid.N(); ++i) sum += grid.weight(i) * 2 * sq(a[i]) * g[i] * G[i];
  return sum;
}

real flux_identity_defect(const RadialGrid& grid, ArrayView a, ArrayView g) {
  check_size(grid, a, "a");
  check_size(grid, g, "g");
  real source = 0;
  real worst = 0;
  for (std::size_t k = 0; k < grid.N(); ++k) {
    source += grid.weight(k) * 2 * sq(a[k]) * g[k];
    // Dual cell of node k ends at r_{k+1/2}; the node-0 cell carries g_0 = 0.
    const real flux = half_node_flux(grid, g, k);
    worst = std::max(worst, std::fabs(flux - source));
  }
  return worst;
}

}  // namespace skydyon
