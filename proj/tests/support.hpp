#pragma once

#include <cmath>
#include <functional>
#include <memory>

#include "skydyon/model.hpp"
#include "skydyon/radial_grid.hpp"

namespace skydyon::testing {

inline std::shared_ptr<const RadialGrid> shared_grid(real R, std::size_t N, Grading g = {}) {
  return std::make_shared<const RadialGrid>(build_grid(R, N, g));
}

/// Profile sampled from closed-form fields (boundary values are whatever the
/// functions give; callers pick functions that match the far-field kind).
inline FieldProfile sample(std::shared_ptr<const RadialGrid> grid, const std::function<real(real)>& a,
                           const std::function<real(real)>& f, const std::function<real(real)>& g,
                           FarField far = {OuterBoundary::dirichlet, 0}) {
  FieldProfile s = make_profile(grid, far);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const real r = grid->r(i);
    s.a[i] = a(r);
    s.f[i] = f(r);
    s.g[i] = g(r);
  }
  return s;
}

inline real max_abs_diff(ArrayView x, ArrayView y) {
  real m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::fabs(x[i] - y[i]));
  return m;
}

}  // namespace skydyon::testing
