#pragma once

#include "skydyon/model.hpp"

namespace skydyon {

/// Minimizer of the electric energy E2(a, .) for fixed gauge profile a, i.e.
/// the solution of (r^2 g')' = 2 a^2 g with g_0 = 0 and either g_N = q or the
/// asymptotic exterior match at r = R. Solved by tridiagonal elimination on the
/// conservative stencil (an M-matrix), so 0 <= g <= q and g is nondecreasing.
Array solve_inner_g(const ModelParams& p, const RadialGrid& grid, ArrayView a,
                    const FarField& far_field = {OuterBoundary::dirichlet, 0});

/// Discrete electric energy E2(a, g) including the exterior tail for the
/// asymptotic far field.
real electric_energy(const ModelParams& p, const RadialGrid& grid, ArrayView a, ArrayView g,
                     const FarField& far_field = {OuterBoundary::dirichlet, 0});

/// Discrete weak form  sum_k h_k p_k Dg_k DG_k + sum_i w_i 2 a_i^2 g_i G_i,
/// i.e. the integral of r^2 g'G' + 2 a^2 g G. Requires G_N = 0
/// (TestFunctionError otherwise).
real constraint_residual(const RadialGrid& grid, ArrayView a, ArrayView g, ArrayView G);

/// Quadratic form of the weak constraint with g = G: the integral of
/// r^2 (G')^2 + 2 a^2 G^2 over [0, R].
real test_function_energy(const RadialGrid& grid, ArrayView a, ArrayView G);

/// Largest deviation between the half-node flux r_i r_{i+1} Dg_i and the
/// cumulative dual-cell quadrature of 2 a^2 g over [0, r_{i+1/2}].
real flux_identity_defect(const RadialGrid& grid, ArrayView a, ArrayView g);

}  // namespace skydyon
