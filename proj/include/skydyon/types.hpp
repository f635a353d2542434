#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace skydyon {

// Profiles, stencils and residuals are evaluated in extended precision. The
// r^2-weighted flux stencils amplify a one-ulp perturbation of a nodal value
// by roughly (R/h)^2, which in double already exceeds the 1e-10 residual
// target on the default R = 60, N = 2000 mesh.
using real = long double;

using Array = std::vector<real>;
using ArrayView = std::span<const real>;

inline constexpr real pi = std::numbers::pi_v<real>;

}  // namespace skydyon
