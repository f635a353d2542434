#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>

#include "skydyon/radial_grid.hpp"
#include "skydyon/types.hpp"

namespace skydyon {

/// Vacuum angle omega, asymptotic electric potential q and Skyrme coupling kappa.
struct ModelParams {
  real omega = 0;
  real q = 0;
  real kappa = 0;
  /// Supremum of admissible q for this omega.
  real q_max = 0;

  /// Far-field value of the normalized Skyrme profile, pi - omega.
  real vacuum_angle() const { return pi - omega; }
  bool sigma_model_limit() const { return kappa == 0; }
};

/// min{ sin(omega)/sqrt2, sqrt2 (1 - omega/pi) }.
real admissible_q_max(real omega);

/// Throws RegionError outside pi/2 < omega < pi, 0 <= q < q_max and
/// ParameterError for kappa < 0 or non-finite input.
ModelParams validate_params(real omega, real q, real kappa);

/// How the truncated problem at r = R stands in for r -> infinity.
enum class OuterBoundary {
  /// a_N = 0, f_N = pi - omega, g_N = q imposed at r = R.
  dirichlet,
  /// Node N is free. Beyond R the fields follow their exact far-field forms
  /// f = (pi - omega) - B_f / r, g = q - B_g / r, a = a_N exp(-lambda (r - R)),
  /// whose energy is added to the action in closed form.
  asymptotic,
};

std::string to_string(OuterBoundary kind);
OuterBoundary parse_outer_boundary(const std::string& text);

struct FarField {
  OuterBoundary kind = OuterBoundary::asymptotic;
  /// Exponential rate lambda of the exterior gauge tail (asymptotic only).
  real tail_rate = 0;
};

/// Local exponential rate of the linearized a-equation at r = R:
/// sqrt(sin^2(f_R)/4 - g_R^2/2 - 1/R^2), bounded below by kMinTailRate.
real local_tail_rate(real R, real f_R, real g_R);
inline constexpr real kMinTailRate = 1e-3L;

/// Nodal profiles (a, f, g) in the normalized convention f(0) = 0.
struct FieldProfile {
  std::shared_ptr<const RadialGrid> grid;
  Array a;
  Array f;
  Array g;
  FarField far_field;

  /// Highest node index carried as an unknown (N for asymptotic, N-1 for Dirichlet).
  std::size_t last_unknown() const;
  std::size_t unknown_count() const { return last_unknown(); }
};

/// Zero-initialized profile on `grid` with the origin values a_0 = 1.
FieldProfile make_profile(std::shared_ptr<const RadialGrid> grid, FarField far_field);

/// Throws if array sizes, finiteness or the boundary values are violated.
void check_profile(const ModelParams& p, const FieldProfile& s);

struct ActionBreakdown {
  real E1 = 0;
  real E2 = 0;
  real L = 0;
  real E = 0;
};

/// Closed-form contributions of the exterior r > R (all zero for Dirichlet).
struct ExteriorTail {
  real E1 = 0;
  real E2 = 0;
  /// 2 * integral of a^2 g over r > R.
  real Qe = 0;
};
ExteriorTail exterior_tail(const ModelParams& p, const FieldProfile& s);

/// Nodal energy densities on all nodes. Derivative terms are the width-weighted
/// average of the two adjacent one-sided differences, so that `integrate` on
/// these arrays reproduces the discrete action exactly. The 1/r^2 terms are
/// dropped at r = 0, where they vanish for a regular profile.
Array e1_density(const ModelParams& p, const FieldProfile& s);
Array e2_density(const ModelParams& p, const FieldProfile& s);

real density_e1(const ModelParams& p, const FieldProfile& s, std::size_t i);
real density_e2(const ModelParams& p, const FieldProfile& s, std::size_t i);

/// E1, E2 over [0, R] plus the exterior tail; L = E1 - E2, E = E1 + E2.
ActionBreakdown action_breakdown(const ModelParams& p, const FieldProfile& s);

/// Residuals of the three field equations at an unknown node
/// 1 <= i <= s.last_unknown(). They are scaled discrete gradients of the action:
///   dL/da_i = -8 w_i res_a,  dL/df_i = -w_i res_f,  dL/dg_i = 2 w_i res_g.
struct NodeResidual {
  real a = 0;
  real f = 0;
  real g = 0;
};
NodeResidual node_residual(const ModelParams& p, const FieldProfile& s, std::size_t i);

real residual_a(const ModelParams& p, const FieldProfile& s, std::size_t i);
real residual_f(const ModelParams& p, const FieldProfile& s, std::size_t i);
real residual_g(const ModelParams& p, const FieldProfile& s, std::size_t i);

/// Residual arrays over the unknown nodes; entry j belongs to node j + 1.
struct ResidualSet {
  Array a;
  Array f;
  Array g;

  real norm_a() const;
  real norm_f() const;
  real norm_g() const;
  real max_norm() const;
};
ResidualSet residuals(const ModelParams& p, const FieldProfile& s);

}  // namespace skydyon
