#pragma once

#include <cstddef>
#include <string>

#include "skydyon/types.hpp"

namespace skydyon {

/// Node clustering of the radial mesh.
///
/// Nodes are r_i = R * phi(i/N) with phi(s) = (1 - c) s + c s^2. The local
/// spacing grows linearly from R(1-c)/N at the origin to R(1+c)/N at r = R, so
/// the node density behaves like r^{-1/2} away from a cap at the core and the
/// tail is mildly stretched. c = 0 is the uniform mesh.
///
/// The default grading uses c = 0.95, lowered to N/(N+10) on coarse meshes so
/// that adjacent widths stay within the 1.2 ratio; an explicit c is taken as is.
struct Grading {
  static constexpr real kDefaultCluster = 0.95L;
  static constexpr real kMaxCluster = 0.99L;
  /// Marks the default grading until a grid resolves it.
  static constexpr real kAuto = -1;

  real cluster = kAuto;

  static Grading uniform() { return Grading{0.0L}; }
  bool is_uniform() const { return cluster == 0.0L; }
  bool is_default() const { return cluster == kAuto; }

  /// The explicit grading a mesh of N intervals uses.
  Grading resolve(std::size_t intervals) const;

  /// "uniform", "default" or "quadratic:<c>"; parse() also accepts a bare number.
  std::string describe() const;
  static Grading parse(const std::string& text);
};

class RadialGrid {
 public:
  static constexpr std::size_t kMinIntervals = 100;
  static constexpr real kMaxSpacingRatio = 1.2L;

  /// R: outer radius; intervals: N (nodes r_0..r_N).
  RadialGrid(real R, std::size_t intervals, Grading grading);

  real R() const { return R_; }
  std::size_t N() const { return N_; }
  std::size_t size() const { return nodes_.size(); }
  /// Resolved grading (never the default marker), so that refine() nests.
  const Grading& grading() const { return grading_; }

  ArrayView nodes() const { return nodes_; }
  real r(std::size_t i) const { return nodes_[i]; }

  /// Width of interval k = [r_k, r_{k+1}].
  real h(std::size_t k) const { return h_[k]; }
  /// Half-node coefficient of the (r^2 u')' flux on interval k: r_k r_{k+1}.
  /// The product makes the stencil exact on 1, r and 1/r.
  real flux_coeff(std::size_t k) const { return p_[k]; }
  /// Trapezoid (dual-cell) weight of node i.
  real weight(std::size_t i) const { return w_[i]; }
  ArrayView weights() const { return w_; }

  /// Largest ratio of adjacent interval widths.
  real max_spacing_ratio() const;

 private:
  real R_;
  std::size_t N_;
  Grading grading_;
  Array nodes_;
  Array h_;
  Array p_;
  Array w_;
};

RadialGrid build_grid(real R, std::size_t intervals, Grading grading = {});

/// Same R and grading, 2N intervals; every parent node is a node of the result.
RadialGrid refine(const RadialGrid& grid);

/// Second-order central first derivative at interior node i (exact on quadratics).
real d1(const RadialGrid& grid, ArrayView u, std::size_t i);

/// Conservative u'' at interior node i: (Du_i - Du_{i-1}) / w_i.
real second_difference(const RadialGrid& grid, ArrayView u, std::size_t i);

/// Conservative (r^2 u')' at interior node i using half-node fluxes.
real sturm_liouville(const RadialGrid& grid, ArrayView u, std::size_t i);

/// Discrete flux r_k r_{k+1} (u_{k+1} - u_k) / h_k on interval k.
real half_node_flux(const RadialGrid& grid, ArrayView u, std::size_t k);

/// Trapezoidal quadrature over [0, R]. Throws NumericError on non-finite input.
real integrate(const RadialGrid& grid, ArrayView w);

}  // namespace skydyon
