#include "skydyon/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "skydyon/errors.hpp"

namespace skydyon {

namespace {

void check_interior(const RadialGrid& grid, ArrayView u, std::size_t i) {
  if (u.size() != grid.size()) {
    throw std::invalid_argument("nodal array has " + std::to_string(u.size()) +
                                " entries, grid has " + std::to_string(grid.size()));
  }
  if (i < 1 || i + 1 > grid.N()) {
    throw std::out_of_range("node index " + std::to_string(i) + " outside interior [1, " +
                            std::to_string(grid.N() - 1) + "]");
  }
}

}  // namespace

Grading Grading::resolve(std::size_t intervals) const {
  if (!is_default()) return *this;
  const real n = static_cast<real>(intervals);
  return Grading{std::min(kDefaultCluster, n / (n + 10))};
}

std::string Grading::describe() const {
  if (is_uniform()) return "uniform";
  if (is_default()) return "default";
  // Shortest form that parses back to the same value.
  char buf[64];
  for (int digits = 17; digits <= 21; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, cluster);
    if (std::strtold(buf, nullptr) == cluster) break;
  }
  return std::string("quadratic:") + buf;
}

Grading Grading::parse(const std::string& text) {
  if (text == "uniform") return uniform();
  if (text.empty() || text == "default") return Grading{};
  std::string number = text;
  if (number.rfind("quadratic:", 0) == 0) number = number.substr(10);
  try {
    std::size_t used = 0;
    const real c = std::stold(number, &used);
    if (used != number.size()) throw std::invalid_argument(text);
    return Grading{c};
  } catch (const std::exception&) {
    throw ParameterError("grading", "cannot parse '" + text + "'");
  }
}

RadialGrid::RadialGrid(real R, std::size_t intervals, Grading grading)
    : R_(R), N_(intervals), grading_(grading.resolve(intervals)) {
  if (!std::isfinite(R) || R <= 0) throw ParameterError("R", "outer radius must be positive");
  if (intervals < kMinIntervals) {
    throw ParameterError("N", "need at least " + std::to_string(kMinIntervals) +
                                  " intervals, got " + std::to_string(intervals));
  }
  const real c = grading_.cluster;
  if (!std::isfinite(c) || c < 0 || c > Grading::kMaxCluster) {
    throw ParameterError("cluster", "grading parameter must lie in [0, 0.99]");
  }

  nodes_.resize(N_ + 1);
  for (std::size_t i = 0; i <= N_; ++i) {
    const real s = static_cast<real>(i) / static_cast<real>(N_);
    nodes_[i] = R_ * ((1 - c) * s + c * s * s);
  }
  nodes_[N_] = R_;

  h_.resize(N_);
  p_.resize(N_);
  for (std::size_t k = 0; k < N_; ++k) {
    h_[k] = nodes_[k + 1] - nodes_[k];
    p_[k] = nodes_[k] * nodes_[k + 1];
  }
  w_.resize(N_ + 1);
  w_[0] = h_[0] / 2;
  w_[N_] = h_[N_ - 1] / 2;
  for (std::size_t i = 1; i < N_; ++i) w_[i] = (h_[i - 1] + h_[i]) / 2;

  if (max_spacing_ratio() > kMaxSpacingRatio) {
    throw ParameterError("cluster", "grading " + grading_.describe() + " too strong for N = " +
                                        std::to_string(N_) +
                                        " (adjacent spacing ratio exceeds 1.2)");
  }
}

real RadialGrid::max_spacing_ratio() const {
  real worst = 1;
  for (std::size_t k = 1; k < N_; ++k) {
    const real ratio = h_[k] > h_[k - 1] ? h_[k] / h_[k - 1] : h_[k - 1] / h_[k];
    worst = std::max(worst, ratio);
  }
  return worst;
}

RadialGrid build_grid(real R, std::size_t intervals, Grading grading) {
  return RadialGrid(R, intervals, grading);
}

RadialGrid refine(const RadialGrid& grid) { return RadialGrid(grid.R(), 2 * grid.N(), grid.grading()); }

real d1(const RadialGrid& grid, ArrayView u, std::size_t i) {
  check_interior(grid, u, i);
  const real hm = grid.h(i - 1);
  const real hp = grid.h(i);
  return (hm * hm * u[i + 1] - hp * hp * u[i - 1] + (hp * hp - hm * hm) * u[i]) /
         (hm * hp * (hm + hp));
}

real second_difference(const RadialGrid& grid, ArrayView u, std::size_t i) {
  check_interior(grid, u, i);
  const real dp = (u[i + 1] - u[i]) / grid.h(i);
  const real dm = (u[i] - u[i - 1]) / grid.h(i - 1);
  return (dp - dm) / grid.weight(i);
}

real half_node_flux(const RadialGrid& grid, ArrayView u, std::size_t k) {
  return grid.flux_coeff(k) * (u[k + 1] - u[k]) / grid.h(k);
}

real sturm_liouville(const RadialGrid& grid, ArrayView u, std::size_t i) {
  check_interior(grid, u, i);
  return (half_node_flux(grid, u, i) - half_node_flux(grid, u, i - 1)) / grid.weight(i);
}

real integrate(const RadialGrid& grid, ArrayView w) {
  if (w.size() != grid.size()) {
    throw std::invalid_argument("integrand has " + std::to_string(w.size()) +
                                " entries, grid has " + std::to_string(grid.size()));
  }
  real sum = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i])) throw NumericError(i, "non-finite integrand");
    sum += grid.weight(i) * w[i];
  }
  return sum;
}

}  // namespace skydyon
