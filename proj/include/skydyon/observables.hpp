#pragma once

#include <cstddef>

#include "skydyon/model.hpp"

namespace skydyon {

/// (2/pi) * integral of sin^2(f) f' over the profile (midpoint rule on each
/// interval) plus the exterior for the asymptotic far field.
real skyrme_charge_numeric(const ModelParams& p, const FieldProfile& s);

/// 1 + (sin 2 omega / 2 - omega) / pi. ParameterError outside [0, pi].
real skyrme_charge_closed(real omega);

/// 2 * integral of a^2 g, including the exterior for the asymptotic far field.
real electric_charge(const ModelParams& p, const FieldProfile& s);

/// Always 1.
real magnetic_charge();

/// sqrt(sin^2 omega - 2 q^2) / 2. RegionError when the radicand is not positive.
real gamma_theory(const ModelParams& p);

struct DecayFitOptions {
  /// Preferred window: nodes with a in [a_min, a_max].
  real a_min = 1e-8L;
  real a_max = 1e-3L;
  /// Fewest nodes the preferred window must hold before the far-half fallback
  /// (r >= R/2, a_min <= a <= fallback_a_max) is used instead.
  std::size_t min_nodes = 50;
  real fallback_a_max = 0.1L;
  /// Explicit radius window; overrides the amplitude windows when r_max > r_min.
  real r_min = 0;
  real r_max = 0;
};

struct DecayFit {
  real gamma = 0;
  /// Exponent nu of the algebraic prefactor in a ~ C r^nu exp(-gamma r).
  real prefactor_power = 0;
  real r_lo = 0;
  real r_hi = 0;
  std::size_t nodes = 0;
  bool fallback = false;
};

/// Least-squares fit of log a = c - gamma r + nu log r on the tail window.
/// The log r term absorbs the algebraic prefactor produced by the O(1/r)
/// approach of f and g to their limits, which a pure exponential fit would
/// fold into gamma. DiagnosticError when no window holds enough nodes.
DecayFit fit_decay_rate(const FieldProfile& s, const DecayFitOptions& opt = {});

struct TailConstants {
  /// Median of r (q - g) and r (pi - omega - f) over the window.
  real cg = 0;
  real cf = 0;
  /// (max - min) / |median| over the window.
  real cg_variation = 0;
  real cf_variation = 0;
  real r_lo = 0;
  real r_hi = 0;
};

/// Tail constants over the last tenth of the domain, r >= (1 - fraction) R.
TailConstants tail_constants(const ModelParams& p, const FieldProfile& s, real fraction = 0.1L);

struct ObservableReport {
  real QS_numeric = 0;
  real QS_closed = 0;
  real Qe = 0;
  real Qm = 1;
  /// Zero when the fit window is empty; see fit_error.
  real gamma_fit = 0;
  real gamma_theory = 0;
  DecayFit fit;
  std::string fit_error;
  TailConstants tails;
  ActionBreakdown action;
};

ObservableReport compute_observables(const ModelParams& p, const FieldProfile& s,
                                     const DecayFitOptions& fit = {});

}  // namespace skydyon
