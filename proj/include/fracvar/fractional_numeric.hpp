#pragma once

#include <span>
#include <utility>

#include "fracvar/grid.hpp"

namespace fracvar {

/// Product-trapezoidal approximation of the Riemann-Liouville integral I^alpha
/// on the grid: the piecewise-linear interpolant of f is integrated exactly
/// against the kernel (x-t)^{alpha-1}/Gamma(alpha). Exact (up to rounding) for
/// constant and piecewise-linear data; I^1 reproduces the cumulative
/// trapezoidal rule.
SampledFunction rl_integral_num(const SampledFunction& f, double alpha);

struct FracDerivative {
  SampledFunction value;
  /// The scheme cannot produce a value at the base node; when f(a) != 0 the
  /// kernel singularity makes the derivative genuinely undefined there.
  /// value.values[0] is 0-filled either way.
  bool origin_defined = false;
};

/// L1 discretization of the Riemann-Liouville derivative D^alpha, alpha in
/// (0,1): piecewise-linear product integration of the Caputo part plus the
/// exact initial-value term f(a) (x-a)^{-alpha}/Gamma(1-alpha).
FracDerivative rl_derivative_num(const SampledFunction& f, double alpha);

/// Composite trapezoidal value of the sampled integrand over its grid.
double functional_quadrature(const SampledFunction& integrand);

/// Ordinary first derivative on the grid: central differences inside,
/// second-order one-sided stencils at both ends.
SampledFunction grid_derivative(const SampledFunction& f);

/// Copy with the base-node value replaced by linear extrapolation from nodes
/// 1 and 2. Functional evaluations use this to sidestep the unreliable first
/// node of the derivative scheme.
SampledFunction with_origin_extrapolated(SampledFunction f);

/// Least-squares slope of log(error) against log(h). Needs >= 3 levels with
/// positive errors; a level set that is zero to rounding (all errors below
/// exact_threshold) reports +infinity, i.e. "exact".
double estimate_convergence_order(std::span<const std::pair<double, double>> h_and_error,
                                  double exact_threshold = 1e-13);

}  // namespace fracvar
