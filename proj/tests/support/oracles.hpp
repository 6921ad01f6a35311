#pragma once

// Test-only reference values computed by adaptive quadrature, independent of
// the library's gamma/power-rule/grid implementations.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>

namespace oracle {

/// Adaptive double-exponential quadrature; copes with integrable endpoint
/// singularities.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, tol);
}

/// Gamma(z) straight from its definition integral int_0^inf t^{z-1} e^{-t} dt,
/// head [0,1] (singular at 0 for z < 1) plus a truncated smooth tail.
inline double gamma_by_quadrature(double z) {
  const auto integrand = [z](double t) { return std::pow(t, z - 1.0) * std::exp(-t); };
  const double cutoff = 60.0 + 6.0 * z;  // remainder far below double rounding
  return integrate(integrand, 0.0, 1.0) + integrate(integrand, 1.0, cutoff);
}

/// I^alpha f (x) = 1/Gamma(alpha) int_0^{x-base} s^{alpha-1} f(x-s) ds. The
/// substitution s = x - t keeps the singular factor free of cancellation.
inline double rl_integral_at(const std::function<double(double)>& f, double alpha, double x,
                             double base = 0.0) {
  const auto integrand = [&](double s) { return std::pow(s, alpha - 1.0) * f(x - s); };
  return integrate(integrand, 0.0, x - base) / gamma_by_quadrature(alpha);
}

/// D^alpha f (x) as the ordinary derivative of I^{1-alpha} f, by a five-point
/// stencil on quadrature values. Good to roughly 1e-9.
inline double rl_derivative_at(const std::function<double(double)>& f, double alpha, double x,
                               double step = 1e-3) {
  const auto iv = [&](double xx) { return rl_integral_at(f, 1.0 - alpha, xx); };
  return (iv(x - 2 * step) - 8.0 * iv(x - step) + 8.0 * iv(x + step) - iv(x + 2 * step)) /
         (12.0 * step);
}

}  // namespace oracle
