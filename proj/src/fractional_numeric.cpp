#include "fracvar/fractional_numeric.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fracvar/special_functions.hpp"

namespace fracvar {

SampledFunction rl_integral_num(const SampledFunction& f, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("rl_integral_num: order must be positive");
  }
  const int n = f.grid.n;
  const double h = f.grid.h();
  const double scale = std::pow(h, alpha) / gamma(alpha + 2.0);

  // m^(alpha+1) for m = 0..n, then the second difference d2[m] used for the
  // interior weights w_{j,k} = d2[j-k].
  Eigen::ArrayXd pw(n + 1);
  for (int m = 0; m <= n; ++m) pw[m] = std::pow(double(m), alpha + 1.0);
  Eigen::ArrayXd d2(n);
  d2[0] = 0.0;
  for (int m = 1; m < n; ++m) d2[m] = pw[m + 1] - 2.0 * pw[m] + pw[m - 1];

  const Eigen::ArrayXd& v = f.values;
  Eigen::ArrayXd out(n);
  out[0] = 0.0;
  for (int j = 1; j < n; ++j) {
    const double w0 = pw[j - 1] - std::pow(double(j), alpha) * (j - alpha - 1.0);
    double s = v[j] + w0 * v[0];
    if (j >= 2) {
      // sum_{k=1}^{j-1} d2[j-k] v[k] as a reversed-segment dot product
      s += (d2.segment(1, j - 1) * v.segment(1, j - 1).reverse()).sum();
    }
    out[j] = scale * s;
  }
  return SampledFunction(f.grid, std::move(out));
}

FracDerivative rl_derivative_num(const SampledFunction& f, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::out_of_range("rl_derivative_num: order must lie in (0, 1), got " +
                            std::to_string(alpha));
  }
  const int n = f.grid.n;
  const double h = f.grid.h();
  const double scale = std::pow(h, -alpha) / gamma(2.0 - alpha);
  const double f0 = f.values[0];
  const double singular_scale = f0 / gamma(1.0 - alpha);

  Eigen::ArrayXd bk(n);
  for (int k = 0; k < n; ++k) {
    bk[k] = std::pow(k + 1.0, 1.0 - alpha) - std::pow(double(k), 1.0 - alpha);
  }
  Eigen::ArrayXd df = f.values.tail(n - 1) - f.values.head(n - 1);

  Eigen::ArrayXd out(n);
  out[0] = 0.0;
  for (int j = 1; j < n; ++j) {
    // sum_{k=0}^{j-1} b_k (f_{j-k} - f_{j-k-1})
    double s = (bk.head(j) * df.head(j).reverse()).sum();
    out[j] = scale * s;
    if (f0 != 0.0) out[j] += singular_scale * std::pow(j * h, -alpha);
  }
  return {SampledFunction(f.grid, std::move(out)), f0 == 0.0};
}

double functional_quadrature(const SampledFunction& integrand) {
  const int n = integrand.grid.n;
  const Eigen::ArrayXd& v = integrand.values;
  return integrand.grid.h() * (v.segment(1, n - 2).sum() + 0.5 * (v[0] + v[n - 1]));
}

SampledFunction grid_derivative(const SampledFunction& f) {
  const int n = f.grid.n;
  const double h = f.grid.h();
  const Eigen::ArrayXd& v = f.values;
  Eigen::ArrayXd out(n);
  out.segment(1, n - 2) = (v.tail(n - 2) - v.head(n - 2)) / (2.0 * h);
  out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return SampledFunction(f.grid, std::move(out));
}

SampledFunction with_origin_extrapolated(SampledFunction f) {
  f.values[0] = 2.0 * f.values[1] - f.values[2];
  return f;
}

double estimate_convergence_order(std::span<const std::pair<double, double>> h_and_error,
                                  double exact_threshold) {
  if (h_and_error.size() < 3) {
    throw std::invalid_argument("estimate_convergence_order: need at least 3 levels");
  }
  bool all_tiny = true;
  for (const auto& [h, e] : h_and_error) {
    if (e > exact_threshold) all_tiny = false;
    if (e < 0.0 || !(h > 0.0)) {
      throw std::invalid_argument("estimate_convergence_order: h must be positive, errors >= 0");
    }
  }
  if (all_tiny) return std::numeric_limits<double>::infinity();

  const auto m = static_cast<Eigen::Index>(h_and_error.size());
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& [h, e] = h_and_error[i];
    if (e <= 0.0) {
      throw std::invalid_argument("estimate_convergence_order: zero error on a non-exact level");
    }
    design(i, 0) = std::log(h);
    design(i, 1) = 1.0;
    rhs(i) = std::log(e);
  }
  const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
  return fit[0];
}

}  // namespace fracvar
