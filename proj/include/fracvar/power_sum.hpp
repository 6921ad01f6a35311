#pragma once

#include <optional>
#include <vector>

namespace fracvar {

struct PowerTerm {
  double coef = 0.0;
  double exponent = 0.0;
};

/// Finite sum  x |-> sum_i c_i * (x - a)^{b_i}  with every exponent b_i > -1,
/// kept in canonical form: exponents strictly increasing, merged within
/// kExponentTol, zero coefficients dropped. The class is closed under the
/// Riemann-Liouville operators of any order used here, which is what makes it
/// usable as the exact reference for all grid-based numerics.
class PowerSum {
 public:
  static constexpr double kExponentTol = 1e-12;

  PowerSum() = default;
  explicit PowerSum(double base_point) : base_(base_point) {}
  PowerSum(double base_point, std::vector<PowerTerm> terms);

  static PowerSum zero(double base_point = 0.0) { return PowerSum(base_point); }
  static PowerSum constant(double value, double base_point = 0.0);
  static PowerSum monomial(double coef, double exponent, double base_point = 0.0);

  double base() const { return base_; }
  const std::vector<PowerTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// Largest |coefficient|, 0 for the zero sum. Scale reference for tolerances.
  double max_abs_coef() const;

 private:
  void normalize();

  double base_ = 0.0;
  std::vector<PowerTerm> terms_;
};

/// Pointwise value. Requires x >= base; x > base when a negative exponent is
/// present (the value diverges at the base point).
double eval(const PowerSum& p, double x);

/// Riemann-Liouville fractional integral I^alpha, alpha > 0, term-wise
/// c x^b |-> c Gamma(b+1)/Gamma(b+1+alpha) x^{b+alpha}.
PowerSum rl_integral(const PowerSum& p, double alpha);

/// Riemann-Liouville fractional derivative D^alpha for alpha in [0, 1],
/// term-wise c x^b |-> c Gamma(b+1)/Gamma(b+1-alpha) x^{b-alpha}. Terms with
/// b = alpha - 1 hit the Gamma pole and vanish (D^alpha x^{alpha-1} = 0);
/// any term that would otherwise leave an exponent <= -1 is a domain error.
PowerSum rl_derivative(const PowerSum& p, double alpha);

PowerSum operator+(const PowerSum& p, const PowerSum& q);
PowerSum operator-(const PowerSum& p, const PowerSum& q);
PowerSum operator*(double s, const PowerSum& p);
PowerSum operator*(const PowerSum& p, double s);
PowerSum operator*(const PowerSum& p, const PowerSum& q);
PowerSum operator-(const PowerSum& p);

inline PowerSum scale(const PowerSum& p, double s) { return s * p; }
PowerSum square(const PowerSum& p);

/// Integral of p over [lo, hi], base <= lo <= hi, via the term-wise
/// antiderivative c/(b+1) x^{b+1}.
double definite_integral(const PowerSum& p, double lo, double hi);

/// Term-by-term comparison: same exponent layout (within kExponentTol) and
/// coefficients within coef_rtol relative to the larger magnitude.
bool approx_equal(const PowerSum& p, const PowerSum& q, double coef_rtol);

/// If p == r * q for a scalar r (within rtol on the coefficients), returns r.
/// Zero p against nonzero q yields r = 0; p against zero q yields nothing.
std::optional<double> proportionality_ratio(const PowerSum& p, const PowerSum& q,
                                            double rtol = 1e-12);

}  // namespace fracvar
