#include "fracvar/power_sum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fracvar/special_functions.hpp"

namespace fracvar {

namespace {

// Gamma(num)/Gamma(den) for num, den > 0, switching to the log form before
// either factor overflows.
double gamma_ratio(double num, double den) {
  if (num < 170.0 && den < 170.0) return gamma(num) / gamma(den);
  return std::exp(ln_gamma(num) - ln_gamma(den));
}

void check_exponent(double e) {
  if (!(e > -1.0) || !std::isfinite(e)) {
    throw std::domain_error("PowerSum: exponent must be finite and > -1, got " +
                            std::to_string(e));
  }
}

void check_same_base(const PowerSum& p, const PowerSum& q) {
  if (p.base() != q.base()) {
    throw std::invalid_argument("PowerSum: mismatched base points " +
                                std::to_string(p.base()) + " vs " + std::to_string(q.base()));
  }
}

}  // namespace

PowerSum::PowerSum(double base_point, std::vector<PowerTerm> terms)
    : base_(base_point), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    check_exponent(t.exponent);
    if (!std::isfinite(t.coef)) throw std::domain_error("PowerSum: non-finite coefficient");
  }
  normalize();
}

PowerSum PowerSum::constant(double value, double base_point) {
  return PowerSum(base_point, {{value, 0.0}});
}

PowerSum PowerSum::monomial(double coef, double exponent, double base_point) {
  return PowerSum(base_point, {{coef, exponent}});
}

bool PowerSum::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && std::abs(terms_[0].exponent) <= kExponentTol;
}

double PowerSum::max_abs_coef() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coef));
  return m;
}

void PowerSum::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PowerTerm& s, const PowerTerm& t) { return s.exponent < t.exponent; });
  std::vector<PowerTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && t.exponent - merged.back().exponent <= kExponentTol) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const PowerTerm& t) { return t.coef == 0.0; }),
               merged.end());
  terms_ = std::move(merged);
}

double eval(const PowerSum& p, double x) {
  const double u = x - p.base();
  if (u < 0.0) {
    throw std::domain_error("PowerSum eval: x = " + std::to_string(x) +
                            " below base point " + std::to_string(p.base()));
  }
  double acc = 0.0;
  for (const auto& t : p.terms()) {
    if (t.exponent < 0.0 && u == 0.0) {
      throw std::domain_error("PowerSum eval: negative exponent at the base point");
    }
    acc += t.coef * std::pow(u, t.exponent);
  }
  return acc;
}

PowerSum rl_integral(const PowerSum& p, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("rl_integral: order must be positive, got " +
                                std::to_string(alpha));
  }
  std::vector<PowerTerm> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    const double c = t.coef * gamma_ratio(t.exponent + 1.0, t.exponent + 1.0 + alpha);
    out.push_back({c, t.exponent + alpha});
  }
  return PowerSum(p.base(), std::move(out));
}

PowerSum rl_derivative(const PowerSum& p, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::out_of_range("rl_derivative: order must lie in [0, 1], got " +
                            std::to_string(alpha));
  }
  if (alpha == 0.0) return p;  // D^0 f = f
  std::vector<PowerTerm> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    double e = t.exponent - alpha;
    const double den = t.exponent + 1.0 - alpha;  // Gamma argument, pole at 0
    if (std::abs(den) <= PowerSum::kExponentTol) continue;  // D^a x^{a-1} = 0
    if (den < 0.0) {
      throw std::domain_error("rl_derivative: term x^" + std::to_string(t.exponent) +
                              " leaves the exponent range (result <= -1)");
    }
    if (std::abs(e) <= PowerSum::kExponentTol) e = 0.0;  // b = alpha: exact constant
    out.push_back({t.coef * gamma(t.exponent + 1.0) * reciprocal_gamma(den), e});
  }
  return PowerSum(p.base(), std::move(out));
}

PowerSum operator+(const PowerSum& p, const PowerSum& q) {
  check_same_base(p, q);
  std::vector<PowerTerm> out = p.terms();
  out.insert(out.end(), q.terms().begin(), q.terms().end());
  return PowerSum(p.base(), std::move(out));
}

PowerSum operator-(const PowerSum& p) { return -1.0 * p; }

PowerSum operator-(const PowerSum& p, const PowerSum& q) { return p + (-q); }

PowerSum operator*(double s, const PowerSum& p) {
  std::vector<PowerTerm> out = p.terms();
  for (auto& t : out) t.coef *= s;
  return PowerSum(p.base(), std::move(out));
}

PowerSum operator*(const PowerSum& p, double s) { return s * p; }

PowerSum operator*(const PowerSum& p, const PowerSum& q) {
  check_same_base(p, q);
  std::vector<PowerTerm> out;
  out.reserve(p.terms().size() * q.terms().size());
  for (const auto& s : p.terms())
    for (const auto& t : q.terms()) out.push_back({s.coef * t.coef, s.exponent + t.exponent});
  return PowerSum(p.base(), std::move(out));
}

PowerSum square(const PowerSum& p) { return p * p; }

double definite_integral(const PowerSum& p, double lo, double hi) {
  if (!(p.base() <= lo && lo <= hi)) {
    throw std::domain_error("definite_integral: need base <= lo <= hi");
  }
  const double ul = lo - p.base(), uh = hi - p.base();
  double acc = 0.0;
  for (const auto& t : p.terms()) {
    const double e1 = t.exponent + 1.0;  // > 0 by the exponent invariant
    acc += t.coef / e1 * (std::pow(uh, e1) - std::pow(ul, e1));
  }
  return acc;
}

bool approx_equal(const PowerSum& p, const PowerSum& q, double coef_rtol) {
  if (p.base() != q.base()) return false;
  if (p.terms().size() != q.terms().size()) return false;
  for (size_t i = 0; i < p.terms().size(); ++i) {
    const auto& s = p.terms()[i];
    const auto& t = q.terms()[i];
    if (std::abs(s.exponent - t.exponent) > PowerSum::kExponentTol) return false;
    const double scale = std::max(std::abs(s.coef), std::abs(t.coef));
    if (std::abs(s.coef - t.coef) > coef_rtol * scale) return false;
  }
  return true;
}

std::optional<double> proportionality_ratio(const PowerSum& p, const PowerSum& q, double rtol) {
  if (q.is_zero()) return std::nullopt;
  if (p.is_zero()) return 0.0;
  if (p.terms().size() != q.terms().size()) return std::nullopt;
  const double r = p.terms()[0].coef / q.terms()[0].coef;
  if (!std::isfinite(r)) return std::nullopt;
  for (size_t i = 0; i < p.terms().size(); ++i) {
    const auto& s = p.terms()[i];
    const auto& t = q.terms()[i];
    if (std::abs(s.exponent - t.exponent) > PowerSum::kExponentTol) return std::nullopt;
    if (std::abs(s.coef - r * t.coef) > rtol * std::max(std::abs(s.coef), std::abs(r * t.coef)))
      return std::nullopt;
  }
  return r;
}

}  // namespace fracvar
