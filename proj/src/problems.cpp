#include "fracvar/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fracvar/special_functions.hpp"

namespace fracvar {

namespace {

void check_alpha_unit(double alpha, bool allow_one, const char* who) {
  const bool ok = allow_one ? (alpha > 0.0 && alpha <= 1.0) : (alpha > 0.0 && alpha < 1.0);
  if (!ok) {
    throw std::out_of_range(std::string(who) + ": alpha = " + std::to_string(alpha) +
                            " outside the admissible range");
  }
}

const PowerSum* coef_power_sum(const Coefficient& g) { return std::get_if<PowerSum>(&g); }

// Nodal samples of g on the evaluation grid. Sampled coefficients must already
// live on that grid.
SampledFunction coef_samples(const Coefficient& g, const Grid& grid) {
  if (const auto* p = coef_power_sum(g)) return sample(*p, grid);
  const auto& sc = std::get<SampledCoefficient>(g);
  if (!(sc.values.grid == grid)) {
    throw std::invalid_argument("coefficient samples do not match the evaluation grid");
  }
  return sc.values;
}

void check_nonvanishing(const Coefficient& g) {
  if (const auto* p = coef_power_sum(g)) {
    const Grid probe(0.0, 1.0, 2049);
    double lo = std::abs(eval(*p, probe.node(0)));
    bool positive = eval(*p, probe.node(0)) > 0.0;
    for (int j = 1; j < probe.n; ++j) {
      const double v = eval(*p, probe.node(j));
      lo = std::min(lo, std::abs(v));
      if ((v > 0.0) != positive) lo = 0.0;
    }
    if (!(lo > 0.0)) throw std::domain_error("g must not vanish on [0, 1]");
    return;
  }
  const auto& v = std::get<SampledCoefficient>(g).values.values;
  if (v.abs().minCoeff() <= 0.0 || ((v > 0.0).any() && (v < 0.0).any())) {
    throw std::domain_error("g must not vanish on [0, 1]");
  }
}

SampledFunction numeric_frac_derivative(const SampledFunction& y, double alpha) {
  if (alpha == 0.0) return y;  // D^0 f = f
  if (alpha == 1.0) return grid_derivative(y);
  return rl_derivative_num(y, alpha).value;
}

SampledFunction numeric_frac_integral(const SampledFunction& y, double order) {
  if (order == 0.0) return y;
  return rl_integral_num(y, order);
}

double curve_value(const Curve& u, const Grid& grid, int j) {
  if (const auto* p = std::get_if<PowerSum>(&u)) return eval(*p, grid.node(j));
  const auto& s = std::get<SampledFunction>(u);
  if (!(s.grid == grid)) throw std::invalid_argument("sampled curve on a different grid");
  return s.values[j];
}

// w(y) = (I^{1-alpha} y + 1) * g for exact candidates of the gauged problem.
PowerSum product_form_w(const PowerSum& y, const PowerSum& g, double alpha) {
  return (frac_integral(y, 1.0 - alpha) + PowerSum::constant(1.0, y.base())) * g;
}

PowerSum total_w(const ProductFormCandidate& pf) {
  if (pf.y_extra.is_zero()) return pf.w;
  return pf.w + frac_integral(pf.y_extra, 1.0 - pf.alpha) * pf.g;
}

void check_product_form_matches(const VariationalProblem& prob, const ProductFormCandidate& pf) {
  if (prob.form != VariationalProblem::Form::kGaugedDerivativeSquare) {
    throw std::invalid_argument("product-form candidate on a derivative-square problem");
  }
  if (pf.alpha != prob.alpha) {
    throw std::invalid_argument("product-form candidate built for a different alpha");
  }
  const auto* g = coef_power_sum(*prob.g);
  if (!g || !approx_equal(pf.g, *g, 1e-12)) {
    throw std::invalid_argument("product-form candidate built for a different g");
  }
}

double integrate_squared_root(const SampledFunction& root) {
  SampledFunction integrand(root.grid, root.values.square());
  return functional_quadrature(with_origin_extrapolated(std::move(integrand)));
}

}  // namespace

VariationalProblem p1_problem(double c, double alpha) {
  check_alpha_unit(alpha, /*allow_one=*/true, "p1_problem");
  VariationalProblem prob;
  prob.form = VariationalProblem::Form::kDerivativeSquare;
  prob.alpha = alpha;
  prob.y_b = c;
  return prob;
}

VariationalProblem p2_problem(Coefficient g, double xi, double alpha) {
  check_alpha_unit(alpha, /*allow_one=*/true, "p2_problem");
  check_nonvanishing(g);
  VariationalProblem prob;
  prob.form = VariationalProblem::Form::kGaugedDerivativeSquare;
  prob.alpha = alpha;
  prob.y_b = xi;
  prob.g = std::move(g);
  return prob;
}

ControlProblem p3_problem(double alpha) {
  check_alpha_unit(alpha, /*allow_one=*/true, "p3_problem");
  return ControlProblem{alpha, 2.0, 1.0};
}

PowerSum frac_integral(const PowerSum& p, double order) {
  if (order == 0.0) return p;
  return rl_integral(p, order);
}

SampledFunction candidate_samples(const Candidate& y, const Grid& grid) {
  if (const auto* p = std::get_if<PowerSum>(&y)) return sample(*p, grid);
  if (const auto* s = std::get_if<SampledFunction>(&y)) {
    if (!(s->grid == grid)) {
      throw std::invalid_argument("sampled candidate does not match the evaluation grid");
    }
    return *s;
  }
  const auto& pf = std::get<ProductFormCandidate>(y);
  Eigen::ArrayXd phi(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double x = grid.node(j);
    phi[j] = eval(pf.w, x) / eval(pf.g, x) - 1.0;
  }
  SampledFunction base =
      numeric_frac_derivative(SampledFunction(grid, std::move(phi)), 1.0 - pf.alpha);
  if (!pf.y_extra.is_zero()) base.values += sample(pf.y_extra, grid).values;
  return base;
}

double evaluate(const VariationalProblem& prob, const Candidate& y, int n) {
  if (prob.form == VariationalProblem::Form::kDerivativeSquare) {
    if (const auto* p = std::get_if<PowerSum>(&y)) {
      return definite_integral(square(rl_derivative(*p, prob.alpha)), prob.a, prob.b);
    }
    if (std::holds_alternative<ProductFormCandidate>(y)) {
      throw std::invalid_argument("product-form candidate on a derivative-square problem");
    }
    return evaluate_numeric(prob, y, std::get<SampledFunction>(y).grid.n);
  }

  const auto* g = coef_power_sum(*prob.g);
  if (g) {
    if (const auto* p = std::get_if<PowerSum>(&y)) {
      const PowerSum w = product_form_w(*p, *g, prob.alpha);
      return definite_integral(square(rl_derivative(w, 1.0)), prob.a, prob.b);
    }
    if (const auto* pf = std::get_if<ProductFormCandidate>(&y)) {
      check_product_form_matches(prob, *pf);
      return definite_integral(square(rl_derivative(total_w(*pf), 1.0)), prob.a, prob.b);
    }
  }
  const int grid_n = std::holds_alternative<SampledFunction>(y)
                         ? std::get<SampledFunction>(y).grid.n
                         : n;
  return evaluate_numeric(prob, y, grid_n);
}

double evaluate_numeric(const VariationalProblem& prob, const Candidate& y, int n) {
  const Grid grid(prob.a, prob.b, n);
  const SampledFunction ys = candidate_samples(y, grid);
  if (prob.form == VariationalProblem::Form::kDerivativeSquare) {
    return integrate_squared_root(numeric_frac_derivative(ys, prob.alpha));
  }
  // Gauged form via the product identity: F = (d/dx [(I^{1-alpha} y + 1) g])^2.
  const SampledFunction v = numeric_frac_integral(ys, 1.0 - prob.alpha);
  const SampledFunction gs = coef_samples(*prob.g, grid);
  SampledFunction w(grid, (v.values + 1.0) * gs.values);
  return integrate_squared_root(grid_derivative(w));
}

double check_constraint(const VariationalProblem& prob, const Candidate& y, int n) {
  if (const auto* p = std::get_if<PowerSum>(&y)) {
    return std::abs(eval(frac_integral(*p, 1.0 - prob.alpha), prob.b) - prob.y_b);
  }
  if (const auto* pf = std::get_if<ProductFormCandidate>(&y)) {
    check_product_form_matches(prob, *pf);
    const double vb = eval(total_w(*pf), prob.b) / eval(pf->g, prob.b) - 1.0;
    return std::abs(vb - prob.y_b);
  }
  return check_constraint_numeric(prob, y, n);
}

double check_constraint_numeric(const VariationalProblem& prob, const Candidate& y, int n) {
  const Grid grid(prob.a, prob.b, n);
  const SampledFunction ys = candidate_samples(y, grid);
  const SampledFunction v = numeric_frac_integral(ys, 1.0 - prob.alpha);
  return std::abs(v.values[n - 1] - prob.y_b);
}

Candidate perturb(const Candidate& y, const PowerSum& delta) {
  if (const auto* p = std::get_if<PowerSum>(&y)) return *p + delta;
  if (const auto* s = std::get_if<SampledFunction>(&y)) {
    SampledFunction out = *s;
    out.values += sample(delta, s->grid).values;
    return out;
  }
  ProductFormCandidate pf = std::get<ProductFormCandidate>(y);
  pf.y_extra = pf.y_extra + delta;
  return pf;
}

PowerSum p1_solution(double c, double alpha) {
  check_alpha_unit(alpha, /*allow_one=*/true, "p1_solution");
  return PowerSum::monomial(c / (alpha * gamma(alpha)), alpha);
}

std::pair<double, double> p2_line(const Coefficient& g, double xi) {
  double g0, g1;
  if (const auto* p = coef_power_sum(g)) {
    g0 = eval(*p, 0.0);
    g1 = eval(*p, 1.0);
  } else {
    const auto& v = std::get<SampledCoefficient>(g).values.values;
    g0 = v[0];
    g1 = v[v.size() - 1];
  }
  return {g1 * (xi + 1.0) - g0, g0};
}

Candidate p2_solution(const Coefficient& g, double xi, double alpha) {
  check_alpha_unit(alpha, /*allow_one=*/true, "p2_solution");
  check_nonvanishing(g);
  const auto [A, C] = p2_line(g, xi);

  if (const auto* gp = coef_power_sum(g)) {
    const PowerSum w(gp->base(), {{C, 0.0}, {A, 1.0}});
    if (gp->is_constant()) {
      const double inv = 1.0 / eval(*gp, 0.0);
      const PowerSum phi = inv * w - PowerSum::constant(1.0, gp->base());
      return rl_derivative(phi, 1.0 - alpha);
    }
    if (const auto ratio = proportionality_ratio(w, *gp)) {
      const PowerSum phi = PowerSum::constant(*ratio - 1.0, gp->base());
      return rl_derivative(phi, 1.0 - alpha);
    }
    return ProductFormCandidate{w, *gp, alpha, PowerSum::zero(gp->base())};
  }

  // Sampled g: build phi = (A x + C)/g - 1 on g's grid and differentiate.
  // phi(0) = C/g(0) - 1 = 0 exactly, so the derivative scheme has no singular
  // correction to make.
  const auto& gs = std::get<SampledCoefficient>(g).values;
  Eigen::ArrayXd phi(gs.grid.n);
  for (int j = 0; j < gs.grid.n; ++j) {
    phi[j] = (A * gs.grid.node(j) + C) / gs.values[j] - 1.0;
  }
  return numeric_frac_derivative(SampledFunction(gs.grid, std::move(phi)), 1.0 - alpha);
}

ControlSolution p3_solution(double alpha) {
  check_alpha_unit(alpha, /*allow_one=*/true, "p3_solution");
  const double s = 1.0 / (alpha * gamma(alpha));
  return ControlSolution{PowerSum::zero(), PowerSum::constant(1.0),
                         PowerSum::monomial(2.0 * s, alpha), PowerSum::monomial(s, alpha)};
}

double ControlResiduals::max() const {
  return std::max({dynamics_y1, dynamics_y2, boundary_y1, boundary_y2});
}

ControlResiduals check_control_system(double alpha, const Curve& u1, const Curve& u2,
                                      const Curve& y1, const Curve& y2, int n) {
  check_alpha_unit(alpha, /*allow_one=*/true, "check_control_system");
  const Grid grid(0.0, 1.0, n);

  const auto state_derivative = [&](const Curve& y) -> std::variant<PowerSum, SampledFunction> {
    if (const auto* p = std::get_if<PowerSum>(&y)) return rl_derivative(*p, alpha);
    return numeric_frac_derivative(std::get<SampledFunction>(y), alpha);
  };
  const auto derivative_value = [&](const std::variant<PowerSum, SampledFunction>& d, int j) {
    if (const auto* p = std::get_if<PowerSum>(&d)) return eval(*p, grid.node(j));
    return std::get<SampledFunction>(d).values[j];
  };

  const auto d1 = state_derivative(y1);
  const auto d2 = state_derivative(y2);
  ControlResiduals res;
  for (int j = 0; j < n; ++j) {
    if (grid.node(j) < 0.1) continue;
    const double a1 = curve_value(u1, grid, j);
    const double a2 = curve_value(u2, grid, j);
    res.dynamics_y1 =
        std::max(res.dynamics_y1, std::abs(derivative_value(d1, j) - (std::exp(a1) + a1 + a2)));
    res.dynamics_y2 = std::max(res.dynamics_y2, std::abs(derivative_value(d2, j) - a2));
  }

  const auto terminal_frac_integral = [&](const Curve& y) {
    if (const auto* p = std::get_if<PowerSum>(&y)) {
      return eval(frac_integral(*p, 1.0 - alpha), 1.0);
    }
    const auto& s = std::get<SampledFunction>(y);
    return numeric_frac_integral(s, 1.0 - alpha).values[s.grid.n - 1];
  };
  res.boundary_y1 = std::abs(terminal_frac_integral(y1) - 2.0);
  res.boundary_y2 = std::abs(terminal_frac_integral(y2) - 1.0);
  return res;
}

double control_cost(const Curve& u1, const Curve& u2, int n) {
  const auto* p1 = std::get_if<PowerSum>(&u1);
  const auto* p2 = std::get_if<PowerSum>(&u2);
  if (p1 && p2) return definite_integral(square(*p1) + square(*p2), 0.0, 1.0);
  const Grid grid(0.0, 1.0, n);
  Eigen::ArrayXd integrand(n);
  for (int j = 0; j < n; ++j) {
    const double a1 = curve_value(u1, grid, j);
    const double a2 = curve_value(u2, grid, j);
    integrand[j] = a1 * a1 + a2 * a2;
  }
  return functional_quadrature(SampledFunction(grid, std::move(integrand)));
}

SampledFunction p2_direct_form_root(const VariationalProblem& prob, const Candidate& y, int n) {
  if (prob.form != VariationalProblem::Form::kGaugedDerivativeSquare) {
    throw std::invalid_argument("direct form only exists for the gauged problem");
  }
  const Grid grid(prob.a, prob.b, n);
  const SampledFunction ys = candidate_samples(y, grid);
  const SampledFunction d = numeric_frac_derivative(ys, prob.alpha);
  const SampledFunction v = numeric_frac_integral(ys, 1.0 - prob.alpha);
  const SampledFunction gs = coef_samples(*prob.g, grid);

  SampledFunction gderiv = [&]() {
    if (const auto* gp = coef_power_sum(*prob.g)) return sample(rl_derivative(*gp, 1.0), grid);
    const auto& sc = std::get<SampledCoefficient>(*prob.g);
    return sc.derivative ? *sc.derivative : grid_derivative(sc.values);
  }();
  if (!(gderiv.grid == grid)) {
    throw std::invalid_argument("g' samples do not match the evaluation grid");
  }
  return SampledFunction(grid, d.values * gs.values + (v.values + 1.0) * gderiv.values);
}

VariationalProblem make_problem(const ProblemConfig& config) {
  switch (config.kind) {
    case ProblemConfig::Kind::kP1:
      return p1_problem(config.c, config.alpha);
    case ProblemConfig::Kind::kP2:
      return p2_problem(config.g.value_or(Coefficient(PowerSum::constant(1.0))), config.xi,
                        config.alpha);
    default:
      throw std::invalid_argument("make_problem: the control problem has no functional form");
  }
}

Candidate make_solution(const ProblemConfig& config) {
  switch (config.kind) {
    case ProblemConfig::Kind::kP1:
      return p1_solution(config.c, config.alpha);
    case ProblemConfig::Kind::kP2:
      return p2_solution(config.g.value_or(Coefficient(PowerSum::constant(1.0))), config.xi,
                            config.alpha);
    default:
      throw std::invalid_argument("make_solution: use p3_solution for the control problem");
  }
}

}  // namespace fracvar
