#include "fracvar/leitmann.hpp"

#include <cmath>
#include <stdexcept>
#include <variant>

#include "fracvar/special_functions.hpp"

namespace fracvar {

namespace {

PowerSum product_form_w_of(const PowerSum& y, const PowerSum& g, double alpha) {
  return (frac_integral(y, 1.0 - alpha) + PowerSum::constant(1.0, y.base())) * g;
}

ProductFormCandidate as_product_form(const Transformation& t, const Candidate& y) {
  if (const auto* pf = std::get_if<ProductFormCandidate>(&y)) return *pf;
  if (const auto* p = std::get_if<PowerSum>(&y)) {
    return ProductFormCandidate{product_form_w_of(*p, *t.g, t.alpha), *t.g, t.alpha,
                                PowerSum::zero(p->base())};
  }
  throw std::invalid_argument("gauged transformation needs an exact candidate");
}

PowerSum total_w_of(const ProductFormCandidate& pf) {
  if (pf.y_extra.is_zero()) return pf.w;
  return pf.w + frac_integral(pf.y_extra, 1.0 - pf.alpha) * pf.g;
}

bool exact_candidate(const Candidate& y) { return !std::holds_alternative<SampledFunction>(y); }

// H evaluated along vt = wt/g - 1 as a power sum; needs v_coef proportional
// to g, which holds for the whole catalog.
PowerSum gauge_along_product_form(const GaugeTerm& gauge, const PowerSum& wt, const PowerSum& g) {
  const auto ratio = proportionality_ratio(gauge.v_coef, g, 1e-10);
  if (!ratio) {
    throw std::invalid_argument("gauge v-coefficient is not a multiple of g; no exact path");
  }
  return *ratio * (wt - g) + gauge.x_part;
}

}  // namespace

Candidate apply_forward(const Transformation& t, const Candidate& y) {
  if (t.g) {
    ProductFormCandidate pf = as_product_form(t, y);
    pf.w = pf.w - *t.w_shift;
    return pf;
  }
  if (const auto* p = std::get_if<PowerSum>(&y)) return *p - *t.shift;
  if (const auto* s = std::get_if<SampledFunction>(&y)) {
    SampledFunction out = *s;
    out.values -= sample(*t.shift, s->grid).values;
    return out;
  }
  throw std::invalid_argument("product-form candidate under a non-gauged transformation");
}

Candidate apply_inverse(const Transformation& t, const Candidate& ytilde) {
  if (t.g) {
    ProductFormCandidate pf = as_product_form(t, ytilde);
    pf.w = pf.w + *t.w_shift;
    return pf;
  }
  if (const auto* p = std::get_if<PowerSum>(&ytilde)) return *p + *t.shift;
  if (const auto* s = std::get_if<SampledFunction>(&ytilde)) {
    SampledFunction out = *s;
    out.values += sample(*t.shift, s->grid).values;
    return out;
  }
  throw std::invalid_argument("product-form candidate under a non-gauged transformation");
}

Transformation p1_transformation(double c, double alpha) {
  Transformation t;
  t.alpha = alpha;
  t.shift = p1_solution(c, alpha);
  t.gauge = GaugeTerm{PowerSum::constant(2.0 * c), PowerSum::monomial(c * c, 1.0)};
  return t;
}

Transformation p2_transformation(const PowerSum& g, double xi, double alpha) {
  const auto [A, C] = p2_line(Coefficient(g), xi);
  const double B = C - 1.0;
  Transformation t;
  t.alpha = alpha;
  t.g = g;
  t.w_shift = PowerSum(g.base(), {{B, 0.0}, {A, 1.0}});
  t.gauge = GaugeTerm{2.0 * A * g,
                      2.0 * A * g + PowerSum(g.base(), {{A * B, 0.0}, {A * A, 1.0}})};
  if (g.is_constant()) {
    // f = D^{1-alpha}((A x + B)/g) has a closed power-sum form here.
    t.shift = rl_derivative((1.0 / eval(g, g.base())) * *t.w_shift, 1.0 - alpha);
  }
  return t;
}

Transformation p3_y2_transformation(double alpha) { return p1_transformation(1.0, alpha); }

VerificationReport verify_exact_differential(const VariationalProblem& prob,
                                             const Transformation& t, const Candidate& y, int n,
                                             const EquivalenceCheckOptions& opts) {
  VerificationReport report;
  report.check = "exact_differential";
  report.grid_n = n;
  const Grid grid(prob.a, prob.b, n);
  const double x_lo = prob.a + opts.interior_cut * (prob.b - prob.a);

  const bool gauged = prob.form == VariationalProblem::Form::kGaugedDerivativeSquare;
  const bool exact = exact_candidate(y) && (!gauged || std::holds_alternative<PowerSum>(*prob.g));

  if (exact) {
    PowerSum lhs, gauge_path;
    if (gauged) {
      const ProductFormCandidate pf = as_product_form(t, y);
      const PowerSum w = total_w_of(pf);
      const PowerSum wt = w - *t.w_shift;
      lhs = square(rl_derivative(w, 1.0)) - square(rl_derivative(wt, 1.0));
      gauge_path = gauge_along_product_form(t.gauge, wt, *t.g);
    } else {
      const auto& yp = std::get<PowerSum>(y);
      const PowerSum yt = yp - *t.shift;
      lhs = square(rl_derivative(yp, prob.alpha)) - square(rl_derivative(yt, prob.alpha));
      gauge_path = t.gauge.v_coef * frac_integral(yt, 1.0 - prob.alpha) + t.gauge.x_part;
    }
    const PowerSum diff = lhs - rl_derivative(gauge_path, 1.0);
    double gap = 0.0;
    for (int j = 1; j < n; ++j) gap = std::max(gap, std::abs(eval(diff, grid.node(j))));
    report.max_gap = gap;
    report.tolerance = opts.exact_tol;
    report.pass = gap <= report.tolerance;
    report.details.push_back({{"path", "exact"}});
    return report;
  }

  if (gauged) {
    throw std::invalid_argument(
        "numeric exact-differential check is only available for the derivative-square form");
  }
  const SampledFunction ys = candidate_samples(y, grid);
  SampledFunction yts = ys;
  yts.values -= sample(*t.shift, grid).values;

  const auto frac_deriv = [&](const SampledFunction& f) {
    return prob.alpha == 1.0 ? grid_derivative(f) : rl_derivative_num(f, prob.alpha).value;
  };
  const Eigen::ArrayXd lhs =
      frac_deriv(ys).values.square() - frac_deriv(yts).values.square();

  const SampledFunction vt = prob.alpha == 1.0 ? yts : rl_integral_num(yts, 1.0 - prob.alpha);
  Eigen::ArrayXd hs(n);
  for (int j = 0; j < n; ++j) hs[j] = t.gauge(grid.node(j), vt.values[j]);
  const SampledFunction rhs = grid_derivative(SampledFunction(grid, std::move(hs)));

  double gap = 0.0;
  for (int j = 1; j + 1 < n; ++j) {
    if (grid.node(j) < x_lo) continue;
    gap = std::max(gap, std::abs(lhs[j] - rhs.values[j]));
  }
  report.max_gap = gap;
  report.tolerance = opts.numeric_tol_scale * grid.h();
  report.pass = gap <= report.tolerance;
  report.details.push_back({{"path", "numeric"}, {"interior_cut", opts.interior_cut}});
  return report;
}

double predicted_difference(const VariationalProblem& prob, const Transformation& t) {
  // I^{1-a} y vanishes at a for the continuous candidates, so vt(a) comes from
  // the shift alone. In the gauged problems the shifted trajectory carries an
  // x^{a-1} mode, so vt(a) = -w_shift(a)/g(a) instead of plain zero.
  double vt_a, vt_b;
  if (t.g) {
    const double ga = eval(*t.g, prob.a), gb = eval(*t.g, prob.b);
    vt_a = -eval(*t.w_shift, prob.a) / ga;
    vt_b = ((prob.y_b + 1.0) * gb - eval(*t.w_shift, prob.b)) / gb - 1.0;
  } else {
    const PowerSum shift_integral = frac_integral(*t.shift, 1.0 - prob.alpha);
    vt_a = -eval(shift_integral, prob.a);
    vt_b = prob.y_b - eval(shift_integral, prob.b);
  }
  return t.gauge(prob.b, vt_b) - t.gauge(prob.a, vt_a);
}

VerificationReport verify_constant_difference(const VariationalProblem& prob,
                                              const Transformation& t,
                                              std::span<const Candidate> candidates, int n,
                                              const EquivalenceCheckOptions& opts) {
  VerificationReport report;
  report.check = "constant_difference";
  report.grid_n = n;
  const double predicted = predicted_difference(prob, t);

  bool any_numeric = false;
  double dmin = 0.0, dmax = 0.0, worst = 0.0;
  int accepted = 0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& y = candidates[i];
    const double residual = check_constraint(prob, y, n);
    const bool numeric_path = !exact_candidate(y) ||
                              (prob.g && !std::holds_alternative<PowerSum>(*prob.g));
    // Sampled candidates only meet the constraint to discretization accuracy.
    const double gate = numeric_path
                            ? std::max(opts.constraint_tol, 50.0 * Grid(prob.a, prob.b, n).h())
                            : opts.constraint_tol;
    if (residual > gate) {
      report.details.push_back(
          {{"candidate", i}, {"accepted", false}, {"constraint_residual", residual}});
      continue;
    }
    any_numeric = any_numeric || numeric_path;
    const double jy = evaluate(prob, y, n);
    const double jyt = evaluate(prob, apply_forward(t, y), n);
    const double d = jy - jyt;
    report.details.push_back({{"candidate", i},
                              {"accepted", true},
                              {"constraint_residual", residual},
                              {"j_y", jy},
                              {"j_ytilde", jyt},
                              {"difference", d}});
    dmin = accepted == 0 ? d : std::min(dmin, d);
    dmax = accepted == 0 ? d : std::max(dmax, d);
    worst = std::max(worst, std::abs(d - predicted));
    ++accepted;
  }

  report.max_gap = accepted == 0 ? 0.0 : std::max(dmax - dmin, worst);
  report.tolerance =
      any_numeric ? opts.constant_diff_tol_scale * Grid(prob.a, prob.b, n).h() : opts.exact_tol;
  report.pass = accepted > 0 && report.max_gap <= report.tolerance;
  report.details.push_back({{"predicted_difference", predicted}, {"accepted_count", accepted}});
  return report;
}

}  // namespace fracvar
