#pragma once

#include <optional>
#include <span>

#include "fracvar/problems.hpp"
#include "fracvar/report.hpp"

namespace fracvar {

/// Gauge term H(x, v) = v_coef(x) * v + x_part(x), affine in the transformed
/// state v = I^{1-alpha} ytilde. Every transformation in the catalog carries
/// such an H.
struct GaugeTerm {
  PowerSum v_coef;
  PowerSum x_part;

  double operator()(double x, double v) const { return eval(v_coef, x) * v + eval(x_part, x); }
};

/// Additive coordinate change y = ytilde + f together with its gauge term.
/// For the gauged (P2-style) problems the shift is bookkept on
/// w = (I^{1-alpha} y + 1) g, where it subtracts the power sum w_shift =
/// (I^{1-alpha} f) g; f itself is a power sum only when g is constant.
struct Transformation {
  double alpha = 0.5;
  std::optional<PowerSum> shift;    // f
  std::optional<PowerSum> g;        // set for gauged problems
  std::optional<PowerSum> w_shift;  // (I^{1-alpha} f) g, set together with g
  GaugeTerm gauge;
};

/// ytilde = y - f (exact in whichever representation applies).
Candidate apply_forward(const Transformation& t, const Candidate& y);
/// y = ytilde + f.
Candidate apply_inverse(const Transformation& t, const Candidate& ytilde);

/// Shift f = (c/(alpha Gamma(alpha))) x^alpha with gauge H = 2c v + c^2 x;
/// the derivative-square Lagrangian loses exactly d/dx H under it.
Transformation p1_transformation(double c, double alpha);

/// Shift determined by (I^{1-alpha} f) g = A x + (g(0) - 1) with
/// A = g(1)(xi+1) - g(0); gauge H = 2A g v + A(2 g + A x + g(0) - 1).
Transformation p2_transformation(const PowerSum& g, double xi, double alpha);

/// The second control state taken alone: shift I^alpha 1, gauge H = 2v + x.
Transformation p3_y2_transformation(double alpha);

struct EquivalenceCheckOptions {
  double exact_tol = 1e-11;
  /// Numeric-path tolerance is numeric_tol_scale * h.
  double numeric_tol_scale = 2.0;
  double constraint_tol = 1e-9;
  /// Numeric constant-difference tolerance is constant_diff_tol_scale * h.
  double constant_diff_tol_scale = 50.0;
  /// Gap of the differential check is measured over nodes with
  /// x >= a + interior_cut * (b - a), excluding the first and last node.
  double interior_cut = 0.1;
};

/// Checks F(x, y, D^a y) - F(x, yt, D^a yt) = d/dx H(x, I^{1-a} yt) for the
/// given candidate: max-norm gap over interior nodes, exact power-sum algebra
/// when the candidate allows it.
VerificationReport verify_exact_differential(const VariationalProblem& prob,
                                             const Transformation& t, const Candidate& y, int n,
                                             const EquivalenceCheckOptions& opts = {});

/// Evaluates J(y) - J(ytilde) for each constraint-satisfying candidate;
/// passes when all differences agree pairwise and match
/// H(b, I^{1-a} yt(b)) - H(a, 0). Violating candidates are rejected into the
/// report with their constraint residuals.
VerificationReport verify_constant_difference(const VariationalProblem& prob,
                                              const Transformation& t,
                                              std::span<const Candidate> candidates, int n,
                                              const EquivalenceCheckOptions& opts = {});

/// The constant H(b, vt(b)) - H(a, 0) the differences must equal.
double predicted_difference(const VariationalProblem& prob, const Transformation& t);

}  // namespace fracvar
