#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "fracvar/fractional_numeric.hpp"
#include "fracvar/grid.hpp"
#include "fracvar/power_sum.hpp"

namespace fracvar {

/// Weight function g of the derivative-plus-integral Lagrangian: either an
/// exact power sum or nodal samples with an optional sampled derivative
/// (central differences fill in when the derivative is absent).
struct SampledCoefficient {
  SampledFunction values;
  std::optional<SampledFunction> derivative;
};
using Coefficient = std::variant<PowerSum, SampledCoefficient>;

/// The two variational problems of the catalog on [0, 1]:
///   kDerivativeSquare:        F = (D^alpha y)^2
///   kGaugedDerivativeSquare:  F = (D^alpha y * g + (I^{1-alpha} y + 1) g')^2
/// both under the terminal constraint I^{1-alpha} y (1) = y_b.
struct VariationalProblem {
  enum class Form { kDerivativeSquare, kGaugedDerivativeSquare };
  Form form = Form::kDerivativeSquare;
  double alpha = 0.5;  // (0, 1]; alpha = 1 degenerates to the classical problem
  double a = 0.0;
  double b = 1.0;
  double y_b = 0.0;
  std::optional<Coefficient> g;  // present iff kGaugedDerivativeSquare
};

VariationalProblem p1_problem(double c, double alpha);
VariationalProblem p2_problem(Coefficient g, double xi, double alpha);

/// Fixed two-state control problem: minimize int_0^1 (u1^2 + u2^2) subject to
/// D^alpha y1 = exp(u1) + u1 + u2, D^alpha y2 = u2,
/// I^{1-alpha} y1 (1) = 2, I^{1-alpha} y2 (1) = 1.
struct ControlProblem {
  double alpha = 0.5;
  double boundary_y1 = 2.0;
  double boundary_y2 = 1.0;
};

ControlProblem p3_problem(double alpha);

/// Candidate trajectory for the gauged problem, specified through
/// w = (I^{1-alpha} y + 1) * g (a power sum even when y itself is not one):
///   y = D^{1-alpha}(w/g - 1) + y_extra.
/// The minimizer has w = A x + C; perturbations ride in y_extra.
struct ProductFormCandidate {
  PowerSum w;
  PowerSum g;
  double alpha = 0.5;
  PowerSum y_extra;
};

using Candidate = std::variant<PowerSum, SampledFunction, ProductFormCandidate>;

/// I^{order} p extended to order = 0 as the identity (shows up at alpha = 1).
PowerSum frac_integral(const PowerSum& p, double order);

/// Functional value J(y). Exact power-sum algebra whenever the candidate (and
/// g) allow it, grid numerics at resolution n otherwise.
double evaluate(const VariationalProblem& prob, const Candidate& y, int n);

/// Forces the grid pipeline at resolution n even for exact candidates; used
/// to measure exact/numeric agreement.
double evaluate_numeric(const VariationalProblem& prob, const Candidate& y, int n);

/// |I^{1-alpha} y (b) - y_b|.
double check_constraint(const VariationalProblem& prob, const Candidate& y, int n);
double check_constraint_numeric(const VariationalProblem& prob, const Candidate& y, int n);

/// y + delta in whichever representation y uses.
Candidate perturb(const Candidate& y, const PowerSum& delta);

/// Nodal samples of the candidate's trajectory.
SampledFunction candidate_samples(const Candidate& y, const Grid& grid);

/// Global minimizer c/(alpha Gamma(alpha)) x^alpha of the derivative-square
/// problem; equals c x at alpha = 1.
PowerSum p1_solution(double c, double alpha);

/// Global minimizer D^{1-alpha}((A x + C)/g - 1) of the gauged problem with
/// A = g(1)(xi+1) - g(0), C = g(0). Returns a plain power sum when the inner
/// function reduces to one, a product-form candidate for other power-sum g,
/// and samples for sampled g.
Candidate p2_solution(const Coefficient& g, double xi, double alpha);

/// The (A, C) pair above.
std::pair<double, double> p2_line(const Coefficient& g, double xi);

struct ControlSolution {
  PowerSum u1, u2;
  PowerSum y1, y2;
};

/// (u1, u2) = (0, 1), (y1, y2) = (2, 1) x^alpha / (alpha Gamma(alpha)).
ControlSolution p3_solution(double alpha);

using Curve = std::variant<PowerSum, SampledFunction>;

struct ControlResiduals {
  double dynamics_y1 = 0.0;
  double dynamics_y2 = 0.0;
  double boundary_y1 = 0.0;
  double boundary_y2 = 0.0;
  double max() const;
};

/// Max-norm residuals of both dynamic equations over nodes x >= 0.1 plus the
/// two terminal-boundary residuals. Power-sum curves use exact operators.
ControlResiduals check_control_system(double alpha, const Curve& u1, const Curve& u2,
                                      const Curve& y1, const Curve& y2, int n);

/// int_0^1 (u1^2 + u2^2); exact for power-sum controls.
double control_cost(const Curve& u1, const Curve& u2, int n);

/// Direct-form Lagrangian samples D^alpha y * g + (I^{1-alpha} y + 1) g' on
/// the grid (before squaring). Cross-checks the product-rule identity the
/// product-form evaluation relies on; this is the one place a sampled g needs
/// its derivative.
SampledFunction p2_direct_form_root(const VariationalProblem& prob, const Candidate& y, int n);

/// Shared run description for the CLI and sweep table.
struct ProblemConfig {
  enum class Kind { kP1, kP2, kP3 };
  Kind kind = Kind::kP1;
  double alpha = 0.5;
  double c = 0.0;                 // P1 constraint value
  double xi = 0.0;                // P2 constraint value
  std::optional<Coefficient> g;   // P2 weight, defaults to 1
  int n = 1025;
};

VariationalProblem make_problem(const ProblemConfig& config);  // P1/P2 only
Candidate make_solution(const ProblemConfig& config);          // P1/P2 only

}  // namespace fracvar
