#pragma once

#include <span>
#include <string>
#include <vector>

#include "fracvar/problems.hpp"
#include "fracvar/report.hpp"

namespace fracvar {

/// Two-term power sum eta_k = x^{alpha+k} - r x^alpha whose coefficient r is
/// chosen so that I^{1-alpha} eta_k (1) = 0: adding eps * eta_k to a candidate
/// never moves the terminal constraint.
struct PerturbationFamily {
  int k = 1;
  PowerSum eta;
};

PerturbationFamily make_perturbation(double alpha, int k);

inline constexpr double kDefaultEpsilons[] = {-0.5, -0.1, -0.01, 0.01, 0.1, 0.5};

/// Delta(k, eps) = J(y* + eps eta_k) - J(y*) over the family grid, with a
/// least-squares split of each k-slice into linear and quadratic parts of eps.
/// Passes when no Delta dips below -tol, every linear part stays within tol,
/// and every quadratic part is positive.
struct MinimalityScan {
  struct Cell {
    int k;
    double eps;
    double delta;
  };
  struct Fit {
    int k;
    double linear;
    double quadratic;
  };
  std::vector<Cell> cells;
  std::vector<Fit> fits;
  double base_value = 0.0;
  double min_delta = 0.0;
  double tolerance = 0.0;
  int grid_n = 0;
  bool pass = false;

  VerificationReport report() const;
};

MinimalityScan minimality_scan(const VariationalProblem& prob, const Candidate& y_star, int max_k,
                               std::span<const double> epsilons, int n, double tol = 1e-9);

/// Constraint-preserving control perturbations around (u1, u2) = (0, 1):
///  - u2 -> 1 + eps m with m = x - 1/2 (zero mean keeps both boundaries),
///    states re-derived exactly; cost increase must equal eps^2 int m^2.
///  - u1 -> eps m + delta with the offset delta root-found by bisection so
///    that int (exp(u1) + u1) = 1 keeps the y1 boundary; cost increase must
///    stay non-negative.
struct ControlScan {
  struct U2Cell {
    double eps;
    double delta_cost;
    double expected;      // eps^2 int m^2
    double boundary_gap;  // worst exact-path boundary residual
  };
  struct U1Cell {
    double eps;
    bool root_found;
    double offset;           // delta
    double delta_cost;       // int u1^2
    double constraint_gap;   // |int (exp(u1)+u1) - 1| at the root
  };
  std::vector<U2Cell> u2_cells;
  std::vector<U1Cell> u1_cells;
  double base_cost = 0.0;
  double tolerance = 0.0;
  int grid_n = 0;
  bool pass = false;

  VerificationReport report() const;
};

ControlScan control_minimality_scan(double alpha, std::span<const double> epsilons, int n,
                                    double tol = 1e-10);

/// Terminal value y*(1) = c/(alpha Gamma(alpha)) of the derivative-square
/// minimizer: zero exactly when c = 0, and then the problem is the trivial
/// one; nonzero c lands in the regime where two-sided derivative assumptions
/// break down.
struct BoundaryProbe {
  double c = 0.0;
  double alpha = 0.5;
  double y_at_1 = 0.0;
  bool is_zero = false;
};

BoundaryProbe terminal_value_probe(double c, double alpha);

/// One row per (alpha, n): exact and numeric functional values at the catalog
/// minimizer, the numeric-path constraint residual, and the per-alpha
/// convergence order of |J_num - J_exact| fitted across the n list.
struct SweepRow {
  double alpha = 0.0;
  int n = 0;
  double j_exact = 0.0;
  double j_numeric = 0.0;
  double constraint_residual = 0.0;
  double convergence_order = 0.0;
  std::string status = "ok";
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

SweepTable alpha_sweep(const ProblemConfig& config, std::span<const double> alphas,
                       std::span<const int> n_values);

}  // namespace fracvar
