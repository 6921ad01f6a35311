#include "fracvar/harness.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "fracvar/special_functions.hpp"

namespace fracvar {

namespace {

// Composite Simpson on a smooth integrand; panels halved intervals. Plenty for
// the entire functions the control scan integrates.
double simpson(const std::function<double(double)>& f, double a, double b, int panels = 1000) {
  const double h = (b - a) / (2 * panels);
  double acc = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

PerturbationFamily make_perturbation(double alpha, int k) {
  if (k < 1) throw std::invalid_argument("make_perturbation: k must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::out_of_range("make_perturbation: alpha must lie in (0, 1]");
  }
  // I^{1-a} x^{a+k}(1) = G(a+k+1)/G(k+2); I^{1-a} x^a(1) = G(a+1).
  const double r = gamma(alpha + k + 1.0) / (gamma(k + 2.0) * gamma(alpha + 1.0));
  return {k, PowerSum(0.0, {{1.0, alpha + k}, {-r, alpha}})};
}

VerificationReport MinimalityScan::report() const {
  VerificationReport r;
  r.check = "minimality_scan";
  r.pass = pass;
  r.tolerance = tolerance;
  r.grid_n = grid_n;
  double worst = std::max(0.0, -min_delta);
  for (const auto& f : fits) worst = std::max(worst, std::abs(f.linear));
  r.max_gap = worst;
  for (const auto& c : cells) {
    r.details.push_back({{"k", c.k}, {"eps", c.eps}, {"delta", c.delta}});
  }
  for (const auto& f : fits) {
    r.details.push_back({{"k", f.k}, {"linear", f.linear}, {"quadratic", f.quadratic}});
  }
  return r;
}

MinimalityScan minimality_scan(const VariationalProblem& prob, const Candidate& y_star, int max_k,
                               std::span<const double> epsilons, int n, double tol) {
  if (max_k < 1) throw std::invalid_argument("minimality_scan: need max_k >= 1");
  if (epsilons.empty()) throw std::invalid_argument("minimality_scan: empty epsilon grid");

  MinimalityScan scan;
  scan.tolerance = tol;
  scan.grid_n = n;
  scan.base_value = evaluate(prob, y_star, n);
  scan.min_delta = std::numeric_limits<double>::infinity();
  scan.pass = true;

  for (int k = 1; k <= max_k; ++k) {
    const PerturbationFamily family = make_perturbation(prob.alpha, k);
    Eigen::MatrixXd design(epsilons.size(), 2);
    Eigen::VectorXd rhs(epsilons.size());
    for (size_t i = 0; i < epsilons.size(); ++i) {
      const double eps = epsilons[i];
      const Candidate shifted = perturb(y_star, eps * family.eta);
      const double delta = evaluate(prob, shifted, n) - scan.base_value;
      scan.cells.push_back({k, eps, delta});
      scan.min_delta = std::min(scan.min_delta, delta);
      design(i, 0) = eps;
      design(i, 1) = eps * eps;
      rhs(i) = delta;
    }
    const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
    scan.fits.push_back({k, fit[0], fit[1]});
    scan.pass = scan.pass && std::abs(fit[0]) <= tol && fit[1] > 0.0;
  }
  scan.pass = scan.pass && scan.min_delta >= -tol;
  return scan;
}

VerificationReport ControlScan::report() const {
  VerificationReport r;
  r.check = "control_minimality_scan";
  r.pass = pass;
  r.tolerance = tolerance;
  r.grid_n = grid_n;
  double worst = 0.0;
  for (const auto& c : u2_cells) {
    worst = std::max({worst, std::abs(c.delta_cost - c.expected), c.boundary_gap});
    r.details.push_back({{"family", "u2"},
                         {"eps", c.eps},
                         {"delta_cost", c.delta_cost},
                         {"expected", c.expected},
                         {"boundary_gap", c.boundary_gap}});
  }
  for (const auto& c : u1_cells) {
    if (c.root_found) worst = std::max({worst, -c.delta_cost, c.constraint_gap});
    r.details.push_back({{"family", "u1"},
                         {"eps", c.eps},
                         {"root_found", c.root_found},
                         {"offset", c.offset},
                         {"delta_cost", c.delta_cost},
                         {"constraint_gap", c.constraint_gap}});
  }
  r.max_gap = worst;
  return r;
}

ControlScan control_minimality_scan(double alpha, std::span<const double> epsilons, int n,
                                    double tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::out_of_range("control_minimality_scan: alpha must lie in (0, 1)");
  }
  ControlScan scan;
  scan.tolerance = tol;
  scan.grid_n = n;
  scan.pass = true;

  const ControlSolution star = p3_solution(alpha);
  scan.base_cost = control_cost(star.u1, star.u2, n);
  const PowerSum m(0.0, {{-0.5, 0.0}, {1.0, 1.0}});  // x - 1/2, zero mean
  const double int_m_sq = definite_integral(square(m), 0.0, 1.0);

  for (const double eps : epsilons) {
    // u2 family: states re-derived exactly, boundaries preserved by int m = 0.
    const PowerSum u2 = star.u2 + eps * m;
    const PowerSum y2 = rl_integral(u2, alpha);
    const PowerSum y1 = rl_integral(PowerSum::constant(1.0) + u2, alpha);
    const ControlResiduals res = check_control_system(alpha, star.u1, u2, y1, y2, n);
    const double cost = control_cost(star.u1, u2, n);
    ControlScan::U2Cell cell{eps, cost - scan.base_cost, eps * eps * int_m_sq,
                             std::max(res.boundary_y1, res.boundary_y2)};
    scan.pass = scan.pass && std::abs(cell.delta_cost - cell.expected) <= tol &&
                cell.boundary_gap <= tol;
    scan.u2_cells.push_back(cell);
  }

  for (const double eps : epsilons) {
    // u1 family: pick the offset so that int (exp(u1) + u1) stays at 1, which
    // keeps the y1 boundary; the map is strictly increasing in the offset.
    const auto constraint_value = [&](double offset) {
      return simpson(
          [&](double x) {
            const double u = eps * eval(m, x) + offset;
            return std::exp(u) + u;
          },
          0.0, 1.0);
    };
    double lo = -1.0, hi = 1.0;
    double flo = constraint_value(lo) - 1.0, fhi = constraint_value(hi) - 1.0;
    ControlScan::U1Cell cell{eps, false, 0.0, 0.0, 0.0};
    if (flo <= 0.0 && fhi >= 0.0) {
      for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (constraint_value(mid) - 1.0 <= 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      cell.root_found = true;
      cell.offset = 0.5 * (lo + hi);
      cell.constraint_gap = std::abs(constraint_value(cell.offset) - 1.0);
      const PowerSum u1 = eps * m + PowerSum::constant(cell.offset);
      cell.delta_cost = control_cost(u1, star.u2, n) - scan.base_cost;
      scan.pass = scan.pass && cell.delta_cost >= -1e-8 && cell.constraint_gap <= 1e-10;
    }
    scan.u1_cells.push_back(cell);
  }
  return scan;
}

BoundaryProbe terminal_value_probe(double c, double alpha) {
  const PowerSum y = p1_solution(c, alpha);
  const double value = eval(y, 1.0);
  return {c, alpha, value, value == 0.0};
}

SweepTable alpha_sweep(const ProblemConfig& config, std::span<const double> alphas,
                       std::span<const int> n_values) {
  SweepTable table;
  for (const double alpha : alphas) {
    ProblemConfig cell_config = config;
    cell_config.alpha = alpha;
    std::vector<std::pair<double, double>> level_errors;
    const size_t first_row = table.rows.size();

    for (const int n : n_values) {
      SweepRow row;
      row.alpha = alpha;
      row.n = n;
      row.convergence_order = std::numeric_limits<double>::quiet_NaN();
      try {
        if (config.kind == ProblemConfig::Kind::kP3) {
          const ControlSolution star = p3_solution(alpha);
          row.j_exact = control_cost(star.u1, star.u2, n);
          const Grid grid(0.0, 1.0, n);
          const Curve y1s{sample(star.y1, grid)}, y2s{sample(star.y2, grid)};
          row.j_numeric = control_cost(Curve{sample(star.u1, grid)},
                                       Curve{sample(star.u2, grid)}, n);
          const ControlResiduals res =
              check_control_system(alpha, star.u1, star.u2, y1s, y2s, n);
          row.constraint_residual = std::max(res.boundary_y1, res.boundary_y2);
        } else {
          const VariationalProblem prob = make_problem(cell_config);
          const Candidate y_star = make_solution(cell_config);
          row.j_exact = evaluate(prob, y_star, n);
          row.j_numeric = evaluate_numeric(prob, y_star, n);
          row.constraint_residual = check_constraint_numeric(prob, y_star, n);
        }
        level_errors.push_back({1.0 / (n - 1), std::abs(row.j_numeric - row.j_exact)});
      } catch (const std::exception& e) {
        row.status = std::string("failed: ") + e.what();
      }
      table.rows.push_back(row);
    }

    if (level_errors.size() >= 3) {
      double order;
      try {
        order = estimate_convergence_order(level_errors);
      } catch (const std::exception&) {
        order = std::numeric_limits<double>::quiet_NaN();
      }
      for (size_t i = first_row; i < table.rows.size(); ++i) {
        if (table.rows[i].status == "ok") table.rows[i].convergence_order = order;
      }
    }
  }
  return table;
}

}  // namespace fracvar
