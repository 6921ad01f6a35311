#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracvar/harness.hpp"
#include "fracvar/leitmann.hpp"
#include "fracvar/special_functions.hpp"

namespace fv = fracvar;
using fv::Candidate;
using fv::Coefficient;
using fv::Grid;
using fv::PowerSum;
using fv::SampledFunction;
using fv::Transformation;

namespace {

const PowerSum kOnePlusX(0.0, {{1.0, 0.0}, {1.0, 1.0}});

std::vector<Candidate> perturbed_candidates(const Candidate& star, double alpha, int count) {
  std::vector<Candidate> out;
  out.push_back(star);
  for (int k = 1; k < count; ++k) {
    const auto family = fv::make_perturbation(alpha, k);
    out.push_back(fv::perturb(star, (0.1 * k) * family.eta));
  }
  return out;
}

}  // namespace

TEST_CASE("forward and inverse transforms are inverse to each other") {
  const double alpha = 0.5;
  const Transformation t = fv::p1_transformation(2.0, alpha);
  const Candidate y = fv::perturb(fv::p1_solution(2.0, alpha),
                                  0.3 * fv::make_perturbation(alpha, 2).eta);
  const Candidate round = fv::apply_inverse(t, fv::apply_forward(t, y));
  const Grid grid(0.0, 1.0, 101);
  const SampledFunction a = fv::candidate_samples(y, grid);
  const SampledFunction b = fv::candidate_samples(round, grid);
  CHECK((a.values - b.values).abs().maxCoeff() <= 1e-12);

  const Transformation t2 = fv::p2_transformation(kOnePlusX, 0.3, alpha);
  const Candidate y2 = fv::p2_solution(Coefficient(kOnePlusX), 0.3, alpha);
  const Candidate round2 = fv::apply_inverse(t2, fv::apply_forward(t2, y2));
  const SampledFunction a2 = fv::candidate_samples(y2, grid);
  const SampledFunction b2 = fv::candidate_samples(round2, grid);
  CHECK((a2.values - b2.values).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("exact differential identity for the derivative-square problem") {
  for (const double alpha : {0.25, 0.5, 0.75, 1.0}) {
    const double c = 2.0;
    const auto prob = fv::p1_problem(c, alpha);
    const Transformation t = fv::p1_transformation(c, alpha);
    for (int k = 1; k <= 3; ++k) {
      const Candidate y = fv::perturb(fv::p1_solution(c, alpha),
                                      0.25 * fv::make_perturbation(alpha, k).eta);
      const auto report = fv::verify_exact_differential(prob, t, y, 257);
      CHECK(report.pass);
      CHECK(report.max_gap <= 1e-11);
    }
  }
}

TEST_CASE("zero transformation has zero gap") {
  const auto prob = fv::p1_problem(1.0, 0.5);
  Transformation none;
  none.alpha = 0.5;
  none.shift = PowerSum::zero();
  none.gauge = fv::GaugeTerm{PowerSum::zero(), PowerSum::zero()};
  const auto report =
      fv::verify_exact_differential(prob, none, Candidate(fv::p1_solution(1.0, 0.5)), 129);
  CHECK(report.pass);
  CHECK(report.max_gap == 0.0);
}

TEST_CASE("exact differential identity for the gauged problem") {
  const double alpha = 0.5, xi = 0.3;
  SUBCASE("constant weight") {
    const auto prob = fv::p2_problem(Coefficient(PowerSum::constant(1.0)), xi, alpha);
    const Transformation t = fv::p2_transformation(PowerSum::constant(1.0), xi, alpha);
    CHECK(t.shift.has_value());  // closed power-sum form exists here
    const Candidate y = fv::p2_solution(Coefficient(PowerSum::constant(1.0)), xi, alpha);
    const auto report = fv::verify_exact_differential(prob, t, y, 257);
    CHECK(report.pass);
    CHECK(report.max_gap <= 1e-11);
  }
  SUBCASE("affine weight, perturbed candidates") {
    const auto prob = fv::p2_problem(Coefficient(kOnePlusX), xi, alpha);
    const Transformation t = fv::p2_transformation(kOnePlusX, xi, alpha);
    const Candidate star = fv::p2_solution(Coefficient(kOnePlusX), xi, alpha);
    for (const Candidate& y : perturbed_candidates(star, alpha, 4)) {
      const auto report = fv::verify_exact_differential(prob, t, y, 257);
      CHECK(report.pass);
      CHECK(report.max_gap <= 1e-11);
    }
  }
}

TEST_CASE("numeric exact-differential gap shrinks with the mesh") {
  const double alpha = 0.5, c = 2.0;
  const auto prob = fv::p1_problem(c, alpha);
  const Transformation t = fv::p1_transformation(c, alpha);
  const PowerSum y_exact =
      fv::p1_solution(c, alpha) + 0.3 * fv::make_perturbation(alpha, 2).eta;

  double previous = std::numeric_limits<double>::infinity();
  for (const int n : {513, 1025, 2049}) {
    const Candidate y = fv::sample(y_exact, Grid(0.0, 1.0, n));
    const auto report = fv::verify_exact_differential(prob, t, y, n);
    CHECK(report.pass);  // gap <= 2 h
    CHECK(report.max_gap < previous);
    previous = report.max_gap;
  }
}

TEST_CASE("constant difference across perturbed candidates") {
  const double alpha = 0.5, c = 2.0;
  const auto prob = fv::p1_problem(c, alpha);
  const Transformation t = fv::p1_transformation(c, alpha);
  const auto candidates = perturbed_candidates(fv::p1_solution(c, alpha), alpha, 5);

  const auto report = fv::verify_constant_difference(prob, t, candidates, 257);
  CHECK(report.pass);
  CHECK(report.max_gap <= 1e-11);
  // The difference equals K^2 = c^2 for this transformation.
  CHECK(fv::predicted_difference(prob, t) == doctest::Approx(c * c).epsilon(1e-14));
}

TEST_CASE("single candidate passes trivially") {
  const double alpha = 0.5, c = 1.0;
  const auto prob = fv::p1_problem(c, alpha);
  const Transformation t = fv::p1_transformation(c, alpha);
  const std::vector<Candidate> one = {Candidate(fv::p1_solution(c, alpha))};
  const auto report = fv::verify_constant_difference(prob, t, one, 129);
  CHECK(report.pass);
}

TEST_CASE("constraint violators are rejected with residuals") {
  const double alpha = 0.5, c = 2.0;
  const auto prob = fv::p1_problem(c, alpha);
  const Transformation t = fv::p1_transformation(c, alpha);
  std::vector<Candidate> candidates = {Candidate(fv::p1_solution(c, alpha)),
                                       Candidate(PowerSum::monomial(1.0, 1.0))};
  const auto report = fv::verify_constant_difference(prob, t, candidates, 129);
  CHECK(report.pass);  // the remaining candidate still matches the prediction
  bool saw_rejection = false;
  for (const auto& d : report.details) {
    if (d.contains("accepted") && !d["accepted"].get<bool>()) {
      saw_rejection = true;
      CHECK(d["constraint_residual"].get<double>() > 1.0);
    }
  }
  CHECK(saw_rejection);
}

TEST_CASE("constant difference for the gauged problem") {
  const double alpha = 0.5, xi = 0.3;
  for (const PowerSum& g : {PowerSum::constant(1.0), kOnePlusX, PowerSum::constant(2.0)}) {
    const auto prob = fv::p2_problem(Coefficient(g), xi, alpha);
    const Transformation t = fv::p2_transformation(g, xi, alpha);
    const auto candidates =
        perturbed_candidates(fv::p2_solution(Coefficient(g), xi, alpha), alpha, 5);
    const auto report = fv::verify_constant_difference(prob, t, candidates, 257);
    CHECK(report.pass);
    CHECK(report.max_gap <= 1e-11);
  }
}

TEST_CASE("control y2 component reuses the derivative-square gauge") {
  const double alpha = 0.4;
  // The second control state taken alone: same structure with K = 1, y_b = 1.
  const auto prob = fv::p1_problem(1.0, alpha);
  const Transformation t = fv::p3_y2_transformation(alpha);
  const auto candidates = perturbed_candidates(fv::p1_solution(1.0, alpha), alpha, 5);
  const auto report = fv::verify_constant_difference(prob, t, candidates, 257);
  CHECK(report.pass);
  CHECK(fv::predicted_difference(prob, t) == doctest::Approx(1.0).epsilon(1e-14));

  const auto diff_report = fv::verify_exact_differential(prob, t, candidates[2], 257);
  CHECK(diff_report.pass);
}

TEST_CASE("minimizer correspondence and order preservation") {
  const double alpha = 0.5, c = 2.0;
  const auto prob = fv::p1_problem(c, alpha);
  const Transformation t = fv::p1_transformation(c, alpha);
  const auto candidates = perturbed_candidates(fv::p1_solution(c, alpha), alpha, 6);

  std::vector<double> j_y, j_yt;
  for (const auto& y : candidates) {
    j_y.push_back(fv::evaluate(prob, y, 129));
    j_yt.push_back(fv::evaluate(prob, fv::apply_forward(t, y), 129));
  }
  const auto argmin_y = std::min_element(j_y.begin(), j_y.end()) - j_y.begin();
  const auto argmin_yt = std::min_element(j_yt.begin(), j_yt.end()) - j_yt.begin();
  CHECK(argmin_y == argmin_yt);
  CHECK(argmin_y == 0);  // the catalog solution is the minimizer

  for (size_t i = 0; i < j_y.size(); ++i) {
    for (size_t j = 0; j < j_y.size(); ++j) {
      CHECK((j_y[i] <= j_y[j]) == (j_yt[i] <= j_yt[j]));
    }
  }
}

TEST_CASE("numeric constant-difference spread shrinks with the mesh") {
  const double alpha = 0.5, c = 2.0;
  const auto prob = fv::p1_problem(c, alpha);
  const Transformation t = fv::p1_transformation(c, alpha);

  double previous = std::numeric_limits<double>::infinity();
  for (const int n : {513, 2049}) {
    const Grid grid(0.0, 1.0, n);
    std::vector<Candidate> candidates;
    for (int k = 1; k <= 4; ++k) {
      const PowerSum y =
          fv::p1_solution(c, alpha) + (0.1 * k) * fv::make_perturbation(alpha, k).eta;
      candidates.push_back(fv::sample(y, grid));
    }
    const auto report = fv::verify_constant_difference(prob, t, candidates, n);
    // all sampled candidates clear the discretization-aware gate
    int accepted = 0;
    for (const auto& d : report.details) {
      if (d.contains("accepted") && d["accepted"].get<bool>()) ++accepted;
    }
    CHECK(accepted == 4);
    CHECK(report.max_gap < previous);
    CHECK(report.pass);
    previous = report.max_gap;
  }
}
