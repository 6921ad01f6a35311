#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracvar/power_sum.hpp"
#include "fracvar/special_functions.hpp"
#include "support/oracles.hpp"

namespace fv = fracvar;
using fv::PowerSum;

namespace {

PowerSum random_power_sum(std::mt19937& rng, double min_exponent = -0.5) {
  std::uniform_int_distribution<int> n_terms(1, 4);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  std::uniform_real_distribution<double> expo(min_exponent, 5.0);
  std::vector<fv::PowerTerm> terms;
  const int k = n_terms(rng);
  for (int i = 0; i < k; ++i) terms.push_back({coef(rng), expo(rng)});
  return PowerSum(0.0, std::move(terms));
}

}  // namespace

TEST_CASE("eval basics") {
  CHECK(fv::eval(PowerSum::monomial(1.0, 1.0), 0.5) == 0.5);
  CHECK(fv::eval(PowerSum::zero(), 0.3) == 0.0);
  CHECK(fv::eval(PowerSum::zero(), 0.0) == 0.0);

  // Minimizer of the derivative-square problem at c = 2, alpha = 0.5.
  const double coef = 2.0 / (0.5 * fv::gamma(0.5));
  CHECK(fv::eval(PowerSum::monomial(coef, 0.5), 1.0) ==
        doctest::Approx(2.2567583341911).epsilon(1e-12));
  CHECK(coef == doctest::Approx(2.0 / (0.5 * oracle::gamma_by_quadrature(0.5))).epsilon(1e-12));

  CHECK_THROWS_AS(fv::eval(PowerSum::monomial(1.0, 1.0), -0.1), std::domain_error);
  CHECK_THROWS_AS(fv::eval(PowerSum::monomial(1.0, -0.5), 0.0), std::domain_error);
  CHECK(fv::eval(PowerSum::monomial(1.0, -0.5), 0.25) == doctest::Approx(2.0));
}

TEST_CASE("canonical form merges, sorts and drops zeros") {
  const double alpha = 0.37;
  const PowerSum p = PowerSum::monomial(1.0, alpha) + PowerSum::monomial(-1.0, alpha);
  CHECK(p.is_zero());

  const double c1 = 1.75;
  const PowerSum q =
      PowerSum(0.0, {{1.0, alpha + 1.0}, {-c1, alpha}}) + PowerSum::monomial(c1, alpha);
  REQUIRE(q.terms().size() == 1);
  CHECK(q.terms()[0].exponent == alpha + 1.0);
  CHECK(q.terms()[0].coef == 1.0);

  const PowerSum scaled = fv::scale(PowerSum::monomial(1.0, 1.0), 3.0);
  REQUIRE(scaled.terms().size() == 1);
  CHECK(scaled.terms()[0].coef == 3.0);

  // Exponents within the merge tolerance collapse into one term.
  const PowerSum merged = PowerSum(0.0, {{1.0, 2.0}, {2.5, 2.0 + 5e-13}});
  CHECK(merged.terms().size() == 1);
  CHECK(merged.terms()[0].coef == doctest::Approx(3.5));

  CHECK_THROWS_AS(PowerSum(0.0, {{1.0, -1.0}}), std::domain_error);
  CHECK_THROWS_AS(PowerSum::monomial(1.0, 0.5) + PowerSum::monomial(1.0, 0.5, 1.0),
                  std::invalid_argument);
}

TEST_CASE("fractional integral power rule") {
  // I^alpha 1 = x^alpha / (alpha Gamma(alpha)) for several orders.
  for (const double alpha : {0.25, 0.5, 0.75, 1.0, 1.6}) {
    const PowerSum p = fv::rl_integral(PowerSum::constant(1.0), alpha);
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].exponent == doctest::Approx(alpha).epsilon(1e-15));
    CHECK(p.terms()[0].coef == doctest::Approx(1.0 / (alpha * fv::gamma(alpha))).epsilon(1e-14));
  }

  // I^{1-alpha} of the catalog minimizer is K x.
  const double alpha = 0.5, K = 2.0;
  const PowerSum sol = PowerSum::monomial(K / (alpha * fv::gamma(alpha)), alpha);
  const PowerSum lin = fv::rl_integral(sol, 1.0 - alpha);
  REQUIRE(lin.terms().size() == 1);
  CHECK(lin.terms()[0].exponent == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lin.terms()[0].coef == doctest::Approx(K).epsilon(1e-14));

  // I^{0.5} x^{0.5} = Gamma(1.5)/Gamma(2) x, frozen and oracle-checked.
  const PowerSum q = fv::rl_integral(PowerSum::monomial(1.0, 0.5), 0.5);
  REQUIRE(q.terms().size() == 1);
  CHECK(q.terms()[0].coef == doctest::Approx(0.886226925452758).epsilon(1e-13));
  const auto f = [](double t) { return std::sqrt(t); };
  for (const double x : {0.25, 0.5, 1.0}) {
    CHECK(fv::eval(q, x) == doctest::Approx(oracle::rl_integral_at(f, 0.5, x)).epsilon(1e-11));
  }

  CHECK_THROWS_AS(fv::rl_integral(q, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fv::rl_integral(q, -0.5), std::invalid_argument);
}

TEST_CASE("fractional derivative power rule") {
  // D^alpha of the minimizer is the constant c.
  for (const double alpha : {0.3, 0.5, 0.7}) {
    const double c = 2.0;
    const PowerSum sol = PowerSum::monomial(c / (alpha * fv::gamma(alpha)), alpha);
    const PowerSum d = fv::rl_derivative(sol, alpha);
    REQUIRE(d.terms().size() == 1);
    CHECK(d.terms()[0].exponent == 0.0);
    CHECK(d.terms()[0].coef == doctest::Approx(c).epsilon(1e-14));
  }

  SUBCASE("order zero is the identity") {
    std::mt19937 rng(7);
    const PowerSum p = random_power_sum(rng);
    CHECK(fv::approx_equal(fv::rl_derivative(p, 0.0), p, 0.0));
  }

  SUBCASE("order one is the ordinary derivative") {
    const PowerSum d = fv::rl_derivative(PowerSum::monomial(1.0, 1.0), 1.0);
    REQUIRE(d.terms().size() == 1);
    CHECK(d.terms()[0].exponent == 0.0);
    CHECK(d.terms()[0].coef == 1.0);
    // Constants die through the reciprocal-Gamma pole.
    CHECK(fv::rl_derivative(PowerSum::constant(3.0), 1.0).is_zero());
  }

  SUBCASE("kernel-mode annihilation") {
    const double alpha = 0.6;
    CHECK(fv::rl_derivative(PowerSum::monomial(4.2, alpha - 1.0), alpha).is_zero());
  }

  SUBCASE("contract violations") {
    CHECK_THROWS_AS(fv::rl_derivative(PowerSum::monomial(1.0, 0.5), 1.5), std::out_of_range);
    CHECK_THROWS_AS(fv::rl_derivative(PowerSum::monomial(1.0, 0.5), -0.1), std::out_of_range);
    // Result exponent would be -1.4 < -1.
    CHECK_THROWS_AS(fv::rl_derivative(PowerSum::monomial(1.0, -0.5), 0.9), std::domain_error);
  }
}

TEST_CASE("definite integral") {
  CHECK(fv::definite_integral(PowerSum::constant(1.0), 0.0, 1.0) == 1.0);

  // (x - 1/2)^2 expanded.
  const PowerSum moment(0.0, {{0.25, 0.0}, {-1.0, 1.0}, {1.0, 2.0}});
  CHECK(fv::definite_integral(moment, 0.0, 1.0) == doctest::Approx(1.0 / 12).epsilon(1e-15));

  CHECK(fv::definite_integral(PowerSum::monomial(1.0, 1.0), 0.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(fv::definite_integral(moment, -0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(fv::definite_integral(moment, 1.0, 0.5), std::domain_error);
}

TEST_CASE("square") {
  const double alpha = 0.5;
  const PowerSum sq = fv::square(PowerSum::monomial(1.0, alpha));
  REQUIRE(sq.terms().size() == 1);
  CHECK(sq.terms()[0].exponent == doctest::Approx(2 * alpha));

  CHECK(fv::eval(fv::square(PowerSum::constant(-3.0)), 0.7) == 9.0);

  const double s = fv::gamma(alpha + 2.0);
  const PowerSum lin(0.0, {{-0.5 * s, 0.0}, {s, 1.0}});
  const PowerSum expanded = fv::square(lin);
  REQUIRE(expanded.terms().size() == 3);
  CHECK(expanded.terms()[0].coef == doctest::Approx(s * s * 0.25));
  CHECK(expanded.terms()[1].coef == doctest::Approx(-s * s));
  CHECK(expanded.terms()[2].coef == doctest::Approx(s * s));
}

TEST_CASE("semigroup property of fractional integrals") {
  std::mt19937 rng(20240518);
  std::uniform_real_distribution<double> order(1e-3, 2.0);
  for (int i = 0; i < 500; ++i) {
    const PowerSum p = random_power_sum(rng);
    const double a = order(rng), b = order(rng);
    const PowerSum composed = fv::rl_integral(fv::rl_integral(p, a), b);
    const PowerSum direct = fv::rl_integral(p, a + b);
    CHECK(fv::approx_equal(composed, direct, 1e-11));
  }
}

TEST_CASE("derivative is a left inverse of the integral") {
  std::mt19937 rng(20240519);
  std::uniform_real_distribution<double> order(1e-3, 1.0 - 1e-3);
  for (int i = 0; i < 500; ++i) {
    const PowerSum p = random_power_sum(rng);
    const double a = order(rng);
    CHECK(fv::approx_equal(fv::rl_derivative(fv::rl_integral(p, a), a), p, 1e-11));
  }
}

TEST_CASE("integral is a right inverse under a vanishing initial value") {
  std::mt19937 rng(20240520);
  std::uniform_real_distribution<double> order(1e-3, 1.0 - 1e-3);
  for (int i = 0; i < 500; ++i) {
    const PowerSum p = random_power_sum(rng, /*min_exponent=*/1e-3);
    const double a = order(rng);
    CHECK(fv::approx_equal(fv::rl_integral(fv::rl_derivative(p, a), a), p, 1e-11));
  }
}

TEST_CASE("derivative coefficients are continuous at order one") {
  std::mt19937 rng(20240521);
  for (int i = 0; i < 200; ++i) {
    const PowerSum p = random_power_sum(rng, /*min_exponent=*/0.2);
    const PowerSum near_one = fv::rl_derivative(p, 1.0 - 1e-6);
    const PowerSum classical = fv::rl_derivative(p, 1.0);
    REQUIRE(near_one.terms().size() == classical.terms().size());
    for (size_t t = 0; t < classical.terms().size(); ++t) {
      CHECK(std::abs(near_one.terms()[t].coef - classical.terms()[t].coef) <=
            1e-4 * std::abs(classical.terms()[t].coef));
    }
  }
  // A constant's image shrinks to nothing as the order reaches one.
  const PowerSum leftover = fv::rl_derivative(PowerSum::constant(1.0), 1.0 - 1e-6);
  REQUIRE(leftover.terms().size() == 1);
  CHECK(std::abs(leftover.terms()[0].coef) < 1e-5);
}

TEST_CASE("definite integral agrees with adaptive quadrature") {
  std::mt19937 rng(20240522);
  for (int i = 0; i < 50; ++i) {
    const PowerSum p = random_power_sum(rng, /*min_exponent=*/0.0);
    const double ref = oracle::integrate([&](double x) { return fv::eval(p, x); }, 0.0, 1.0);
    CHECK(fv::definite_integral(p, 0.0, 1.0) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("proportionality detection") {
  const PowerSum g(0.0, {{1.0, 0.0}, {1.0, 1.0}});
  CHECK(fv::proportionality_ratio(2.5 * g, g).value() == doctest::Approx(2.5));
  CHECK(fv::proportionality_ratio(PowerSum::zero(), g).value() == 0.0);
  CHECK(!fv::proportionality_ratio(g, PowerSum::zero()).has_value());
  CHECK(!fv::proportionality_ratio(PowerSum::monomial(1.0, 1.0), g).has_value());
  CHECK(!fv::proportionality_ratio(PowerSum(0.0, {{1.0, 0.0}, {2.0, 1.0}}), g).has_value());
}
