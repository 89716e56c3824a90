#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gkcs/quadrature.hpp"
#include "gkcs/specfun.hpp"

using namespace gkcs::quad;
using gkcs::specfun::gamma_fn;
using gkcs::specfun::log_gamma;

TEST_CASE("gauss_laguerre integrates monomials exactly up to degree 2q-1") {
  for (int q : {1, 2, 5, 16})
    for (double alpha : {0.0, 0.5}) {
      const QuadratureRule rule = gauss_laguerre(q, alpha);
      rule.validate();
      for (int k = 0; k <= 2 * q - 1; ++k) {
        double acc = 0.0;
        for (int i = 0; i < q; ++i)
          acc += rule.weights[i] * std::pow(rule.nodes[i], k);
        const double exact = std::exp(log_gamma(k + alpha + 1.0));
        CAPTURE(q);
        CAPTURE(alpha);
        CAPTURE(k);
        CHECK(acc == doctest::Approx(exact).epsilon(5e-13));
      }
    }
}

TEST_CASE("gauss_laguerre tail weights decay like the true measure") {
  // eigenvector-based weights plateau near 1e-32 absolute; the closed-form
  // weights must keep falling many orders further
  const QuadratureRule rule = gauss_laguerre(128, 0.0);
  CHECK(rule.weights.back() > 0.0);
  CHECK(rule.weights.back() < 1e-60);
  double acc = 0.0;
  for (int i = 0; i < 128; ++i)
    acc += rule.weights[i] *
           std::exp(40.0 * std::log(rule.nodes[i]) - log_gamma(41.0));
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauss_legendre symmetry and exactness") {
  const QuadratureRule rule = gauss_legendre(16);
  rule.validate();
  for (int i = 0; i < 8; ++i) {
    CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[15 - i]).epsilon(1e-14));
    CHECK(rule.weights[i] == doctest::Approx(rule.weights[15 - i]).epsilon(1e-14));
  }
  for (int k = 0; k <= 31; ++k) {
    double acc = 0.0;
    for (int i = 0; i < 16; ++i)
      acc += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(std::abs(acc - exact) < 1e-14);
  }
}

TEST_CASE("trapezoid endpoints take half weight") {
  const QuadratureRule rule = trapezoid(1.0, 3.0, 5);
  rule.validate();
  CHECK(rule.nodes.front() == 1.0);
  CHECK(rule.nodes.back() == 3.0);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rule.weights.front() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(trapezoid(1.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(trapezoid(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("validate rejects malformed rules") {
  QuadratureRule rule;
  rule.kind = RuleKind::trapezoid;
  rule.nodes = {0.0, 1.0};
  rule.weights = {0.5};
  CHECK_THROWS_AS(rule.validate(), std::invalid_argument);
  rule.weights = {0.5, -0.5};
  CHECK_THROWS_AS(rule.validate(), std::invalid_argument);
  rule.weights = {0.5, 0.5};
  rule.nodes = {1.0, 1.0};
  CHECK_THROWS_AS(rule.validate(), std::invalid_argument);
}

TEST_CASE("integrate_semiaxis on decaying integrands") {
  CHECK(integrate_semiaxis([](double x) { return std::exp(-x); }, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK(integrate_semiaxis([](double x) { return x * x * std::exp(-x); },
                           1e-12) == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(integrate_semiaxis([](double x) { return std::exp(-x * x); }, 1e-12) ==
        doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-11));
  // far-out bump exercises the doubling segments
  CHECK(integrate_semiaxis(
            [](double x) { return std::exp(-(x - 20.0) * (x - 20.0)); },
            1e-10) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-9));
}

TEST_CASE("integrate_semiaxis reports divergence instead of a number") {
  try {
    integrate_semiaxis([](double x) { return 1.0 / (1.0 + x); }, 1e-10);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.best_estimate() > 1.0);
    CHECK(std::isfinite(e.error_bound()));
  }
}

TEST_CASE("integrate_weighted_laguerre with rate rescaling") {
  // integral x^{1/2} e^{-2x} dx = Gamma(3/2) / 2^{3/2}
  const double got = integrate_weighted_laguerre([](double) { return 1.0; },
                                                 0.5, 2.0, 1e-12);
  CHECK(got == doctest::Approx(gamma_fn(1.5) / std::pow(2.0, 1.5)).epsilon(1e-12));
  // integral cos(x) e^{-x} dx = 1/2
  const double osc = integrate_weighted_laguerre(
      [](double x) { return std::cos(x); }, 0.0, 1.0, 1e-12);
  CHECK(osc == doctest::Approx(0.5).epsilon(1e-11));
}
