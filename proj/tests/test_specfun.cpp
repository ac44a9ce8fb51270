#include <cmath>
#include <cstdint>

#include "cvent/errors.hpp"
#include "cvent/specfun.hpp"
#include "doctest.h"

using namespace cvent;
using namespace cvent::specfun;

TEST_SUITE("specfun") {
  TEST_CASE("hyp2f1 examples") {
    CHECK(hyp2f1(2.0, 3.5, 1.0, 0.0) == 1.0);
    CHECK(hyp2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-14));
    CHECK(hyp2f1(1.0, 2.0, 1.0, 0.3) == doctest::Approx(1.0 / 0.49).epsilon(1e-14));
  }

  TEST_CASE("hyp2f1 closed-form identities") {
    for (double z : {0.1, 0.5, 0.9, 0.99}) {
      CHECK(hyp2f1(1.0, 5.0, 1.0, z) == doctest::Approx(std::pow(1.0 - z, -5.0)).epsilon(1e-12));
      CHECK(hyp2f1(1.0, 1.0, 2.0, z) == doctest::Approx(-std::log1p(-z) / z).epsilon(1e-12));
    }
    // terminating series: 2F1(-2, b; c; z) is a quadratic
    const double b = 1.5, c = 2.5, z = 0.4;
    CHECK(hyp2f1(-2.0, b, c, z) ==
          doctest::Approx(1.0 - 2.0 * b / c * z + b * (b + 1) / (c * (c + 1)) * z * z).epsilon(1e-14));
  }

  TEST_CASE("hyp2f1 matches long brute-force summation") {
    const double grid[] = {0.5, 2.0, 4.5, 8.0};
    for (double a : grid)
      for (double b : grid)
        for (double c : grid)
          for (double z : {0.0, 0.3, 0.7, 0.95}) {
            const SeriesTolerance tol;
            double term = 1.0, sum = 1.0;
            for (long n = 0; n < 10L * tol.max_terms && term > 1e-300; ++n) {
              term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
              sum += term;
            }
            CHECK(std::abs(hyp2f1(a, b, c, z) - sum) <= 10.0 * tol.rel_eps * std::abs(sum));
          }
  }

  TEST_CASE("hyp2f1 errors") {
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -3.0, 0.5), DomainError);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 1.0, -0.1), DomainError);
    SeriesTolerance tight{1e-14, 100};
    try {
      hyp2f1(50.0, 50.0, 1.0, 0.99, tight);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(e.terms() == 100);
      CHECK(e.partial_sum() > 1.0);
    }
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 1.0, 0.5, SeriesTolerance{1e-3, 1000}), DomainError);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 1.0, 0.5, SeriesTolerance{1e-14, 10}), DomainError);
  }

  TEST_CASE("laguerre") {
    CHECK(laguerre(0, 7.3) == 1.0);
    CHECK(laguerre(1, 4.0) == doctest::Approx(-3.0));
    CHECK(laguerre(2, 2.0) == doctest::Approx(-1.0));
    // explicit sum for moderate arguments
    for (int n = 0; n <= 12; ++n)
      for (double x : {-3.0, 0.0, 0.7, 5.0}) {
        double s = 0.0, mag = 0.0;
        for (int k = 0; k <= n; ++k) {
          const double t = std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k) - log_factorial(k)) *
                           std::pow(-x, k);
          s += t;
          mag += std::abs(t);
        }
        CHECK(std::abs(laguerre(n, x) - s) <= 1e-13 * mag);
      }
    for (int n = 1; n < 50; ++n)
      for (double x : {-100.0, -7.5, 0.0, 3.3, 42.0, 100.0}) {
        const double res = (n + 1) * laguerre(n + 1, x) - (2 * n + 1 - x) * laguerre(n, x) + n * laguerre(n - 1, x);
        CHECK(std::abs(res) < 1e-10 * std::max(1.0, std::abs(laguerre(n, x))));
      }
  }

  TEST_CASE("legendre") {
    CHECK(legendre(0, 2.5) == 1.0);
    CHECK(legendre(1, -0.4) == doctest::Approx(-0.4));
    CHECK(legendre(2, 0.5) == doctest::Approx(-0.125));
    CHECK(legendre(3, 2.0) == doctest::Approx(0.5 * (5.0 * 8.0 - 3.0 * 2.0)));
    for (int n = 0; n <= 50; ++n) CHECK(std::abs(legendre(n, 1.0) - 1.0) < 1e-12);
  }

  TEST_CASE("log_factorial") {
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
    CHECK(log_factorial(20) == doctest::Approx(42.335616460753485).epsilon(1e-15));
    std::uint64_t f = 1;
    for (int n = 0; n <= 20; ++n) {
      if (n > 0) f *= n;
      CHECK(std::abs(std::exp(log_factorial(n)) / static_cast<double>(f) - 1.0) < 1e-12);
    }
    for (int n = 0; n < 300; ++n) CHECK(log_factorial(n + 1) >= log_factorial(n));
    CHECK_THROWS_AS(log_factorial(-1), DomainError);
  }
}
