#pragma once

namespace cvent::specfun {

struct SeriesTolerance {
  double rel_eps = 1e-14;
  int max_terms = 100000;

  // Throws DomainError unless 0 < rel_eps < 1e-6 and max_terms >= 100.
  void validate() const;
};

// Gauss hypergeometric 2F1(a, b; c; z) by direct series, 0 <= z < 1.
double hyp2f1(double a, double b, double c, double z, const SeriesTolerance& tol = {});

// Laguerre polynomial L_n(x), three-term recurrence.
double laguerre(int n, double x);

// Legendre polynomial P_n(x), Bonnet recurrence; any real x.
double legendre(int n, double x);

// ln(n!), exact table for n <= 20.
double log_factorial(int n);

}  // namespace cvent::specfun
