#include "cvent/specfun.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "cvent/errors.hpp"

namespace cvent::specfun {

void SeriesTolerance::validate() const {
  if (!(rel_eps > 0.0 && rel_eps < 1e-6)) throw DomainError("SeriesTolerance: rel_eps must lie in (0, 1e-6)");
  if (max_terms < 100) throw DomainError("SeriesTolerance: max_terms must be >= 100");
}

double hyp2f1(double a, double b, double c, double z, const SeriesTolerance& tol) {
  tol.validate();
  if (c <= 0.0 && c == std::floor(c)) throw DomainError("hyp2f1: c must not be zero or a negative integer");
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("hyp2f1: z must lie in [0, 1)");

  double term = 1.0;
  double sum = 1.0;
  int small_run = 0;
  for (int n = 0; n < tol.max_terms; ++n) {
    const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    term *= ratio;
    sum += term;
    if (!std::isfinite(sum)) throw ConvergenceError("hyp2f1: series overflow", sum, n + 1);
    // a term counts as small once it, together with its geometric tail, is below rel_eps
    const double r = std::abs(ratio);
    const double tail = r < 1.0 ? std::abs(term) / (1.0 - r) : std::abs(term) * 1e300;
    if (term == 0.0 || tail < tol.rel_eps * std::abs(sum)) {
      if (++small_run == 3) return sum;
    } else {
      small_run = 0;
    }
  }
  throw ConvergenceError("hyp2f1: no convergence within " + std::to_string(tol.max_terms) + " terms", sum,
                         tol.max_terms);
}

double laguerre(int n, double x) {
  if (n < 0) throw DomainError("laguerre: n must be nonnegative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre(int n, double x) {
  if (n < 0) throw DomainError("legendre: n must be nonnegative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

std::array<double, 21> make_table() {
  std::array<double, 21> t{};
  std::uint64_t f = 1;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) f *= static_cast<std::uint64_t>(n);
    t[n] = std::log(static_cast<double>(f));
  }
  return t;
}

}  // namespace

double log_factorial(int n) {
  static const std::array<double, 21> table = make_table();
  if (n < 0) throw DomainError("log_factorial: n must be nonnegative");
  if (n <= 20) return table[n];
  return std::lgamma(n + 1.0);
}

}  // namespace cvent::specfun
