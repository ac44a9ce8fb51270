#include "cvent/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cvent/errors.hpp"

namespace cvent::optim {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

void sort_simplex(Simplex& s) {
  std::vector<std::size_t> idx(s.x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
  Simplex t;
  for (std::size_t i : idx) {
    t.x.push_back(s.x[i]);
    t.f.push_back(s.f[i]);
  }
  s = std::move(t);
}

bool small_enough(const Simplex& s, const NelderMeadOptions& opt) {
  if (!std::isfinite(s.f.back())) return false;
  if (s.f.back() - s.f.front() > opt.f_tol) return false;
  double diam = 0.0;
  double scale = 1.0;
  for (std::size_t i = 1; i < s.x.size(); ++i)
    for (std::size_t j = 0; j < s.x[0].size(); ++j) {
      diam = std::max(diam, std::abs(s.x[i][j] - s.x[0][j]));
      scale = std::max(scale, std::abs(s.x[0][j]));
    }
  return diam <= opt.x_tol * scale;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const std::vector<double>& step,
                             const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) throw DomainError("nelder_mead: dimension mismatch");
  constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, shrink = 0.5;

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<double> scale = step;
  double best_prev = std::numeric_limits<double>::infinity();
  std::vector<double> best_x = x0;
  double best_f = eval(x0);

  while (res.iterations < opt.max_iters) {
    Simplex s;
    s.x.push_back(best_x);
    s.f.push_back(best_f);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> v = best_x;
      v[i] += scale[i];
      s.x.push_back(v);
      s.f.push_back(eval(v));
    }
    sort_simplex(s);

    bool local_converged = false;
    while (res.iterations < opt.max_iters) {
      if (small_enough(s, opt)) {
        local_converged = true;
        break;
      }
      ++res.iterations;
      std::vector<double> c(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[j] += s.x[i][j] / n;
      auto along = [&](double t) {
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = c[j] + t * (s.x[n][j] - c[j]);
        return v;
      };
      const std::vector<double> xr = along(-alpha);
      const double fr = eval(xr);
      if (fr < s.f[0]) {
        const std::vector<double> xe = along(-alpha * gamma);
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[n] = xe;
          s.f[n] = fe;
        } else {
          s.x[n] = xr;
          s.f[n] = fr;
        }
      } else if (fr < s.f[n - 1]) {
        s.x[n] = xr;
        s.f[n] = fr;
      } else {
        const bool outside = fr < s.f[n];
        const std::vector<double> xc = outside ? along(-alpha * rho) : along(rho);
        const double fc = eval(xc);
        if (fc < (outside ? fr : s.f[n])) {
          s.x[n] = xc;
          s.f[n] = fc;
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) s.x[i][j] = s.x[0][j] + shrink * (s.x[i][j] - s.x[0][j]);
            s.f[i] = eval(s.x[i]);
          }
        }
      }
      sort_simplex(s);
    }

    best_x = s.x[0];
    best_f = s.f[0];
    if (!local_converged) break;
    // restart: accept once the rebuilt simplex no longer improves
    if (best_prev - best_f <= opt.f_tol) {
      res.converged = true;
      break;
    }
    best_prev = best_f;
    for (std::size_t i = 0; i < n; ++i) {
      double spread = 0.0;
      for (std::size_t k = 1; k <= n; ++k) spread = std::max(spread, std::abs(s.x[k][i] - s.x[0][i]));
      scale[i] = std::max(10.0 * spread, 1e-3 * std::max(std::abs(best_x[i]), 1e-3));
    }
  }
  res.x = best_x;
  res.f = best_f;
  return res;
}

}  // namespace cvent::optim
