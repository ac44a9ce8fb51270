#pragma once

#include <functional>
#include <vector>

namespace cvent::optim {

struct NelderMeadOptions {
  double f_tol = 1e-9;     // stop when the simplex objective spread falls below this
  double x_tol = 1e-10;    // and the simplex diameter below this (relative to |x| + 1)
  int max_iters = 2000;    // iterations per call, restarts included
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(const std::vector<double>&)>;

// Nelder-Mead simplex minimization with standard coefficients. Infinite
// objective values are allowed and treated as worse than any finite value.
// After convergence the simplex is rebuilt around the best vertex until a
// restart no longer improves the result.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const std::vector<double>& step,
                             const NelderMeadOptions& opt = {});

}  // namespace cvent::optim
