#pragma once

#include <cstdint>
#include <vector>

#include "cvent/gaussian.hpp"

namespace cvent::distance {

// Standard-form state on the separability boundary; z2_s solves the
// equality case of the Simon criterion for given (x_s, y_s, z1_s).
struct BoundaryPoint {
  double x_s = 0.5;
  double y_s = 0.5;
  double z1_s = 0.0;
  double z2_s = 0.0;
  int root_branch = 0;  // 0: z2 signed opposite to z1 (or +u when z1 = 0), 1: -u when z1 = 0

  StdFormVariance variance() const { return {x_s, y_s, z1_s, z2_s}; }
};

struct MinimizerConfig {
  int n_starts = 8;
  double simplex_tol = 1e-9;
  int max_iters = 2000;
  std::uint64_t seed = 42;

  void validate() const;
};

struct DistanceResult {
  double e_nats = 0.0;
  BoundaryPoint argmin;
  long n_evaluations = 0;
  bool converged = false;
};

std::vector<BoundaryPoint> boundary_z2(double x_s, double y_s, double z1_s);

double relative_entropy_gaussian(const StdFormVariance& rho_v, const StdFormVariance& sigma_v);

DistanceResult distance_to_separable(const StdFormVariance& rho_v, const MinimizerConfig& cfg = {});

}  // namespace cvent::distance
