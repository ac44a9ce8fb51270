#include "cvent/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cvent/errors.hpp"
#include "cvent/nelder_mead.hpp"

namespace cvent::distance {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasibleNu = 0.5 + 1e-8;

}  // namespace

void MinimizerConfig::validate() const {
  if (n_starts < 4) throw DomainError("MinimizerConfig: n_starts must be >= 4");
  if (!(simplex_tol > 0.0 && simplex_tol <= 1e-8)) throw DomainError("MinimizerConfig: simplex_tol must lie in (0, 1e-8]");
  if (max_iters < 1) throw DomainError("MinimizerConfig: max_iters must be positive");
}

std::vector<BoundaryPoint> boundary_z2(double x_s, double y_s, double z1_s) {
  if (!(x_s >= 0.5 && y_s >= 0.5)) throw DomainError("boundary_z2: x_s and y_s must be >= 1/2");
  std::vector<BoundaryPoint> out;
  // 4 P u^2 + 2 |z1| u - (4 x y P - x^2 - y^2 + 1/4) = 0, P = x y - z1^2
  const double P = x_s * y_s - z1_s * z1_s;
  if (!(P > 0.0)) return out;
  const double a = 4.0 * P;
  const double b = 2.0 * std::abs(z1_s);
  const double c = -(4.0 * x_s * y_s * P - x_s * x_s - y_s * y_s + 0.25);
  // roots have product c/a, so at most one is nonnegative
  if (c > 1e-14) return out;
  double u = 0.0;
  if (c < 0.0) u = -2.0 * c / (b + std::sqrt(b * b - 4.0 * a * c));
  auto consider = [&](double z2, int branch) {
    BoundaryPoint p{x_s, y_s, z1_s, z2, branch};
    if (is_physical(p.variance())) out.push_back(p);
  };
  if (z1_s != 0.0) {
    consider(z1_s > 0.0 ? -u : u, 0);
  } else {
    consider(u, 0);
    if (u != 0.0) consider(-u, 1);
  }
  return out;
}

double relative_entropy_gaussian(const StdFormVariance& rho_v, const StdFormVariance& sigma_v) {
  if (!is_physical(rho_v)) throw DomainError("relative_entropy_gaussian: unphysical rho");
  const WilliamsonDecomposition w = williamson(sigma_v);
  const double nus[2] = {w.spectrum.nu_minus, w.spectrum.nu_plus};
  if (!(nus[0] > 0.5 + 1e-10))
    throw IllConditionedError("relative_entropy_gaussian: sigma has a (nearly) pure symplectic direction");
  Eigen::Vector4d g;
  g << std::log((nus[0] + 0.5) / (nus[0] - 0.5)), std::log((nus[0] + 0.5) / (nus[0] - 0.5)),
      std::log((nus[1] + 0.5) / (nus[1] - 0.5)), std::log((nus[1] + 0.5) / (nus[1] - 0.5));
  const Eigen::Matrix4d m_inv = w.transform.inverse();
  const Eigen::Matrix4d G = m_inv.transpose() * g.asDiagonal() * m_inv;
  const double log_norm = 0.5 * std::log(nus[0] * nus[0] - 0.25) + 0.5 * std::log(nus[1] * nus[1] - 0.25);
  const double value = -gaussian_entropy(rho_v) + log_norm + 0.5 * (G * rho_v.matrix()).trace();
  if (value < -1e-9) throw NumericalError("relative_entropy_gaussian: negative relative entropy");
  return std::max(value, 0.0);
}

DistanceResult distance_to_separable(const StdFormVariance& rho_v, const MinimizerConfig& cfg) {
  cfg.validate();
  if (!is_physical(rho_v)) throw DomainError("distance_to_separable: unphysical rho");

  DistanceResult result;
  const SimonResult simon = simon_separable(rho_v);
  if (simon.classification != Separability::Inseparable) {
    result.argmin = {rho_v.x, rho_v.y, rho_v.z1, rho_v.z2, 0};
    result.converged = true;
    return result;
  }

  BoundaryPoint best_point;
  auto objective = [&](const std::vector<double>& p, BoundaryPoint* arg) {
    if (!(p[0] >= 0.5 && p[1] >= 0.5)) return kInf;
    double best = kInf;
    for (const BoundaryPoint& bp : boundary_z2(p[0], p[1], p[2])) {
      if (symplectic_spectrum(bp.variance()).nu_minus <= kFeasibleNu) continue;
      const double v = relative_entropy_gaussian(rho_v, bp.variance());
      if (v < best) {
        best = v;
        if (arg) *arg = bp;
      }
    }
    return best;
  };

  std::vector<std::vector<double>> starts;
  const double fractions[4] = {0.0, 0.25, 0.5, 0.75};
  for (double t : fractions) starts.push_back({rho_v.x, rho_v.y, t * rho_v.z1});
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  for (int i = 4; i < cfg.n_starts; ++i) {
    std::vector<double> s = starts[i % 4];
    s[0] = std::max(0.5, s[0] * (1.0 + jitter(rng)));
    s[1] = std::max(0.5, s[1] * (1.0 + jitter(rng)));
    s[2] = s[2] * (1.0 + jitter(rng)) + 0.05 * jitter(rng) * rho_v.z1;
    starts.push_back(s);
  }

  optim::NelderMeadOptions opt;
  opt.f_tol = cfg.simplex_tol;
  opt.max_iters = cfg.max_iters;
  std::vector<double> finals;
  double best_f = kInf;
  std::vector<double> best_x;
  for (const auto& s0 : starts) {
    std::vector<double> step = {0.1 * (s0[0] - 0.5) + 0.05, 0.1 * (s0[1] - 0.5) + 0.05,
                                0.1 * std::abs(rho_v.z1) + 0.05};
    const optim::NelderMeadResult r = optim::nelder_mead(
        [&](const std::vector<double>& p) { return objective(p, nullptr); }, s0, step, opt);
    result.n_evaluations += r.evaluations;
    if (!std::isfinite(r.f)) continue;
    finals.push_back(r.f);
    if (r.f < best_f) {
      best_f = r.f;
      best_x = r.x;
    }
  }
  if (finals.empty()) throw NoFeasiblePointError("distance_to_separable: every start was infeasible");
  std::sort(finals.begin(), finals.end());
  objective(best_x, &best_point);
  result.e_nats = std::max(best_f, 0.0);
  result.argmin = best_point;
  result.converged = finals.size() >= 2 && finals[1] - finals[0] <= 10.0 * cfg.simplex_tol;
  return result;
}

}  // namespace cvent::distance
