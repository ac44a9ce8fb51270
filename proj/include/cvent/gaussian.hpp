#pragma once

#include <Eigen/Dense>

namespace cvent {

struct ChannelPair {
  double t1_mag = 1.0;
  double t2_mag = 1.0;
  double t1_phase = 0.0;
  double t2_phase = 0.0;

  static ChannelPair symmetric(double t_mag) { return {t_mag, t_mag, 0.0, 0.0}; }
  void validate() const;
};

struct TmsvParams {
  double zeta_mag = 0.0;
  double phi = 0.0;

  static TmsvParams from_q(double q_mag, double phi = 0.0);
  static TmsvParams from_mean_photons(double nbar, double phi = 0.0);
  double q_mag() const;
  double mean_photon_number() const;
  void validate() const;
};

// Wigner-exponent coefficients of a zero-mean two-mode Gaussian state.
struct TwoModeGaussianState {
  double c1 = 1.0;
  double c2 = 1.0;
  double s_mag = 0.0;
  double s_phase = 0.0;
  double norm_n = 1.0;
};

// Standard form (x1,p1,x2,p2 ordering); vacuum has x = y = 1/2.
struct StdFormVariance {
  double x = 0.5;
  double y = 0.5;
  double z1 = 0.0;
  double z2 = 0.0;

  Eigen::Matrix4d matrix() const;
  double det() const;
};

struct SymplecticSpectrum {
  double nu_plus = 0.5;
  double nu_minus = 0.5;
};

enum class Separability { Separable, Boundary, Inseparable };

struct SimonResult {
  Separability classification;
  double margin;
};

struct WilliamsonDecomposition {
  Eigen::Matrix4d transform;     // V = M diag(nu-, nu-, nu+, nu+) M^T
  SymplecticSpectrum spectrum;
};

// Symplectic form blockdiag([[0,1],[-1,0]], [[0,1],[-1,0]]).
Eigen::Matrix4d symplectic_form();

double transmission_from_length(double l, double l_abs);

TwoModeGaussianState propagate_tmsv(const TmsvParams& params, const ChannelPair& ch);

StdFormVariance to_std_form(const TwoModeGaussianState& state);

// Pure-loss channels acting on a standard-form state.
StdFormVariance apply_loss(const StdFormVariance& v, const ChannelPair& ch);

SymplecticSpectrum symplectic_spectrum(const StdFormVariance& v);

// The symplectic-eigenvalue test uses tol scaled by max(1, x*y).
bool is_physical(const StdFormVariance& v, double tol = 1e-12);

SimonResult simon_separable(const StdFormVariance& v);

// Entropy contribution of one symplectic eigenvalue, in nats.
double mode_entropy(double nu);

double gaussian_entropy(const StdFormVariance& v);

WilliamsonDecomposition williamson(const StdFormVariance& v);

}  // namespace cvent
