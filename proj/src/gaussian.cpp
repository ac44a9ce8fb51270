#include "cvent/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "cvent/errors.hpp"

namespace cvent {

void ChannelPair::validate() const {
  if (!(t1_mag >= 0.0 && t1_mag <= 1.0 && t2_mag >= 0.0 && t2_mag <= 1.0))
    throw DomainError("ChannelPair: transmission magnitudes must lie in [0, 1]");
}

TmsvParams TmsvParams::from_q(double q_mag, double phi) {
  if (!(q_mag >= 0.0 && q_mag < 1.0)) throw DomainError("TmsvParams: q must lie in [0, 1)");
  return {std::atanh(q_mag), phi};
}

TmsvParams TmsvParams::from_mean_photons(double nbar, double phi) {
  if (!(nbar >= 0.0)) throw DomainError("TmsvParams: mean photon number must be nonnegative");
  return {std::asinh(std::sqrt(nbar)), phi};
}

double TmsvParams::q_mag() const { return std::tanh(zeta_mag); }

double TmsvParams::mean_photon_number() const {
  const double s = std::sinh(zeta_mag);
  return s * s;
}

void TmsvParams::validate() const {
  if (!(zeta_mag >= 0.0) || !std::isfinite(zeta_mag)) throw DomainError("TmsvParams: |zeta| must be finite and >= 0");
}

Eigen::Matrix4d StdFormVariance::matrix() const {
  Eigen::Matrix4d m;
  m << x, 0, z1, 0,
       0, x, 0, z2,
       z1, 0, y, 0,
       0, z2, 0, y;
  return m;
}

double StdFormVariance::det() const { return (x * y - z1 * z1) * (x * y - z2 * z2); }

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d om = Eigen::Matrix4d::Zero();
  om(0, 1) = 1.0;
  om(1, 0) = -1.0;
  om(2, 3) = 1.0;
  om(3, 2) = -1.0;
  return om;
}

double transmission_from_length(double l, double l_abs) {
  if (!(l >= 0.0)) throw DomainError("transmission_from_length: length must be >= 0");
  if (!(l_abs > 0.0)) throw DomainError("transmission_from_length: absorption length must be > 0");
  return std::exp(-l / l_abs);
}

TwoModeGaussianState propagate_tmsv(const TmsvParams& params, const ChannelPair& ch) {
  params.validate();
  ch.validate();
  const double t1 = ch.t1_mag * ch.t1_mag;
  const double t2 = ch.t2_mag * ch.t2_mag;
  // cosh(2z) - 1 = 2 sinh^2 z, exact for small z
  const double sh = std::sinh(params.zeta_mag);
  const double chm1 = 2.0 * sh * sh;
  const double sh2 = std::sinh(2.0 * params.zeta_mag);
  TwoModeGaussianState s;
  s.norm_n = 1.0 + (t1 + t2 - 2.0 * t1 * t2) * chm1;
  s.c1 = (1.0 + t1 * chm1) / s.norm_n;
  s.c2 = (1.0 + t2 * chm1) / s.norm_n;
  s.s_mag = ch.t1_mag * ch.t2_mag * sh2 / s.norm_n;
  s.s_phase = params.phi + ch.t1_phase + ch.t2_phase;
  return s;
}

StdFormVariance to_std_form(const TwoModeGaussianState& state) {
  const double z = 0.5 * state.norm_n * state.s_mag;
  return {0.5 * state.norm_n * state.c1, 0.5 * state.norm_n * state.c2, z, -z};
}

StdFormVariance apply_loss(const StdFormVariance& v, const ChannelPair& ch) {
  ch.validate();
  const double t1 = ch.t1_mag * ch.t1_mag;
  const double t2 = ch.t2_mag * ch.t2_mag;
  const double t12 = ch.t1_mag * ch.t2_mag;
  return {t1 * v.x + 0.5 * (1.0 - t1), t2 * v.y + 0.5 * (1.0 - t2), t12 * v.z1, t12 * v.z2};
}

SymplecticSpectrum symplectic_spectrum(const StdFormVariance& v) {
  const double delta = v.x * v.x + v.y * v.y + 2.0 * v.z1 * v.z2;
  const double det = v.det();
  double disc = delta * delta - 4.0 * det;
  if (disc < -1e-12 * std::max(1.0, delta * delta))
    throw NumericalError("symplectic_spectrum: negative discriminant");
  disc = std::max(disc, 0.0);
  const double plus2 = 0.5 * (delta + std::sqrt(disc));
  if (!(plus2 > 0.0)) throw NumericalError("symplectic_spectrum: degenerate variance matrix");
  // product form avoids cancellation for strongly squeezed states
  const double minus2 = std::max(det, 0.0) / plus2;
  return {std::sqrt(plus2), std::sqrt(minus2)};
}

bool is_physical(const StdFormVariance& v, double tol) {
  if (!(v.x >= 0.5 - tol && v.y >= 0.5 - tol)) return false;
  if (v.det() < 0.0) return false;
  try {
    // nu_minus carries a rounding error proportional to x*y
    return symplectic_spectrum(v).nu_minus >= 0.5 - tol * std::max(1.0, v.x * v.y);
  } catch (const NumericalError&) {
    return false;
  }
}

SimonResult simon_separable(const StdFormVariance& v) {
  if (!is_physical(v)) throw DomainError("simon_separable: unphysical variance matrix");
  const double margin =
      4.0 * (v.x * v.y - v.z1 * v.z1) * (v.x * v.y - v.z2 * v.z2) -
      (v.x * v.x + v.y * v.y + 2.0 * std::abs(v.z1 * v.z2) - 0.25);
  Separability c = Separability::Separable;
  if (std::abs(margin) < 1e-12)
    c = Separability::Boundary;
  else if (margin < 0.0)
    c = Separability::Inseparable;
  return {c, margin};
}

double mode_entropy(double nu) {
  const double a = nu + 0.5;
  const double b = nu - 0.5;
  double s = a * std::log(a);
  if (b > 0.0) s -= b * std::log(b);
  return s;
}

double gaussian_entropy(const StdFormVariance& v) {
  const SymplecticSpectrum sp = symplectic_spectrum(v);
  return mode_entropy(sp.nu_plus) + mode_entropy(sp.nu_minus);
}

namespace {

Eigen::Vector4d orthogonalized(Eigen::Vector4d u, const Eigen::Matrix4d& basis, int n_basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (int b = 0; b < n_basis; ++b) u -= basis.col(b) * basis.col(b).dot(u);
  return u;
}

// Unit vector built from the columns of proj, orthogonal to the first
// n_basis columns of basis; prefers the standard axis with largest overlap.
Eigen::Vector4d pick_direction(const Eigen::Matrix4d& proj, const Eigen::Matrix4d& basis, int n_basis) {
  Eigen::Vector4d best = Eigen::Vector4d::Zero();
  double best_norm = -1.0;
  for (int j = 0; j < 4; ++j) {
    const Eigen::Vector4d u = orthogonalized(proj.col(j), basis, n_basis);
    const double n = u.norm();
    if (n > best_norm + 1e-12) {
      best_norm = n;
      best = u;
    }
  }
  if (!(best_norm > 1e-8)) throw NumericalError("williamson: failed to isolate a symplectic plane");
  return best / best_norm;
}

}  // namespace

WilliamsonDecomposition williamson(const StdFormVariance& v) {
  const Eigen::Matrix4d V = v.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> ev(V);
  if (ev.info() != Eigen::Success || !(ev.eigenvalues().minCoeff() > 0.0))
    throw IllConditionedError("williamson: variance matrix is not positive definite");
  const Eigen::Vector4d w = ev.eigenvalues();
  const Eigen::Matrix4d U = ev.eigenvectors();
  const Eigen::Matrix4d v_half = U * w.cwiseSqrt().asDiagonal() * U.transpose();
  const Eigen::Matrix4d v_mhalf = U * w.cwiseSqrt().cwiseInverse().asDiagonal() * U.transpose();

  // A is antisymmetric with eigenvalues +-i/nu; -A^2 has 1/nu^2 on each plane.
  const Eigen::Matrix4d A = v_mhalf * symplectic_form() * v_mhalf;
  Eigen::Matrix4d negA2 = -(A * A);
  negA2 = 0.5 * (negA2 + negA2.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> ea(negA2);
  const Eigen::Vector4d lam = ea.eigenvalues();
  const Eigen::Matrix4d E = ea.eigenvectors();

  // projector onto the top eigenspace (largest 1/nu^2, i.e. nu-)
  Eigen::Matrix4d proj = Eigen::Matrix4d::Zero();
  for (int i = 3; i >= 0; --i)
    if (lam(3) - lam(i) <= 1e-9 * std::abs(lam(3))) proj += E.col(i) * E.col(i).transpose();

  Eigen::Matrix4d O = Eigen::Matrix4d::Zero();
  double nu[2];
  int n_basis = 0;
  for (int pair = 0; pair < 2; ++pair) {
    const Eigen::Vector4d u =
        pair == 0 ? pick_direction(proj, O, 0) : pick_direction(Eigen::Matrix4d::Identity(), O, n_basis);
    const Eigen::Vector4d au = A * u;
    const double a = au.norm();
    if (!(a > 0.0)) throw IllConditionedError("williamson: singular symplectic plane");
    O.col(n_basis++) = u;
    Eigen::Vector4d vv = orthogonalized(-au / a, O, n_basis);
    vv.normalize();
    O.col(n_basis++) = vv;
    nu[pair] = 1.0 / a;
  }

  Eigen::Vector4d d;
  d << nu[0], nu[0], nu[1], nu[1];
  WilliamsonDecomposition out;
  out.transform = v_half * O * d.cwiseSqrt().cwiseInverse().asDiagonal();
  out.spectrum = {std::max(nu[0], nu[1]), std::min(nu[0], nu[1])};
  return out;
}

}  // namespace cvent
