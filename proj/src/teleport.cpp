#include "cvent/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "cvent/errors.hpp"
#include "cvent/specfun.hpp"

namespace cvent::teleport {

using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double binom(int n, int k) {
  return std::exp(specfun::log_factorial(n) - specfun::log_factorial(k) - specfun::log_factorial(n - k));
}

void check_gain(double gain) {
  if (!(gain > 0.0) || !std::isfinite(gain)) throw DomainError("gain must be positive");
}

// Golden-section maximization of f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

// Scan then refine; x in [lo, hi].
template <class F>
std::pair<double, double> scan_max(F&& f, double lo, double hi, int n, double tol) {
  int best = 0;
  double best_f = -1.0;
  for (int i = 0; i <= n; ++i) {
    const double v = f(lo + (hi - lo) * i / n);
    if (v > best_f) {
      best_f = v;
      best = i;
    }
  }
  const double a = lo + (hi - lo) * std::max(best - 1, 0) / n;
  const double b = lo + (hi - lo) * std::min(best + 1, n) / n;
  auto refined = golden_max(f, a, b, tol);
  const double x_best = lo + (hi - lo) * best / n;
  if (best_f > refined.second) return {x_best, best_f};
  return refined;
}

}  // namespace

void TeleportScenario::validate() const {
  tmsv.validate();
  ch.validate();
  check_gain(gain);
}

double GaussianWignerCoefficients::operator()(cd g) const {
  const double e = -a * std::norm(g) - 2.0 * b * (g * g).real() + 2.0 * (std::conj(c) * g).real();
  return norm / kPi * std::exp(e);
}

double GaussianWignerCoefficients::integral() const {
  const double P = a + 2.0 * b;
  const double R = a - 2.0 * b;
  if (!(P > 0.0 && R > 0.0)) throw DomainError("Gaussian Wigner function is not normalizable");
  return norm / kPi * std::sqrt(kPi / P) * std::exp(c.real() * c.real() / P) * std::sqrt(kPi / R) *
         std::exp(c.imag() * c.imag() / R);
}

double FockOutputWigner::operator()(cd beta) const {
  const double p = 4.0 * sigma + 1.0;
  const double m = 4.0 * sigma - 1.0;
  const double w = 4.0 * std::norm(beta) / (gain * gain);
  // (4s-1)^N L_N(-w/((4s-1)(4s+1))) expanded so that 4s = 1 is regular
  double poly = 0.0;
  double wk = 1.0;
  for (int k = 0; k <= n_photons; ++k) {
    if (k > 0) wk *= w / (p * k);
    const double mpow = n_photons - k == 0 ? 1.0 : std::pow(m, n_photons - k);
    poly += binom(n_photons, k) * wk * mpow;
  }
  return 2.0 / (kPi * gain * gain) / std::pow(p, n_photons + 1) * std::exp(-2.0 * std::norm(beta) / (gain * gain * p)) *
         poly;
}

GridSpec GridSpec::for_input(const InputState& input) {
  GridSpec g;
  double extent = 0.0;
  if (const auto* s = std::get_if<SqueezedInput>(&input))
    extent = std::norm(s->alpha0) + std::exp(2.0 * std::abs(s->zeta0));
  else
    extent = std::get<FockInput>(input).n_photons;
  g.half_width = 6.0 + 2.0 * std::sqrt(extent);
  return g;
}

WignerGrid::WignerGrid(const GridSpec& spec, std::vector<double> values) : spec_(spec), values_(std::move(values)) {
  if (spec.n_points < 2 || !(spec.half_width > 0.0)) throw DomainError("WignerGrid: invalid grid specification");
  if (values_.size() != static_cast<std::size_t>(spec.n_points) * spec.n_points)
    throw DomainError("WignerGrid: value count does not match the grid");
}

double WignerGrid::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * spacing() * spacing();
}

double canonical_gain(const ChannelPair& ch) {
  ch.validate();
  if (!(ch.t1_mag > 0.0)) throw DomainError("canonical_gain: |T1| must be positive");
  return ch.t2_mag / ch.t1_mag;
}

double sigma_from_state(const TwoModeGaussianState& state, double gain) {
  check_gain(gain);
  return state.norm_n / (4.0 * gain * gain) * (state.c2 + gain * gain * state.c1 - 2.0 * gain * state.s_mag);
}

double sigma_from_tmsv(const TmsvParams& tmsv, const ChannelPair& ch, double gain) {
  check_gain(gain);
  tmsv.validate();
  ch.validate();
  const double t1 = ch.t1_mag * ch.t1_mag;
  const double t2 = ch.t2_mag * ch.t2_mag;
  const double dm = ch.t2_mag - gain * ch.t1_mag;
  const double dp = ch.t2_mag + gain * ch.t1_mag;
  const double z2 = 2.0 * tmsv.zeta_mag;
  // A cosh 2z - B sinh 2z with A - B, A + B as exact squares
  double hyp = dp * dp * std::exp(-z2);
  if (dm != 0.0) hyp += dm * dm * std::exp(z2);
  return ((1.0 - t2) + gain * gain * (1.0 - t1) + 0.5 * hyp) / (4.0 * gain * gain);
}

double sigma_infinite(const ChannelPair& ch) {
  ch.validate();
  if (!(ch.t2_mag > 0.0)) throw DomainError("sigma_infinite: |T2| must be positive");
  const double t1 = ch.t1_mag * ch.t1_mag;
  const double t2 = ch.t2_mag * ch.t2_mag;
  return (t1 + t2 - 2.0 * t1 * t2) / (4.0 * t2);
}

SmearingKernel smearing_sigma(const TwoModeGaussianState& state, const ChannelPair& ch, double gain) {
  SmearingKernel k;
  k.gain = gain;
  k.sigma = sigma_from_state(state, gain);
  k.sigma_inf = ch.t2_mag > 0.0 ? sigma_infinite(ch) : std::numeric_limits<double>::infinity();
  return k;
}

double effective_sigma(const TeleportScenario& scn) {
  scn.validate();
  if (scn.infinite_squeezing) {
    const double lam = canonical_gain(scn.ch);
    if (std::abs(scn.gain - lam) > 1e-9 * lam)
      throw DomainError("infinite squeezing requires the canonical gain |T2/T1|");
    return sigma_infinite(scn.ch);
  }
  return sigma_from_tmsv(scn.tmsv, scn.ch, scn.gain);
}

double fidelity_squeezed(double sigma, double gain, const SqueezedInput& inp) {
  check_gain(gain);
  if (!(sigma >= 0.0)) throw DomainError("fidelity_squeezed: sigma must be >= 0");
  const double l2 = gain * gain;
  const double f0 =
      2.0 / std::sqrt(1.0 + 2.0 * l2 + l2 * l2 * (1.0 + 16.0 * sigma * sigma) +
                      8.0 * l2 * (1.0 + l2) * sigma * std::cosh(2.0 * inp.zeta0));
  const double e2z = std::exp(2.0 * inp.zeta0);
  const double ar = inp.alpha0.real();
  const double ai = inp.alpha0.imag();
  // (a + a*)^2 = 4 ar^2, (a - a*)^2 = -4 ai^2
  const double bracket = 4.0 * ar * ar * e2z / (1.0 + l2 * (1.0 + 4.0 * e2z * sigma)) +
                         4.0 * ai * ai / ((1.0 + l2) * e2z + 4.0 * l2 * sigma);
  return f0 * std::exp(-0.5 * (1.0 - gain) * (1.0 - gain) * bracket);
}

double fidelity_fock(double sigma, double gain, int n_photons) {
  check_gain(gain);
  if (!(sigma >= 0.0)) throw DomainError("fidelity_fock: sigma must be >= 0");
  if (n_photons < 0) throw DomainError("fidelity_fock: photon number must be >= 0");
  const int N = n_photons;
  const double l2 = gain * gain;
  const double a = l2 * (4.0 * sigma + 1.0) + 1.0;
  const double b = l2 * (4.0 * sigma - 1.0) - 1.0;
  const double c = 8.0 * l2 / a;
  if (std::abs(b) >= 0.1 * std::abs(c))
    return 2.0 * std::pow(b, N) / std::pow(a, N + 1) * specfun::legendre(N, 1.0 + c / b);
  // b^N P_N(1 + c/b) = sum_j C(N,j)^2 (c/2)^j (b + c/2)^(N-j)
  double s = 0.0;
  for (int j = 0; j <= N; ++j) {
    const double bj = binom(N, j);
    const double tail = N - j == 0 ? 1.0 : std::pow(b + 0.5 * c, N - j);
    s += bj * bj * std::pow(0.5 * c, j) * tail;
  }
  return 2.0 * s / std::pow(a, N + 1);
}

double fidelity_squeezed(const TeleportScenario& scn, const SqueezedInput& inp) {
  return fidelity_squeezed(effective_sigma(scn), scn.gain, inp);
}

double fidelity_fock(const TeleportScenario& scn, const FockInput& inp) {
  return fidelity_fock(effective_sigma(scn), scn.gain, inp.n_photons);
}

double fidelity(const TeleportScenario& scn, const InputState& inp) {
  if (const auto* s = std::get_if<SqueezedInput>(&inp)) return fidelity_squeezed(scn, *s);
  return fidelity_fock(scn, std::get<FockInput>(inp));
}

GaussianWignerCoefficients input_wigner_squeezed(const SqueezedInput& inp) {
  const double ch = std::cosh(2.0 * inp.zeta0);
  const double sh = std::sinh(2.0 * inp.zeta0);
  const cd a0 = inp.alpha0;
  const double a0sq_re = 2.0 * (a0 * a0).real();
  GaussianWignerCoefficients w;
  w.norm = 2.0 * std::exp(-2.0 * std::norm(a0) * ch - a0sq_re * sh);
  w.a = 2.0 * ch;
  w.b = sh;
  w.c = 2.0 * (a0 * ch + std::conj(a0) * sh);
  return w;
}

GaussianWignerCoefficients output_wigner_squeezed(double sigma, double gain, const SqueezedInput& inp) {
  check_gain(gain);
  const double ch = std::cosh(2.0 * inp.zeta0);
  const double sh = std::sinh(2.0 * inp.zeta0);
  const double D = 1.0 + 8.0 * sigma * ch + 16.0 * sigma * sigma;
  const cd a0 = inp.alpha0;
  const double l2 = gain * gain;
  GaussianWignerCoefficients w;
  w.norm = 2.0 * std::exp(-(2.0 * std::norm(a0) * (ch + 4.0 * sigma) + 2.0 * (a0 * a0).real() * sh) / D) /
           (l2 * std::sqrt(D));
  w.a = 2.0 * (ch + 4.0 * sigma) / (l2 * D);
  w.b = sh / (l2 * D);
  w.c = 2.0 * (a0 * (ch + 4.0 * sigma) + std::conj(a0) * sh) / (gain * D);
  return w;
}

GaussianWignerCoefficients output_wigner_squeezed(const TeleportScenario& scn, const SqueezedInput& inp) {
  return output_wigner_squeezed(effective_sigma(scn), scn.gain, inp);
}

double gaussian_wigner_overlap(const GaussianWignerCoefficients& w1, const GaussianWignerCoefficients& w2) {
  const double P = w1.a + w2.a + 2.0 * (w1.b + w2.b);
  const double R = w1.a + w2.a - 2.0 * (w1.b + w2.b);
  if (!(P > 0.0 && R > 0.0)) throw DomainError("gaussian_wigner_overlap: divergent overlap");
  const cd c = w1.c + w2.c;
  return w1.norm * w2.norm / kPi * std::sqrt(kPi / P) * std::exp(c.real() * c.real() / P) * std::sqrt(kPi / R) *
         std::exp(c.imag() * c.imag() / R);
}

double wigner_fock_input(int n_photons, cd gamma) {
  const double r2 = std::norm(gamma);
  const double sign = n_photons % 2 == 0 ? 1.0 : -1.0;
  return sign * 2.0 / kPi * std::exp(-2.0 * r2) * specfun::laguerre(n_photons, 4.0 * r2);
}

namespace {

template <class W>
WignerGrid sample(const GridSpec& spec, W&& w) {
  std::vector<double> v(static_cast<std::size_t>(spec.n_points) * spec.n_points);
  const double h = spec.spacing();
  for (int i = 0; i < spec.n_points; ++i)
    for (int j = 0; j < spec.n_points; ++j)
      v[static_cast<std::size_t>(i) * spec.n_points + j] =
          w(cd(-spec.half_width + i * h, -spec.half_width + j * h));
  return WignerGrid(spec, std::move(v));
}

void check_normalization(const WignerGrid& g) {
  const double n = g.integral();
  if (std::abs(n - 1.0) > 1e-4)
    throw ResolutionError("Wigner grid normalization " + std::to_string(n) + " deviates from 1 by more than 1e-4");
}

}  // namespace

FockOutputWigner output_wigner_fock_closed_form(const TeleportScenario& scn, const FockInput& inp) {
  if (inp.n_photons < 0) throw DomainError("photon number must be >= 0");
  return {inp.n_photons, effective_sigma(scn), scn.gain};
}

WignerGrid output_wigner_fock(const TeleportScenario& scn, const FockInput& inp, const GridSpec& spec) {
  const FockOutputWigner w = output_wigner_fock_closed_form(scn, inp);
  const double feature = std::min(1.0, w.gain) / (4.0 * std::sqrt(inp.n_photons + 1.0));
  if (!(spec.spacing() < feature)) throw ResolutionError("output_wigner_fock: grid spacing too coarse");
  WignerGrid g = sample(spec, w);
  check_normalization(g);
  return g;
}

WignerGrid sample_input_wigner(const InputState& inp, const GridSpec& spec) {
  if (const auto* s = std::get_if<SqueezedInput>(&inp)) {
    if (!(spec.spacing() < std::exp(-std::abs(s->zeta0)) / 4.0))
      throw ResolutionError("sample_input_wigner: grid spacing too coarse for the squeezing");
    const GaussianWignerCoefficients w = input_wigner_squeezed(*s);
    WignerGrid g = sample(spec, w);
    check_normalization(g);
    return g;
  }
  const int n = std::get<FockInput>(inp).n_photons;
  if (n < 0) throw DomainError("photon number must be >= 0");
  if (!(spec.spacing() < 1.0 / (4.0 * std::sqrt(n + 1.0))))
    throw ResolutionError("sample_input_wigner: grid spacing too coarse for the photon number");
  WignerGrid g = sample(spec, [n](cd z) { return wigner_fock_input(n, z); });
  check_normalization(g);
  return g;
}

double numeric_fidelity_oracle(const WignerGrid& w_in, const TeleportScenario& scn) {
  const double sigma = effective_sigma(scn);
  const double lam = scn.gain;
  check_normalization(w_in);
  const int n = w_in.n_points();
  const double h = w_in.spacing();

  double w_max = 0.0;
  double edge_max = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = std::abs(w_in.value(i, j));
      w_max = std::max(w_max, v);
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) edge_max = std::max(edge_max, v);
    }
  if (edge_max > 1e-10 * w_max) throw ResolutionError("numeric_fidelity_oracle: grid does not contain the support");

  // Spectral form: pi int W_in W_out = (1/4pi) int conj(What(k)) What(lam k) exp(-sigma lam^2 |k|^2 / 2) d^2k
  const double k_max = kPi / (2.0 * h * std::max(1.0, lam));
  Eigen::VectorXd x(n), k(n);
  for (int i = 0; i < n; ++i) {
    x(i) = w_in.coordinate(i);
    k(i) = -k_max + 2.0 * k_max * i / (n - 1);
  }
  const double dk = 2.0 * k_max / (n - 1);
  Eigen::MatrixXcd W(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) W(i, j) = w_in.value(i, j);

  auto transform = [&](double scale) {
    Eigen::MatrixXcd E(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) E(a, b) = std::polar(h, -scale * k(a) * x(b));
    const Eigen::MatrixXcd EW = E * W;
    return Eigen::MatrixXcd(EW * E.transpose());
  };
  const Eigen::MatrixXcd W1 = transform(1.0);
  const Eigen::MatrixXcd W2 = lam == 1.0 ? W1 : transform(lam);

  double spec_max = 0.0;
  double spec_edge = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double v = std::abs(W2(a, b));
      spec_max = std::max(spec_max, v);
      if (a == 0 || b == 0 || a == n - 1 || b == n - 1) spec_edge = std::max(spec_edge, v);
    }
  if (spec_edge > 1e-10 * spec_max) throw ResolutionError("numeric_fidelity_oracle: grid spacing does not resolve the state");

  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double kk = k(a) * k(a) + k(b) * k(b);
      s += (std::conj(W1(a, b)) * W2(a, b)).real() * std::exp(-0.5 * sigma * lam * lam * kk);
    }
  return s * dk * dk / (4.0 * kPi);
}

GainOptimum optimize_gain(const TeleportScenario& scn, const InputState& inp) {
  if (scn.infinite_squeezing) throw DomainError("optimize_gain: requires finite squeezing");
  scn.tmsv.validate();
  scn.ch.validate();
  auto f_of_log = [&](double log_gain) {
    const double g = std::exp(log_gain);
    const double s = sigma_from_tmsv(scn.tmsv, scn.ch, g);
    if (const auto* sq = std::get_if<SqueezedInput>(&inp)) return fidelity_squeezed(s, g, *sq);
    return fidelity_fock(s, g, std::get<FockInput>(inp).n_photons);
  };
  const auto best = scan_max(f_of_log, std::log(0.01), std::log(10.0), 400, 1e-11);
  return {std::exp(best.first), best.second};
}

double source_position_fidelity(double l1, double l12, double l_abs, const InputState& inp) {
  if (!(l1 >= 0.0 && l1 <= l12)) throw DomainError("source_position_fidelity: l1 must lie in [0, l12]");
  TeleportScenario scn;
  scn.ch = {transmission_from_length(l1, l_abs), transmission_from_length(l12 - l1, l_abs), 0.0, 0.0};
  scn.gain = canonical_gain(scn.ch);
  scn.infinite_squeezing = true;
  return fidelity(scn, inp);
}

SourcePlacement optimize_source_position(double l12, double l_abs, const InputState& inp) {
  if (!(l12 >= 0.0)) throw DomainError("optimize_source_position: l12 must be >= 0");
  if (!(l_abs > 0.0)) throw DomainError("optimize_source_position: l_abs must be > 0");
  if (l12 == 0.0) return {0.0, source_position_fidelity(0.0, 0.0, l_abs, inp)};
  const auto best = scan_max([&](double l1) { return source_position_fidelity(l1, l12, l_abs, inp); }, 0.0, l12,
                             400, 1e-12 * std::max(l12, 1e-3));
  return {best.first, best.second};
}

double teleport_range(const InputState& inp, double threshold, double l_abs) {
  if (!(l_abs > 0.0)) throw DomainError("teleport_range: l_abs must be > 0");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw RangeError("teleport_range: threshold must lie strictly between 0 and 1");
  auto f = [&](double l2) { return source_position_fidelity(0.0, l2, l_abs, inp); };
  double lo = 0.0;
  double hi = 1e-3 * l_abs;
  while (f(hi) >= threshold) {
    lo = hi;
    hi *= 2.0;
    if (hi > 50.0 * l_abs) throw RangeError("teleport_range: fidelity stays above the threshold");
  }
  while (hi - lo > 1e-13 * hi) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= threshold ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cvent::teleport
