#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "cvent/gaussian.hpp"

namespace cvent::teleport {

struct TeleportScenario {
  TmsvParams tmsv;
  ChannelPair ch;
  double gain = 1.0;
  double phase_tilde = 0.0;
  // Replace sigma by its infinite-squeezing limit; requires the canonical gain.
  bool infinite_squeezing = false;

  void validate() const;
};

struct SmearingKernel {
  double sigma = 0.0;
  double sigma_inf = 0.0;
  double gain = 1.0;
};

struct SqueezedInput {
  double zeta0 = 0.0;
  std::complex<double> alpha0{};
};

struct FockInput {
  int n_photons = 0;
};

using InputState = std::variant<SqueezedInput, FockInput>;

// W(g) = norm/pi * exp(-a|g|^2 - b(g^2 + g*^2) + c* g + c g*)
struct GaussianWignerCoefficients {
  double norm = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::complex<double> c{};

  double operator()(std::complex<double> g) const;
  double integral() const;
};

// Closed-form output Wigner function for a Fock input.
struct FockOutputWigner {
  int n_photons = 0;
  double sigma = 0.0;
  double gain = 1.0;

  double operator()(std::complex<double> beta) const;
};

struct GridSpec {
  double half_width = 6.0;
  int n_points = 512;

  static GridSpec for_input(const InputState& input);
  double spacing() const { return 2.0 * half_width / (n_points - 1); }
};

// Samples on a square grid: value(i, j) = W(x_i + i x_j).
class WignerGrid {
 public:
  WignerGrid(const GridSpec& spec, std::vector<double> values);

  double half_width() const { return spec_.half_width; }
  int n_points() const { return spec_.n_points; }
  double spacing() const { return spec_.spacing(); }
  double coordinate(int i) const { return -spec_.half_width + i * spacing(); }
  double value(int i, int j) const { return values_[static_cast<std::size_t>(i) * spec_.n_points + j]; }
  const std::vector<double>& values() const { return values_; }
  double integral() const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

double canonical_gain(const ChannelPair& ch);

double sigma_from_state(const TwoModeGaussianState& state, double gain);

// Same sigma evaluated from the source and channel without cancellation at large squeezing.
double sigma_from_tmsv(const TmsvParams& tmsv, const ChannelPair& ch, double gain);

double sigma_infinite(const ChannelPair& ch);

SmearingKernel smearing_sigma(const TwoModeGaussianState& state, const ChannelPair& ch, double gain);

// Sigma actually applied by the scenario (honours infinite_squeezing).
double effective_sigma(const TeleportScenario& scn);

double fidelity_squeezed(double sigma, double gain, const SqueezedInput& inp);
double fidelity_fock(double sigma, double gain, int n_photons);

double fidelity_squeezed(const TeleportScenario& scn, const SqueezedInput& inp);
double fidelity_fock(const TeleportScenario& scn, const FockInput& inp);
double fidelity(const TeleportScenario& scn, const InputState& inp);

GaussianWignerCoefficients input_wigner_squeezed(const SqueezedInput& inp);
GaussianWignerCoefficients output_wigner_squeezed(double sigma, double gain, const SqueezedInput& inp);
GaussianWignerCoefficients output_wigner_squeezed(const TeleportScenario& scn, const SqueezedInput& inp);

// pi * integral of W1 W2 over phase space.
double gaussian_wigner_overlap(const GaussianWignerCoefficients& w1, const GaussianWignerCoefficients& w2);

double wigner_fock_input(int n_photons, std::complex<double> gamma);

FockOutputWigner output_wigner_fock_closed_form(const TeleportScenario& scn, const FockInput& inp);
WignerGrid output_wigner_fock(const TeleportScenario& scn, const FockInput& inp, const GridSpec& spec);

WignerGrid sample_input_wigner(const InputState& inp, const GridSpec& spec);

// Teleportation fidelity by spectral quadrature of the sampled input Wigner
// function against its Gaussian-smeared, gain-scaled image.
double numeric_fidelity_oracle(const WignerGrid& w_in, const TeleportScenario& scn);

struct GainOptimum {
  double gain = 0.0;
  double fidelity = 0.0;
};

GainOptimum optimize_gain(const TeleportScenario& scn, const InputState& inp);

struct SourcePlacement {
  double l1 = 0.0;
  double fidelity = 0.0;
};

// Infinite squeezing, T_i = exp(-l_i / l_abs), l2 = l12 - l1, canonical gain.
double source_position_fidelity(double l1, double l12, double l_abs, const InputState& inp);
SourcePlacement optimize_source_position(double l12, double l_abs, const InputState& inp);

// Largest l2 (T1 = 1, infinite squeezing) with fidelity >= threshold.
double teleport_range(const InputState& inp, double threshold, double l_abs);

}  // namespace cvent::teleport
