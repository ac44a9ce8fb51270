#include <cmath>

#include "cvent/errors.hpp"
#include "cvent/fock.hpp"
#include "cvent/gaussian.hpp"
#include "doctest.h"

using namespace cvent;

namespace {

double max_abs(const Eigen::Matrix4d& m) { return m.cwiseAbs().maxCoeff(); }

StdFormVariance lossy(double q, double t1, double t2) {
  return to_std_form(propagate_tmsv(TmsvParams::from_q(q), {t1, t2, 0.0, 0.0}));
}

}  // namespace

TEST_SUITE("gaussian-core") {
  TEST_CASE("transmission_from_length") {
    CHECK(transmission_from_length(0.0, 1.0) == 1.0);
    CHECK(transmission_from_length(1.0, 1.0) == doctest::Approx(0.36787944117144233));
    CHECK(transmission_from_length(0.1, 1.0) == doctest::Approx(0.9048374180359595));
    CHECK_THROWS_AS(transmission_from_length(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(transmission_from_length(0.1, 0.0), DomainError);
  }

  TEST_CASE("TmsvParams derived quantities agree") {
    for (double z : {0.0, 0.3, 1.0, 2.5}) {
      const TmsvParams p{z, 0.0};
      const double q = p.q_mag();
      CHECK(std::abs(p.mean_photon_number() - q * q / (1.0 - q * q)) < 1e-12 * std::max(1.0, p.mean_photon_number()));
    }
    CHECK(TmsvParams::from_mean_photons(1.0).q_mag() == doctest::Approx(std::sqrt(0.5)));
    CHECK_THROWS_AS(TmsvParams::from_q(1.0), DomainError);
  }

  TEST_CASE("propagate_tmsv examples") {
    const auto vac = propagate_tmsv({0.0, 0.0}, ChannelPair::symmetric(0.4));
    CHECK(vac.c1 == 1.0);
    CHECK(vac.c2 == 1.0);
    CHECK(vac.s_mag == 0.0);
    CHECK(vac.norm_n == 1.0);
    const double z = 0.8;
    const auto lossless = propagate_tmsv({z, 0.0}, ChannelPair::symmetric(1.0));
    CHECK(lossless.norm_n == doctest::Approx(1.0));
    CHECK(lossless.c1 == doctest::Approx(std::cosh(2 * z)));
    CHECK(lossless.s_mag == doctest::Approx(std::sinh(2 * z)));
    const auto absorbed = propagate_tmsv({z, 0.0}, ChannelPair::symmetric(0.0));
    CHECK(absorbed.c1 == 1.0);
    CHECK(absorbed.s_mag == 0.0);
    const auto phased = propagate_tmsv({z, 0.3}, {0.9, 0.8, 0.1, -0.05});
    CHECK(phased.s_phase == doctest::Approx(0.35));
  }

  TEST_CASE("Wigner coefficient relation C1 C2 - S^2 = 1/N") {
    for (double z : {0.1, 0.7, 1.5, 3.0})
      for (double t1 : {0.0, 0.3, 0.9, 1.0})
        for (double t2 : {0.2, 0.6, 1.0}) {
          const auto s = propagate_tmsv({z, 0.0}, {t1, t2, 0.0, 0.0});
          CHECK(std::abs(s.c1 * s.c2 - s.s_mag * s.s_mag - 1.0 / s.norm_n) < 1e-10 * s.c1 * s.c2);
          CHECK(s.norm_n >= 1.0);
        }
  }

  TEST_CASE("to_std_form examples") {
    const auto v0 = to_std_form(propagate_tmsv({0.0, 0.0}, ChannelPair::symmetric(1.0)));
    CHECK(v0.x == 0.5);
    CHECK(v0.z1 == 0.0);
    const double z = 1.2;
    const auto v = to_std_form(propagate_tmsv({z, 0.0}, ChannelPair::symmetric(1.0)));
    CHECK(v.x == doctest::Approx(std::cosh(2 * z) / 2));
    CHECK(v.y == doctest::Approx(std::cosh(2 * z) / 2));
    CHECK(v.z1 == doctest::Approx(std::sinh(2 * z) / 2));
    CHECK(v.z2 == doctest::Approx(-std::sinh(2 * z) / 2));
    const auto half = to_std_form(propagate_tmsv({1.0, 0.0}, {1.0, 0.0, 0.0, 0.0}));
    CHECK(half.x == doctest::Approx(std::cosh(2.0) / 2));  // reduced TMSV is thermal
    CHECK(half.y == doctest::Approx(0.5));
    CHECK(half.z1 == 0.0);
    CHECK(half.z2 == 0.0);
  }

  TEST_CASE("loss composes multiplicatively") {
    double worst = 0.0;
    for (double z : {0.2, 0.6, 1.0, 1.7, 2.5})
      for (double ta : {0.1, 0.35, 0.6, 0.85, 1.0})
        for (double tb : {0.05, 0.3, 0.55, 0.8, 0.97}) {
          const TmsvParams p{z, 0.0};
          const auto once = to_std_form(propagate_tmsv(p, {ta * tb, tb, 0.0, 0.0}));
          const auto twice = apply_loss(to_std_form(propagate_tmsv(p, {ta, 1.0, 0.0, 0.0})), {tb, tb, 0.0, 0.0});
          worst = std::max(worst, max_abs(once.matrix() - twice.matrix()) / std::max(1.0, once.x));
        }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("uncertainty: det V >= 1/16 with equality for pure states") {
    for (double z : {0.0, 0.4, 1.1, 2.0})
      for (double t : {0.0, 0.5, 0.9, 1.0}) {
        const auto v = lossy(std::tanh(z), t, 1.0);
        CHECK(v.det() >= 1.0 / 16.0 - 1e-12 * v.x * v.x * v.y * v.y);
        if (t == 1.0 || z == 0.0) CHECK(std::abs(v.det() - 1.0 / 16.0) < 1e-10 * std::max(1.0, v.x * v.x * v.y * v.y));
        if (t < 1.0 && z > 0.0) CHECK(v.det() > 1.0 / 16.0);
      }
  }

  TEST_CASE("symplectic_spectrum") {
    auto sp = symplectic_spectrum({0.5, 0.5, 0.0, 0.0});
    CHECK(sp.nu_plus == doctest::Approx(0.5));
    CHECK(sp.nu_minus == doctest::Approx(0.5));
    for (double z : {0.5, 2.0, 4.0}) {
      sp = symplectic_spectrum(lossy(std::tanh(z), 1.0, 1.0));
      CHECK(std::abs(sp.nu_minus - 0.5) < 1e-9);
      CHECK(std::abs(sp.nu_plus - 0.5) < 1e-9);
    }
    sp = symplectic_spectrum({1.5, 1.5, 0.0, 0.0});
    CHECK(sp.nu_plus == doctest::Approx(1.5));
    CHECK(sp.nu_minus == doctest::Approx(1.5));
    const StdFormVariance v = lossy(0.7071, 0.9, 0.6);
    sp = symplectic_spectrum(v);
    CHECK(sp.nu_plus * sp.nu_minus == doctest::Approx(std::sqrt(v.det())).epsilon(1e-10));
    CHECK(sp.nu_minus >= 0.5 - 1e-12);
  }

  TEST_CASE("simon_separable") {
    auto r = simon_separable({0.5, 0.5, 0.0, 0.0});
    CHECK(r.classification == Separability::Boundary);
    CHECK(std::abs(r.margin) < 1e-15);
    const auto tmsv1 = lossy(std::tanh(1.0), 1.0, 1.0);
    r = simon_separable(tmsv1);
    CHECK(r.classification == Separability::Inseparable);
    CHECK(r.margin == doctest::Approx(0.25 - (std::cosh(4.0) / 2 - 0.25)));
    r = simon_separable(lossy(std::tanh(1.0), 0.0, 0.0));
    CHECK(r.classification == Separability::Boundary);
    r = simon_separable({1.5, 1.5, 0.0, 0.0});
    CHECK(r.classification == Separability::Separable);
    CHECK_THROWS_AS(simon_separable({0.4, 0.5, 0.0, 0.0}), DomainError);
  }

  TEST_CASE("simon margin negative whenever squeezing and both transmissions are nonzero") {
    int count = 0;
    for (int i = 1; i <= 10; ++i)
      for (int j = 1; j <= 10; ++j)
        for (int k = 1; k <= 10; ++k) {
          const double z = 0.3 * i;
          const StdFormVariance v = to_std_form(propagate_tmsv({z, 0.0}, {0.1 * j, 0.1 * k, 0.0, 0.0}));
          const auto r = simon_separable(v);
          CHECK(r.margin < 0.0);
          count += r.margin < 0.0;
        }
    CHECK(count == 1000);
  }

  TEST_CASE("gaussian_entropy") {
    CHECK(gaussian_entropy({0.5, 0.5, 0.0, 0.0}) == 0.0);
    CHECK(gaussian_entropy({1.5, 0.5, 0.0, 0.0}) == doctest::Approx(2.0 * std::log(2.0)));
    // reduced mode of the TMSV at |q|^2 = 1/2 is thermal with x = cosh(2 zeta)/2
    const double q = std::sqrt(0.5);
    const auto tm = lossy(q, 1.0, 1.0);
    CHECK(mode_entropy(tm.x) == doctest::Approx(fock::tmsv_entropy(q)).epsilon(1e-12));
    CHECK(mode_entropy(tm.x) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    for (double z : {0.1, 1.0, 3.0}) CHECK(gaussian_entropy(lossy(std::tanh(z), 1.0, 1.0)) < 1e-7);
  }

  TEST_CASE("williamson decomposition") {
    const Eigen::Matrix4d om = symplectic_form();
    auto w = williamson({0.5, 0.5, 0.0, 0.0});
    CHECK(max_abs(w.transform - Eigen::Matrix4d::Identity()) < 1e-12);
    w = williamson({1.5, 1.5, 0.0, 0.0});
    CHECK(max_abs(w.transform - Eigen::Matrix4d::Identity()) < 1e-12);
    CHECK(w.spectrum.nu_minus == doctest::Approx(1.5));

    const StdFormVariance cases[] = {lossy(0.7071, 0.9, 0.9), lossy(0.95, 0.5, 0.8), lossy(0.3, 1.0, 0.2),
                                     {0.9, 1.3, 0.2, -0.4}, {2.0, 0.7, 0.5, 0.3}, {1.2, 1.2, 0.0, 0.0},
                                     lossy(std::tanh(2.0), 1.0, 1.0)};
    for (const auto& v : cases) {
      w = williamson(v);
      const Eigen::Matrix4d& M = w.transform;
      Eigen::Vector4d d;
      d << w.spectrum.nu_minus, w.spectrum.nu_minus, w.spectrum.nu_plus, w.spectrum.nu_plus;
      CHECK(max_abs(M * d.asDiagonal() * M.transpose() - v.matrix()) < 1e-9 * std::max(1.0, v.x));
      CHECK(max_abs(M.transpose() * om * M - om) < 1e-9 * std::max(1.0, v.x));
      const auto sp = symplectic_spectrum(v);
      CHECK(w.spectrum.nu_minus == doctest::Approx(sp.nu_minus).epsilon(1e-9));
      CHECK(w.spectrum.nu_plus == doctest::Approx(sp.nu_plus).epsilon(1e-9));
    }
  }
}
