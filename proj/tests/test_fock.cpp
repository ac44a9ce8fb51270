#include <cmath>
#include <sstream>

#include "cvent/errors.hpp"
#include "cvent/fock.hpp"
#include "doctest.h"
#include "gaussian_fock_oracle.hpp"

using namespace cvent;
using namespace cvent::fock;

namespace {

double max_diff(const FockDensityMatrix& a, const FockDensityMatrix& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("fock-rep") {
  TEST_CASE("tmsv_entropy") {
    CHECK(tmsv_entropy(0.0) == 0.0);
    CHECK(tmsv_entropy(std::sqrt(0.5)) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    // n = 1 at |q| = 0.7071: entropy of a thermal state with one photon
    CHECK(TmsvParams::from_q(0.70710678118654752).mean_photon_number() == doctest::Approx(1.0));
    CHECK_THROWS_AS(tmsv_entropy(1.0), DomainError);
  }

  TEST_CASE("k_coefficient examples") {
    const double q = 0.6, t1 = 0.7, t2 = 0.4;
    const double x = q * q * (1 - t1 * t1) * (1 - t2 * t2);
    CHECK(k_coefficient(0, 0, 0, q, t1, t2) == doctest::Approx(1.0 / (1.0 - x)).epsilon(1e-14));
    for (int m = 0; m < 6; ++m)
      CHECK(k_coefficient(0, 0, m, q, 0.0, 0.0) == doctest::Approx(std::pow(1.0 - q * q, -(m + 1.0))).epsilon(1e-13));
    CHECK(k_coefficient(2, 1, 3, 0.5, 0.8, 0.8) == doctest::Approx(k_coefficient(1, 2, 3, 0.5, 0.8, 0.8)).epsilon(1e-14));
    // finite at |T| = 1; only k = l = 0 survives at T1 = T2 = 1
    CHECK(k_coefficient(0, 0, 4, 0.5, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(k_coefficient(1, 0, 0, 0.5, 1.0, 1.0) == 0.0);
  }

  TEST_CASE("KCoefficients table") {
    const KCoefficients K(0.7, 0.0, ChannelPair::symmetric(0.6), 12);
    CHECK(K.arg_x() == doctest::Approx(0.49 * 0.64 * 0.64));
    for (int m = 0; m <= 12; ++m)
      for (int k = 0; k + m <= 12; ++k)
        for (int l = 0; l + m <= 12; ++l) {
          CHECK(std::isfinite(K.value(k, l, m)));
          CHECK(K.value(k, l, m) == doctest::Approx(K.value(l, k, m)).epsilon(1e-13));
        }
    CHECK(std::abs(K.c(0) - 0.5) < 1e-15);
    CHECK(std::abs(K.c(2) * K.d(2) - std::complex<double>(0.49 * 0.36 * 0.36, 0.0)) < 1e-14);
  }

  TEST_CASE("build_transmitted_state examples") {
    const auto vac = build_transmitted_state(TmsvParams::from_q(0.7), ChannelPair::symmetric(0.0), 8);
    CHECK(std::abs(vac(0, 0, 0, 0) - 1.0) < 1e-15);
    CHECK(vac.matrix().cwiseAbs().sum() == doctest::Approx(1.0));
    const auto tm = build_transmitted_state(TmsvParams::from_q(0.5), ChannelPair::symmetric(1.0), 8);
    CHECK(std::abs(tm(0, 0, 1, 1) - (-0.375)) < 1e-15);
    CHECK(std::abs(tm(2, 2, 2, 2) - 0.75 * 0.0625) < 1e-15);
  }

  TEST_CASE("builder agrees with the beam-splitter oracle") {
    const TmsvParams p = TmsvParams::from_q(0.7071);
    const ChannelPair ch = ChannelPair::symmetric(0.9);
    CHECK(max_diff(build_transmitted_state(p, ch, 30), beamsplitter_loss_oracle(p, ch, 30)) < 1e-10);
    const double ts[] = {0.3, 0.6, 0.9};
    for (double t1 : ts)
      for (double t2 : ts) {
        const TmsvParams p8 = TmsvParams::from_q(0.8);
        const ChannelPair c{t1, t2, 0.0, 0.0};
        CHECK(max_diff(build_transmitted_state(p8, c, 20), beamsplitter_loss_oracle(p8, c, 20)) < 1e-10);
      }
    // complex phases and one lossless arm
    const TmsvParams pp{0.6, 0.4};
    const ChannelPair cp{1.0, 0.7, 0.3, -1.1};
    CHECK(max_diff(build_transmitted_state(pp, cp, 15), beamsplitter_loss_oracle(pp, cp, 15)) < 1e-10);
  }

  TEST_CASE("builder agrees with the Gaussian generating-function oracle") {
    for (double t : {0.4, 0.85}) {
      const TmsvParams p = TmsvParams::from_q(0.6);
      const ChannelPair ch{t, 0.7, 0.0, 0.0};
      const auto rho = build_transmitted_state(p, ch, 12);
      StdFormVariance v = to_std_form(propagate_tmsv(p, ch));
      // the (-q)^n phase convention corresponds to the mirrored correlations
      v.z1 = -v.z1;
      v.z2 = -v.z2;
      const Eigen::MatrixXd g = testing::gaussian_to_fock(v, 12);
      CHECK((rho.matrix().real() - g).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(rho.matrix().imag().cwiseAbs().maxCoeff() < 1e-15);
    }
  }

  TEST_CASE("beamsplitter_loss_oracle examples") {
    const TmsvParams p = TmsvParams::from_q(0.5);
    const auto tm = beamsplitter_loss_oracle(p, ChannelPair::symmetric(1.0), 10);
    CHECK(max_diff(tm, build_transmitted_state(p, ChannelPair::symmetric(1.0), 10)) < 1e-15);
    const auto vac = beamsplitter_loss_oracle(p, ChannelPair::symmetric(0.0), 10);
    CHECK(std::abs(vac(0, 0, 0, 0) - 1.0) < 1e-15);
    const auto rho = beamsplitter_loss_oracle(p, {0.7, 0.9, 0.0, 0.0}, 30);
    CHECK(hermiticity_error(rho) < 1e-12);
    CHECK(min_eigenvalue(rho.matrix()) > -1e-10);
    CHECK(rho.trace_deficit() < 1e-8);
    CHECK(rho.trace_deficit() >= -1e-12);
  }

  TEST_CASE("density-matrix invariants") {
    const TmsvParams p = TmsvParams::from_q(0.75);
    const ChannelPair ch{0.8, 0.5, 0.0, 0.0};
    double prev = 0.0;
    for (int n : {4, 8, 12, 16, 20}) {
      const auto rho = build_transmitted_state(p, ch, n, 1.0);
      CHECK(rho.trace() > prev);
      CHECK(rho.trace() <= 1.0 + 1e-12);
      prev = rho.trace();
    }
    const auto rho = build_transmitted_state(p, ch, 14);
    CHECK(hermiticity_error(rho) < 1e-12);
    CHECK(min_eigenvalue(rho.matrix()) > -1e-10);
    double off_block = 0.0;
    for (int n1 = 0; n1 <= 14; ++n1)
      for (int n2 = 0; n2 <= 14; ++n2)
        for (int m1 = 0; m1 <= 14; ++m1)
          for (int m2 = 0; m2 <= 14; ++m2)
            if (n1 - m1 != n2 - m2) off_block = std::max(off_block, std::abs(rho(n1, n2, m1, m2)));
    CHECK(off_block == 0.0);
  }

  TEST_CASE("partial transpose of the TMSV is not positive") {
    for (double q : {0.05, 0.3, 0.7}) {
      const auto tm = build_transmitted_state(TmsvParams::from_q(q), ChannelPair::symmetric(1.0), 10);
      CHECK(min_eigenvalue(partial_transpose(tm)) < 0.0);
    }
  }

  TEST_CASE("reduced_entropy") {
    const auto vac = build_transmitted_state(TmsvParams::from_q(0.5), ChannelPair::symmetric(0.0), 6);
    CHECK(reduced_entropy(vac, 1) == 0.0);
    const auto tm = build_transmitted_state(TmsvParams::from_q(std::sqrt(0.5)), ChannelPair::symmetric(1.0), 60);
    CHECK(std::abs(reduced_entropy(tm, 1) - 2.0 * std::log(2.0)) < 1e-6);
    CHECK(std::abs(reduced_entropy(tm, 1) - reduced_entropy(tm, 2)) < 1e-12);
    CHECK_THROWS_AS(reduced_entropy(tm, 3), DomainError);
  }

  TEST_CASE("truncation policy") {
    const TmsvParams p = TmsvParams::from_q(0.95);
    CHECK_THROWS_AS(build_transmitted_state(p, ChannelPair::symmetric(0.9), 5), TruncationError);
    CHECK_THROWS_AS(beamsplitter_loss_oracle(p, ChannelPair::symmetric(0.9), 5), TruncationError);
    const auto rho = build_transmitted_state(p, ChannelPair::symmetric(0.9), 5, 1.0);
    CHECK(rho.trace_deficit() > 1e-3);
    CHECK_THROWS_AS(FockDensityMatrix(0), DomainError);
  }

  TEST_CASE("record dump") {
    const auto tm = build_transmitted_state(TmsvParams::from_q(0.5), ChannelPair::symmetric(1.0), 2, 1.0);
    std::ostringstream os;
    write_records(os, tm);
    const std::string s = os.str();
    CHECK(s.rfind("0 0 0 0 0.75 0\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 9);
  }
}
