#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "cvent/gaussian.hpp"
#include "cvent/specfun.hpp"

namespace cvent::fock {

// Truncated two-mode density matrix; elem(n1,n2,m1,m2) = <n1,n2|rho|m1,m2>.
class FockDensityMatrix {
 public:
  explicit FockDensityMatrix(int n_max);

  int n_max() const { return n_max_; }
  int dim() const { return (n_max_ + 1) * (n_max_ + 1); }
  int index(int n1, int n2) const { return n1 * (n_max_ + 1) + n2; }

  std::complex<double>& operator()(int n1, int n2, int m1, int m2) {
    return elems_(index(n1, n2), index(m1, m2));
  }
  std::complex<double> operator()(int n1, int n2, int m1, int m2) const {
    return elems_(index(n1, n2), index(m1, m2));
  }

  const Eigen::MatrixXcd& matrix() const { return elems_; }
  Eigen::MatrixXcd& matrix() { return elems_; }

  double trace() const { return elems_.trace().real(); }
  double trace_deficit() const { return 1.0 - trace(); }

 private:
  int n_max_;
  Eigen::MatrixXcd elems_;
};

// K_{k,l,m} table together with the amplitude factors c_m, d_m.
class KCoefficients {
 public:
  KCoefficients(double q_mag, double phi, const ChannelPair& ch, int n_max,
                const specfun::SeriesTolerance& tol = {});

  int n_max() const { return n_max_; }
  double arg_x() const { return arg_x_; }
  // Valid for m + max(k, l) <= n_max.
  double value(int k, int l, int m) const { return values_[offset(m) + k * (n_max_ + 1 - m) + l]; }
  std::complex<double> c(int m) const { return c_[m]; }
  std::complex<double> d(int m) const { return d_[m]; }

 private:
  std::size_t offset(int m) const { return offsets_[m]; }

  int n_max_;
  double arg_x_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
  std::vector<std::complex<double>> c_;
  std::vector<std::complex<double>> d_;
};

double tmsv_entropy(double q_mag);

// K_{k,l,m} for |T_i| <= 1, evaluated in a form that stays finite at |T_i| = 1.
double k_coefficient(int k, int l, int m, double q_mag, double t1_mag, double t2_mag,
                     const specfun::SeriesTolerance& tol = {});

FockDensityMatrix build_transmitted_state(const TmsvParams& params, const ChannelPair& ch, int n_max = 30,
                                          double max_trace_deficit = 1e-3);

FockDensityMatrix beamsplitter_loss_oracle(const TmsvParams& params, const ChannelPair& ch, int n_max = 30,
                                           double max_trace_deficit = 1e-3);

// Partial trace over the other mode; mode is 1 or 2.
Eigen::MatrixXcd reduced_state(const FockDensityMatrix& rho, int mode);

double reduced_entropy(const FockDensityMatrix& rho, int mode);

// Partial transpose with respect to mode 2.
Eigen::MatrixXcd partial_transpose(const FockDensityMatrix& rho);

double hermiticity_error(const FockDensityMatrix& rho);

double min_eigenvalue(const Eigen::MatrixXcd& m);

// Entropy -sum p ln p over eigenvalues above 1e-14; throws if any is below -tol.
double von_neumann_entropy(const Eigen::MatrixXcd& m, double tol = 1e-10);

// Debug dump: one "n1 n2 m1 m2 re im" line per element with |value| > threshold.
void write_records(std::ostream& out, const FockDensityMatrix& rho, double threshold = 0.0);

}  // namespace cvent::fock
