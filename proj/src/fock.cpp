#include "cvent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "cvent/errors.hpp"

namespace cvent::fock {

using specfun::log_factorial;
using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

// n * ln(base) with 0^0 = 1; -inf when base = 0 and n > 0.
double log_pow(double base, int n) {
  if (n == 0) return 0.0;
  if (base <= 0.0) return -std::numeric_limits<double>::infinity();
  return n * std::log(base);
}

void check_n_max(int n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (n_max > 200) throw DomainError("n_max must be <= 200");
}

void check_deficit(const FockDensityMatrix& rho, double max_trace_deficit) {
  const double deficit = rho.trace_deficit();
  if (deficit > max_trace_deficit)
    throw TruncationError("trace deficit " + std::to_string(deficit) + " exceeds bound at n_max=" +
                              std::to_string(rho.n_max()) + "; increase n_max",
                          deficit, rho.n_max());
}

// (-q)^m with q = |q| e^{i phi}
cd minus_q_pow(double q_mag, double phase, int m) {
  return std::polar(std::exp(log_pow(q_mag, m)), m * phase);
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(int n_max) : n_max_(n_max) {
  check_n_max(n_max);
  elems_ = Eigen::MatrixXcd::Zero(dim(), dim());
}

double tmsv_entropy(double q_mag) {
  if (!(q_mag >= 0.0 && q_mag < 1.0)) throw DomainError("tmsv_entropy: q must lie in [0, 1)");
  const double Q = q_mag * q_mag;
  if (Q == 0.0) return 0.0;
  return -std::log1p(-Q) - Q / (1.0 - Q) * std::log(Q);
}

double k_coefficient(int k, int l, int m, double q_mag, double t1_mag, double t2_mag,
                     const specfun::SeriesTolerance& tol) {
  if (k < 0 || l < 0 || m < 0) throw DomainError("k_coefficient: indices must be nonnegative");
  if (!(q_mag >= 0.0 && q_mag < 1.0)) throw DomainError("k_coefficient: q must lie in [0, 1)");
  if (!(t1_mag >= 0.0 && t1_mag <= 1.0 && t2_mag >= 0.0 && t2_mag <= 1.0))
    throw DomainError("k_coefficient: |T_i| must lie in [0, 1]");
  const int a = std::max(k, l);
  const double Q = q_mag * q_mag;
  const double t1 = t1_mag * t1_mag;
  const double t2 = t2_mag * t2_mag;
  const double r1 = 1.0 - t1;
  const double r2 = 1.0 - t2;
  const double x = Q * r1 * r2;
  const double log_ratio = log_factorial(a) + log_factorial(a + m) -
                           0.5 * (log_factorial(k) + log_factorial(l) + log_factorial(k + m) + log_factorial(l + m)) -
                           log_factorial(a - k) - log_factorial(a - l);
  const double log_pref = log_ratio + log_pow(Q, a) + log_pow(r1, a - k) + log_pow(r2, a - l) + log_pow(t1, k) +
                          log_pow(t2, l);
  if (std::isinf(log_pref)) return 0.0;
  return std::exp(log_pref) * specfun::hyp2f1(a + 1.0, a + m + 1.0, std::abs(k - l) + 1.0, x, tol);
}

KCoefficients::KCoefficients(double q_mag, double phi, const ChannelPair& ch, int n_max,
                             const specfun::SeriesTolerance& tol)
    : n_max_(n_max) {
  check_n_max(n_max);
  ch.validate();
  arg_x_ = q_mag * q_mag * (1.0 - ch.t1_mag * ch.t1_mag) * (1.0 - ch.t2_mag * ch.t2_mag);
  offsets_.resize(n_max + 2);
  offsets_[0] = 0;
  for (int m = 0; m <= n_max; ++m) {
    const std::size_t side = static_cast<std::size_t>(n_max + 1 - m);
    offsets_[m + 1] = offsets_[m] + side * side;
  }
  values_.assign(offsets_[n_max + 1], 0.0);
  c_.resize(n_max + 1);
  d_.resize(n_max + 1);
  const double half_phase = 0.5 * (phi + kPi);
  for (int m = 0; m <= n_max; ++m) {
    const double delta = m == 0 ? 0.5 : 1.0;
    const double root = std::exp(0.5 * log_pow(q_mag, m));
    c_[m] = delta * std::polar(root * std::exp(log_pow(ch.t1_mag, m)), m * (half_phase + ch.t1_phase));
    d_[m] = delta * std::polar(root * std::exp(log_pow(ch.t2_mag, m)), m * (half_phase + ch.t2_phase));
    const int side = n_max + 1 - m;
    for (int k = 0; k < side; ++k)
      for (int l = 0; l < side; ++l)
        values_[offsets_[m] + k * side + l] = k_coefficient(k, l, m, q_mag, ch.t1_mag, ch.t2_mag, tol);
  }
}

FockDensityMatrix build_transmitted_state(const TmsvParams& params, const ChannelPair& ch, int n_max,
                                          double max_trace_deficit) {
  params.validate();
  ch.validate();
  FockDensityMatrix rho(n_max);
  const double q = params.q_mag();
  const double Q = q * q;
  const double norm = 1.0 - Q;

  if (ch.t1_mag == 1.0 && ch.t2_mag == 1.0) {
    const double phase = params.phi + kPi + ch.t1_phase + ch.t2_phase;
    for (int n = 0; n <= n_max; ++n)
      for (int m = 0; m <= n_max; ++m)
        rho(n, n, m, m) = norm * minus_q_pow(q, phase, n) * std::conj(minus_q_pow(q, phase, m));
    check_deficit(rho, max_trace_deficit);
    return rho;
  }

  const KCoefficients K(q, params.phi, ch, n_max);
  for (int m = 0; m <= n_max; ++m) {
    // m = 0: (2 c_0)(2 d_0) = 1, the diagonal block counted once
    const cd amp = (m == 0 ? 4.0 : 1.0) * K.c(m) * K.d(m) * norm;
    for (int k = 0; k + m <= n_max; ++k)
      for (int l = 0; l + m <= n_max; ++l) {
        const cd v = amp * K.value(k, l, m);
        rho(m + k, m + l, k, l) = v;
        if (m > 0) rho(k, l, m + k, m + l) = std::conj(v);
      }
  }
  check_deficit(rho, max_trace_deficit);
  return rho;
}

FockDensityMatrix beamsplitter_loss_oracle(const TmsvParams& params, const ChannelPair& ch, int n_max,
                                           double max_trace_deficit) {
  params.validate();
  ch.validate();
  FockDensityMatrix rho(n_max);
  const double q = params.q_mag();
  const double Q = q * q;
  const double t1 = ch.t1_mag * ch.t1_mag;
  const double t2 = ch.t2_mag * ch.t2_mag;

  // input truncation: drop TMSV components with weight below ~1e-20
  int n_in = n_max + 1;
  if (Q > 0.0) n_in = std::max(n_in, static_cast<int>(std::ceil(-46.0 / std::log(Q))) + 1);
  n_in = std::min(n_in, 100000);

  std::vector<double> lf(n_in + 1);
  for (int n = 0; n <= n_in; ++n) lf[n] = log_factorial(n);
  auto log_binom = [&](int n, int j) { return lf[n] - lf[j] - lf[n - j]; };

  const double log_norm = std::log1p(-Q);
  const double phase = params.phi + kPi + ch.t1_phase + ch.t2_phase;
  for (int a = 0; a <= n_max; ++a)
    for (int b = 0; b <= n_max; ++b)
      for (int c = 0; c <= n_max; ++c) {
        const int d = c - a + b;
        if (d < 0 || d > n_max) continue;
        const double log_t = log_pow(ch.t1_mag, a + c) + log_pow(ch.t2_mag, b + d);
        if (std::isinf(log_t)) continue;
        double sum = 0.0;
        for (int N = std::max(a, b); N < n_in; ++N) {
          const int Np = N - a + c;
          if (Np >= n_in) break;
          const int j1 = N - a;
          const int j2 = N - b;
          const double lr = log_pow(1.0 - t1, j1) + log_pow(1.0 - t2, j2);
          if (std::isinf(lr)) break;  // further N only add loss quanta
          const double lq = log_pow(q, N + Np);
          if (std::isinf(lq)) break;
          sum += std::exp(log_norm + lq + lr + log_t +
                          0.5 * (log_binom(N, j1) + log_binom(N, j2) + log_binom(Np, j1) + log_binom(Np, j2)));
        }
        rho(a, b, c, d) = std::polar(sum, (a - c) * phase);
      }
  check_deficit(rho, max_trace_deficit);
  return rho;
}

Eigen::MatrixXcd reduced_state(const FockDensityMatrix& rho, int mode) {
  if (mode != 1 && mode != 2) throw DomainError("reduced_state: mode must be 1 or 2");
  const int d = rho.n_max() + 1;
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int s = 0; s < d; ++s) r(i, j) += mode == 1 ? rho(i, s, j, s) : rho(s, i, s, j);
  return r;
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double von_neumann_entropy(const Eigen::MatrixXcd& m, double tol) {
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("entropy: eigen-decomposition failed");
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p < -tol) throw NumericalError("entropy: matrix is not positive semidefinite");
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

double reduced_entropy(const FockDensityMatrix& rho, int mode) { return von_neumann_entropy(reduced_state(rho, mode)); }

Eigen::MatrixXcd partial_transpose(const FockDensityMatrix& rho) {
  const int d = rho.n_max() + 1;
  Eigen::MatrixXcd pt(rho.dim(), rho.dim());
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      for (int m1 = 0; m1 < d; ++m1)
        for (int m2 = 0; m2 < d; ++m2) pt(rho.index(n1, n2), rho.index(m1, m2)) = rho(n1, m2, m1, n2);
  return pt;
}

double hermiticity_error(const FockDensityMatrix& rho) {
  return (rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff();
}

void write_records(std::ostream& out, const FockDensityMatrix& rho, double threshold) {
  const int d = rho.n_max() + 1;
  const auto old_prec = out.precision(17);
  for (int n1 = 0; n1 < d; ++n1)
    for (int n2 = 0; n2 < d; ++n2)
      for (int m1 = 0; m1 < d; ++m1)
        for (int m2 = 0; m2 < d; ++m2) {
          const cd v = rho(n1, n2, m1, m2);
          if (std::abs(v) > threshold || (threshold == 0.0 && v != cd{}))
            out << n1 << ' ' << n2 << ' ' << m1 << ' ' << m2 << ' ' << v.real() << ' ' << v.imag() << '\n';
        }
  out.precision(old_prec);
}

}  // namespace cvent::fock
