#include "cvent/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "cvent/errors.hpp"

namespace cvent::bounds {

namespace {

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

// f / D^2 with f = (y + u^2) ln u - y ln y and D = u^2 - y; f vanishes
// to first order at D = 0, so a series in D is used there.
double second_term_ratio(double u, double y) {
  const double D = u * u - y;
  const double u2 = u * u;
  if (std::abs(D) < 1e-4 * u2) {
    const double lu = std::log(u);
    return (lu + 1.0) / D - 1.0 / (2.0 * u2) - D / (6.0 * u2 * u2);
  }
  const double f = (y + u2) * std::log(u) - xlogx(y);
  return f / (D * D);
}

}  // namespace

ExtractionResult extraction_estimate(double q_mag, double t1_mag, double t2_mag) {
  if (!(q_mag >= 0.0 && q_mag < 1.0)) throw DomainError("extraction_estimate: q must lie in [0, 1)");
  if (!(t1_mag >= 0.0 && t1_mag <= 1.0 && t2_mag >= 0.0 && t2_mag <= 1.0))
    throw DomainError("extraction_estimate: |T_i| must lie in [0, 1]");
  const double Q = q_mag * q_mag;
  const double t1 = t1_mag * t1_mag;
  const double t2 = t2_mag * t2_mag;
  ExtractionResult r;
  r.x_arg = Q * (1.0 - t1) * (1.0 - t2);
  r.y_arg = Q * t1 * t2;
  const double u = 1.0 - r.x_arg;
  const double y = r.y_arg;
  const double D = u * u - y;
  if (!(D > 0.0)) throw DomainError("extraction_estimate: (1-x)^2 <= y");
  const double g = u / D;
  r.weight = (1.0 - Q) * g;
  if (y == 0.0) {
    // both terms cancel exactly: ln(1/u)/u + ln(u)/u
    r.estimate_nats = 0.0;
    return r;
  }
  r.estimate_nats = std::max(0.0, g * std::log(g) + u * second_term_ratio(u, y));
  return r;
}

DirectExtraction extracted_state_direct(const TmsvParams& params, const ChannelPair& ch, int n_max) {
  params.validate();
  ch.validate();
  if (n_max < 1) throw DomainError("extracted_state_direct: n_max must be >= 1");
  const double q = params.q_mag();
  const double Q = q * q;
  const double t1 = ch.t1_mag;
  const double t2 = ch.t2_mag;
  const double k000 = fock::k_coefficient(0, 0, 0, q, t1, t2);
  const double pref = (1.0 - Q) / k000;
  // |v_n|^2 = pref * K_{00n}^2 * |c_n d_n|^2, with |c_n d_n| = |q T1 T2|^n
  std::vector<double> p(n_max + 1);
  double weight = 0.0;
  double amp = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const double kn = fock::k_coefficient(0, 0, n, q, t1, t2);
    p[n] = pref * kn * kn * amp * amp;
    weight += p[n];
    amp *= q * t1 * t2;
  }
  DirectExtraction out;
  out.weight = weight;
  if (weight > 0.0)
    for (double pn : p) out.entropy_nats -= xlogx(pn / weight);
  return out;
}

double SchmidtBlockDecomposition::total_weight() const {
  double s = 0.0;
  for (const auto& b : blocks) s += b.weight;
  return s;
}

double SchmidtBlockDecomposition::bound() const {
  double s = 0.0;
  for (const auto& b : blocks) s += b.weight * b.entanglement;
  return s;
}

SchmidtBlockDecomposition schmidt_blocks(const fock::FockDensityMatrix& rho) {
  const int n = rho.n_max();
  SchmidtBlockDecomposition out;
  for (int off = -n; off <= n; ++off) {
    const int size = n + 1 - std::abs(off);
    auto basis = [&](int k) {
      return off >= 0 ? rho.index(k + off, k) : rho.index(k, k - off);
    };
    Eigen::MatrixXcd block(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) block(i, j) = rho.matrix()(basis(i), basis(j));
    const double p = block.trace().real();
    if (p < 1e-14) continue;
    SchmidtBlock b;
    b.offset = off;
    b.weight = p;
    b.state = block / p;
    double coherent_entropy = 0.0;
    for (int i = 0; i < size; ++i) coherent_entropy -= xlogx(std::max(b.state(i, i).real(), 0.0));
    b.entanglement = std::max(0.0, coherent_entropy - fock::von_neumann_entropy(b.state));
    out.blocks.push_back(std::move(b));
  }
  return out;
}

double schmidt_block_bound(const fock::FockDensityMatrix& rho) { return schmidt_blocks(rho).bound(); }

}  // namespace cvent::bounds
