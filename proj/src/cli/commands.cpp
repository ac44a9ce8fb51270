#include <cmath>
#include <limits>
#include <variant>

#include "cvent/bounds.hpp"
#include "cvent/cli.hpp"
#include "cvent/distance.hpp"
#include "cvent/fock.hpp"
#include "cvent/gaussian.hpp"
#include "cvent/teleport.hpp"

namespace cvent::cli {

namespace {

constexpr double kDeficitFlag = 1e-3;
constexpr double kNoDeficitLimit = std::numeric_limits<double>::infinity();

double transmission(double length, const GlobalOptions& opt) { return std::exp(-length / opt.l_abs); }

distance::MinimizerConfig minimizer(const GlobalOptions& opt) {
  distance::MinimizerConfig c;
  c.n_starts = opt.starts;
  c.seed = opt.seed;
  c.validate();
  return c;
}

distance::DistanceResult distance_after(const TmsvParams& p, double t, const GlobalOptions& opt) {
  return distance::distance_to_separable(to_std_form(propagate_tmsv(p, ChannelPair::symmetric(t))), minimizer(opt));
}

double q_for_nbar(double nbar) { return std::sqrt(nbar / (nbar + 1.0)); }

void check_q_axis(const Axis& a) {
  if (a.start < 0.0 || a.stop > 0.99) throw UsageError("axis q must lie in [0, 0.99]");
}

void check_nonneg(const Axis& a) {
  if (a.start < 0.0) throw UsageError("axis " + a.name + " must be nonnegative");
}

struct Grid2 {
  std::vector<double> a, b;
  std::size_t size() const { return a.size() * b.size(); }
  double first(std::size_t i) const { return a[i / b.size()]; }
  double second(std::size_t i) const { return b[i % b.size()]; }
};

}  // namespace

CsvTable cmd_estimate_surface(const SweepSpec& spec, const GlobalOptions& opt, EstimateForm form) {
  spec.validate();
  opt.validate();
  check_q_axis(spec.axis("q"));
  check_nonneg(spec.axis("l"));
  const Grid2 g{spec.axis("q").values(), spec.axis("l").values()};
  return evaluate_rows(
      {"q", "l_over_la", "estimate_nats"}, g.size(),
      [&](std::size_t i) {
        const double q = g.first(i), l = g.second(i), t = transmission(l, opt);
        double e = 0.0;
        if (form == EstimateForm::Printed)
          e = bounds::extraction_estimate(q, t, t).estimate_nats;
        else
          e = bounds::extracted_state_direct(TmsvParams::from_q(q), ChannelPair::symmetric(t), opt.n_max).estimate();
        return RowResult{{q, l / opt.l_abs, e}};
      },
      opt.worker_count());
}

CsvTable cmd_bound_surface(const SweepSpec& spec, const GlobalOptions& opt) {
  spec.validate();
  opt.validate();
  check_q_axis(spec.axis("q"));
  check_nonneg(spec.axis("l"));
  const Grid2 g{spec.axis("q").values(), spec.axis("l").values()};
  return evaluate_rows(
      {"q", "l_over_la", "bound_nats", "trace_deficit"}, g.size(),
      [&](std::size_t i) {
        const double q = g.first(i), l = g.second(i), t = transmission(l, opt);
        const auto rho = fock::build_transmitted_state(TmsvParams::from_q(q), ChannelPair::symmetric(t), opt.n_max,
                                                       kNoDeficitLimit);
        const double deficit = rho.trace_deficit();
        return RowResult{{q, l / opt.l_abs, bounds::schmidt_block_bound(rho), deficit}, deficit > kDeficitFlag};
      },
      opt.worker_count());
}

CsvTable cmd_distance_curves(const SweepSpec& spec, const GlobalOptions& opt) {
  spec.validate();
  opt.validate();
  check_nonneg(spec.axis("l"));
  const auto ls = spec.axis("l").values();
  const double nbars[] = {1.0, 10.0, 100.0, 1000.0};
  return evaluate_rows(
      {"l_over_la", "ratio_nbar1", "ratio_nbar10", "ratio_nbar100", "ratio_nbar1000"}, ls.size(),
      [&](std::size_t i) {
        const double t = transmission(ls[i], opt);
        RowResult r{{ls[i] / opt.l_abs}};
        for (double nbar : nbars) {
          const double q = q_for_nbar(nbar);
          const auto d = distance_after(TmsvParams::from_q(q), t, opt);
          r.values.push_back(d.e_nats / fock::tmsv_entropy(q));
          r.flagged = r.flagged || !d.converged;
        }
        return r;
      },
      opt.worker_count());
}

CsvTable cmd_compare(const SweepSpec& spec, const GlobalOptions& opt) {
  spec.validate();
  opt.validate();
  check_nonneg(spec.axis("l"));
  const auto ls = spec.axis("l").values();
  const TmsvParams p = TmsvParams::from_q(q_for_nbar(1.0));
  return evaluate_rows(
      {"l_over_la", "bound", "estimate", "distance"}, ls.size(),
      [&](std::size_t i) {
        const double t = transmission(ls[i], opt);
        const ChannelPair ch = ChannelPair::symmetric(t);
        const auto rho = fock::build_transmitted_state(p, ch, opt.n_max, kNoDeficitLimit);
        const double est = bounds::extracted_state_direct(p, ch, opt.n_max).estimate();
        const auto d = distance_after(p, t, opt);
        return RowResult{{ls[i] / opt.l_abs, bounds::schmidt_block_bound(rho), est, d.e_nats},
                         rho.trace_deficit() > kDeficitFlag || !d.converged};
      },
      opt.worker_count());
}

CsvTable cmd_available_entanglement(const SweepSpec& spec, const GlobalOptions& opt) {
  spec.validate();
  opt.validate();
  check_nonneg(spec.axis("zeta"));
  const auto zs = spec.axis("zeta").values();
  const double lengths[] = {0.0, 0.01, 0.1};
  return evaluate_rows(
      {"zeta", "E_l0", "E_l001", "E_l01"}, zs.size(),
      [&](std::size_t i) {
        RowResult r{{zs[i]}};
        for (double l : lengths) {
          const auto d = distance_after(TmsvParams{zs[i], 0.0}, std::exp(-l), opt);
          r.values.push_back(d.e_nats);
          r.flagged = r.flagged || !d.converged;
        }
        return r;
      },
      opt.worker_count());
}

namespace {

using teleport::FockInput;
using teleport::InputState;
using teleport::SqueezedInput;
using teleport::TeleportScenario;

TeleportScenario scenario(double zeta, double t1, double t2, double gain) {
  TeleportScenario s;
  s.tmsv = TmsvParams{zeta, 0.0};
  s.ch = ChannelPair{t1, t2, 0.0, 0.0};
  s.gain = gain;
  return s;
}

std::vector<InputState> figure_inputs(const std::string& fig) {
  if (fig == "f1a" || fig == "f1b") return {SqueezedInput{0.5, 0.0}};
  if (fig == "f2a") return {SqueezedInput{0.88, 0.0}};
  if (fig == "f3a") return {SqueezedInput{0.5, 0.7}};
  if (fig == "f2b" || fig == "f3b") return {FockInput{1}};
  if (fig == "f4a") return {SqueezedInput{0.88, 0.0}, SqueezedInput{1.54, 0.0}, SqueezedInput{1.87, 0.0}};
  if (fig == "f5a") return {SqueezedInput{0.78, 0.5}, SqueezedInput{1.44, 1.0}, SqueezedInput{1.63, 2.0}};
  if (fig == "f4b" || fig == "f5b") return {FockInput{1}, FockInput{5}, FockInput{10}};
  throw UsageError("unknown figure '" + fig + "'");
}

}  // namespace

CsvTable cmd_fidelity(const std::string& figure, const SweepSpec& spec, const GlobalOptions& opt) {
  spec.validate();
  opt.validate();
  const auto inputs = figure_inputs(figure);
  const std::string kind = figure.substr(0, 2);
  const int jobs = opt.worker_count();

  if (kind == "f1" || kind == "f3") {
    check_nonneg(spec.axis("zeta"));
    const Axis& t2a = spec.axis("t2");
    if (!(t2a.start > 0.0) || t2a.stop > 1.0) throw UsageError("axis t2 must lie in (0, 1]");
    const Grid2 g{spec.axis("zeta").values(), t2a.values()};
    const bool unit_gain = figure == "f1a";
    return evaluate_rows(
        {"zeta", "t2", "fidelity"}, g.size(),
        [&, unit_gain](std::size_t i) {
          const double z = g.first(i), t2 = g.second(i);
          const auto s = scenario(z, 1.0, t2, unit_gain ? 1.0 : t2);
          return RowResult{{z, t2, teleport::fidelity(s, inputs[0])}};
        },
        jobs);
  }
  if (kind == "f2") {
    const Axis& za = spec.axis("zeta");
    if (!(za.start > 0.0)) throw UsageError("axis zeta must be positive for " + figure);
    const auto zs = za.values();
    const double t2 = 0.9;
    return evaluate_rows(
        {"zeta", "gain_opt", "fidelity_opt", "fidelity_canonical", "gain_c2s", "fidelity_c2s"}, zs.size(),
        [&](std::size_t i) {
          const auto base = scenario(zs[i], 1.0, t2, t2);
          const auto opt_gain = teleport::optimize_gain(base, inputs[0]);
          const auto st = propagate_tmsv(base.tmsv, base.ch);
          const double g_c2s = st.c2 / st.s_mag;
          const double f_c2s = teleport::fidelity(scenario(zs[i], 1.0, t2, g_c2s), inputs[0]);
          return RowResult{{zs[i], opt_gain.gain, opt_gain.fidelity, teleport::fidelity(base, inputs[0]), g_c2s, f_c2s}};
        },
        jobs);
  }
  if (kind == "f4") {
    check_nonneg(spec.axis("l2"));
    const auto ls = spec.axis("l2").values();
    return evaluate_rows(
        {"l2_over_la", "fidelity_1", "fidelity_2", "fidelity_3"}, ls.size(),
        [&](std::size_t i) {
          const double t2 = transmission(ls[i], opt);
          auto s = scenario(1.0, 1.0, t2, t2);
          s.infinite_squeezing = true;
          RowResult r{{ls[i] / opt.l_abs}};
          for (const auto& inp : inputs) r.values.push_back(teleport::fidelity(s, inp));
          return r;
        },
        jobs);
  }
  check_nonneg(spec.axis("l12"));
  const auto ls = spec.axis("l12").values();
  return evaluate_rows(
      {"l12_over_la", "l1_over_la_1", "l1_over_la_2", "l1_over_la_3", "fidelity_1", "fidelity_2", "fidelity_3"},
      ls.size(),
      [&](std::size_t i) {
        RowResult r{{ls[i] / opt.l_abs}};
        std::vector<double> fids;
        for (const auto& inp : inputs) {
          const auto sp = teleport::optimize_source_position(ls[i], opt.l_abs, inp);
          r.values.push_back(sp.l1 / opt.l_abs);
          fids.push_back(sp.fidelity);
        }
        r.values.insert(r.values.end(), fids.begin(), fids.end());
        return r;
      },
      jobs);
}

}  // namespace cvent::cli
