#include <algorithm>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "cvent/cli.hpp"
#include "cvent/errors.hpp"

namespace cvent::cli {

namespace {

const std::vector<std::string> kAxisNames = {"q", "l", "zeta", "t2", "l2", "l12"};

void apply_axis_overrides(SweepSpec& spec, const std::map<std::string, std::string>& given) {
  for (const auto& [name, text] : given) {
    auto it = std::find_if(spec.axes.begin(), spec.axes.end(), [&](const Axis& a) { return a.name == name; });
    if (it == spec.axes.end()) throw UsageError("option --" + name + " does not apply to this command");
    *it = Axis::parse(name, text);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement and teleportation through lossy fibers", "cvent"};
  app.require_subcommand(1);

  GlobalOptions opt;
  app.add_option("--labs", opt.l_abs, "Absorption length; lengths are given in these units")->capture_default_str();
  app.add_option("--nmax", opt.n_max, "Photon-number truncation per mode")->capture_default_str();
  app.add_option("--starts", opt.starts, "Multi-start count for the distance minimizer")->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for multi-start perturbations")->capture_default_str();
  app.add_option("--out", opt.out, "Output CSV path (default: stdout)");
  app.add_option("--precision", opt.precision, "Significant digits in CSV output")->capture_default_str();
  app.add_option("--jobs", opt.jobs, "Worker threads (0: available parallelism)")->capture_default_str();

  std::map<std::string, std::string> axis_text;
  auto add_axes = [&](CLI::App* sub, std::initializer_list<const char*> names) {
    for (const char* n : names)
      sub->add_option_function<std::string>(std::string("--") + n,
                                            [&axis_text, n](const std::string& v) { axis_text[n] = v; },
                                            "Axis start:stop:count[:log]");
    sub->fallthrough();
  };

  std::string form = "printed";
  auto* est = app.add_subcommand("estimate-surface", "Extraction estimate over (q, l)");
  est->add_option("--form", form, "printed or direct")->check(CLI::IsMember({"printed", "direct"}))->capture_default_str();
  add_axes(est, {"q", "l"});
  auto* bnd = app.add_subcommand("bound-surface", "Schmidt-block bound over (q, l)");
  add_axes(bnd, {"q", "l"});
  auto* dst = app.add_subcommand("distance-curves", "Distance-to-separable ratios versus l");
  add_axes(dst, {"l"});
  auto* cmp = app.add_subcommand("compare", "Bound, estimate and distance at one mean photon");
  add_axes(cmp, {"l"});
  auto* avl = app.add_subcommand("available-entanglement", "Distance versus squeezing at three lengths");
  add_axes(avl, {"zeta"});
  std::string figure;
  auto* fid = app.add_subcommand("fidelity", "Teleportation fidelity sweeps");
  fid->add_option("--figure", figure, "Figure panel")->required()->check(CLI::IsMember(fidelity_figures()));
  add_axes(fid, {"zeta", "t2", "l2", "l12"});

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "cvent: " << e.what() << "\n";
    return 2;
  }

  CsvTable table;
  try {
    opt.validate();
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    SweepSpec spec = default_sweep(name, figure);
    apply_axis_overrides(spec, axis_text);
    spec.output_path = opt.out;
    if (sub == est) table = cmd_estimate_surface(spec, opt, form == "direct" ? EstimateForm::Direct : EstimateForm::Printed);
    else if (sub == bnd) table = cmd_bound_surface(spec, opt);
    else if (sub == dst) table = cmd_distance_curves(spec, opt);
    else if (sub == cmp) table = cmd_compare(spec, opt);
    else if (sub == avl) table = cmd_available_entanglement(spec, opt);
    else table = cmd_fidelity(figure, spec, opt);
  } catch (const UsageError& e) {
    err << "cvent: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "cvent: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "cvent: numerical failure: " << e.what() << "\n";
    return 3;
  }

  if (opt.out.empty()) {
    table.write(out, opt.precision);
  } else {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
      err << "cvent: cannot open " << opt.out << "\n";
      return 2;
    }
    table.write(f, opt.precision);
    if (!f) {
      err << "cvent: write to " << opt.out << " failed\n";
      return 3;
    }
  }
  if (table.failed) {
    err << "cvent: numerical failure in flagged rows\n";
    return 3;
  }
  return 0;
}

}  // namespace cvent::cli
