#include <cmath>
#include <sstream>
#include <thread>

#include "cvent/cli.hpp"

namespace cvent::cli {

namespace {

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError(what + ": not a number: '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) throw UsageError(what + ": not a number: '" + s + "'");
  return v;
}

}  // namespace

Axis Axis::parse(const std::string& name, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4)
    throw UsageError("axis " + name + ": expected start:stop:count[:log], got '" + text + "'");
  Axis a;
  a.name = name;
  a.start = parse_double(parts[0], "axis " + name);
  a.stop = parse_double(parts[1], "axis " + name);
  const double c = parse_double(parts[2], "axis " + name);
  if (c != std::floor(c) || c > 1e6) throw UsageError("axis " + name + ": count must be an integer");
  a.count = static_cast<int>(c);
  if (parts.size() == 4) {
    if (parts[3] == "log") a.log_spaced = true;
    else if (parts[3] != "lin") throw UsageError("axis " + name + ": spacing must be lin or log");
  }
  a.validate();
  return a;
}

void Axis::validate() const {
  if (count < 2) throw UsageError("axis " + name + ": count must be >= 2");
  if (!(start < stop)) throw UsageError("axis " + name + ": start must be < stop");
  if (log_spaced && !(start > 0.0)) throw UsageError("axis " + name + ": log spacing needs start > 0");
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    v[i] = log_spaced ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start))) : start + f * (stop - start);
  }
  v.back() = stop;
  return v;
}

void SweepSpec::validate() const {
  for (const auto& a : axes) a.validate();
}

const Axis& SweepSpec::axis(const std::string& name) const {
  for (const auto& a : axes)
    if (a.name == name) return a;
  throw UsageError("sweep has no axis '" + name + "'");
}

void GlobalOptions::validate() const {
  if (!(l_abs > 0.0) || !std::isfinite(l_abs)) throw UsageError("--labs must be positive");
  if (n_max < 1 || n_max > 200) throw UsageError("--nmax must lie in [1, 200]");
  if (starts < 4) throw UsageError("--starts must be >= 4");
  if (precision < 1 || precision > 17) throw UsageError("--precision must lie in [1, 17]");
  if (jobs < 0) throw UsageError("--jobs must be >= 0");
}

int GlobalOptions::worker_count() const {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::string> fidelity_figures() { return {"f1a", "f1b", "f2a", "f2b", "f3a", "f3b", "f4a", "f4b", "f5a", "f5b"}; }

SweepSpec default_sweep(const std::string& command, const std::string& figure) {
  SweepSpec s;
  if (command == "estimate-surface") {
    s.axes = {{"q", 0.0, 0.99, 34, false}, {"l", 0.0, 2.0, 41, false}};
  } else if (command == "bound-surface") {
    s.axes = {{"q", 0.0, 0.95, 20, false}, {"l", 0.0, 2.0, 21, false}};
  } else if (command == "distance-curves" || command == "compare") {
    s.axes = {{"l", 0.0, 1.0, 21, false}};
  } else if (command == "available-entanglement") {
    s.axes = {{"zeta", 0.5, 3.0, 26, false}};
  } else if (command == "fidelity") {
    const std::string f = figure.substr(0, 2);
    if (f == "f1" || f == "f3") s.axes = {{"zeta", 0.0, 3.0, 31, false}, {"t2", 0.5, 1.0, 26, false}};
    else if (f == "f2") s.axes = {{"zeta", 0.05, 3.0, 60, false}};
    else if (f == "f4") s.axes = {{"l2", 0.0, 0.2, 41, false}};
    else if (f == "f5") s.axes = {{"l12", 0.0, 0.5, 26, false}};
    else throw UsageError("unknown figure '" + figure + "'");
  } else {
    throw UsageError("unknown command '" + command + "'");
  }
  return s;
}

}  // namespace cvent::cli
