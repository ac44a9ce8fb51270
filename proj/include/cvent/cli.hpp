#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvent::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  bool log_spaced = false;

  // "start:stop:count" or "start:stop:count:log"
  static Axis parse(const std::string& name, const std::string& text);
  void validate() const;
  std::vector<double> values() const;
};

struct SweepSpec {
  std::vector<Axis> axes;
  std::map<std::string, double> fixed;
  std::string output_path;

  void validate() const;
  const Axis& axis(const std::string& name) const;
};

struct GlobalOptions {
  double l_abs = 1.0;
  int n_max = 30;
  int starts = 8;
  std::uint64_t seed = 42;
  int precision = 9;
  int jobs = 0;  // 0: hardware concurrency
  std::string out;

  void validate() const;
  int worker_count() const;
};

// Every table ends with a "flag" column: 0 clean, 1 flagged.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  // true when at least one row carries a numerical failure
  bool failed = false;

  void validate() const;
  void write(std::ostream& os, int precision) const;
};

std::string format_number(double v, int precision);

struct RowResult {
  std::vector<double> values;
  bool flagged = false;
  bool failed = false;
};

// Evaluates rows on a worker pool and assembles them in index order.
// Numerical exceptions become failed rows filled with NaN.
CsvTable evaluate_rows(std::vector<std::string> header, std::size_t n_rows,
                       const std::function<RowResult(std::size_t)>& row, int jobs);

enum class EstimateForm { Printed, Direct };

CsvTable cmd_estimate_surface(const SweepSpec& spec, const GlobalOptions& opt, EstimateForm form);
CsvTable cmd_bound_surface(const SweepSpec& spec, const GlobalOptions& opt);
CsvTable cmd_distance_curves(const SweepSpec& spec, const GlobalOptions& opt);
CsvTable cmd_compare(const SweepSpec& spec, const GlobalOptions& opt);
CsvTable cmd_available_entanglement(const SweepSpec& spec, const GlobalOptions& opt);
CsvTable cmd_fidelity(const std::string& figure, const SweepSpec& spec, const GlobalOptions& opt);

// Default sweep of each command; axes may be overridden from the command line.
SweepSpec default_sweep(const std::string& command, const std::string& figure = "");
std::vector<std::string> fidelity_figures();

// Exit codes: 0 success, 2 usage error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvent::cli
