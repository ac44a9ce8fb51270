#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "cvent/cli.hpp"
#include "cvent/errors.hpp"

namespace cvent::cli {

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

void CsvTable::validate() const {
  if (header.empty() || header.back() != "flag") throw std::logic_error("CsvTable: header must end with flag");
  for (const auto& r : rows)
    if (r.size() != header.size()) throw std::logic_error("CsvTable: ragged row");
}

void CsvTable::write(std::ostream& os, int precision) const {
  validate();
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i], precision);
    os << '\n';
  }
}

CsvTable evaluate_rows(std::vector<std::string> header, std::size_t n_rows,
                       const std::function<RowResult(std::size_t)>& row, int jobs) {
  CsvTable t;
  t.header = std::move(header);
  t.header.push_back("flag");
  const std::size_t width = t.header.size();
  std::vector<RowResult> results(n_rows);
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n_rows; i = next++) {
      try {
        results[i] = row(i);
      } catch (const NumericalError&) {
        results[i].failed = true;
      } catch (const RangeError&) {
        results[i].failed = true;
      } catch (...) {
        std::lock_guard<std::mutex> lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(n_rows)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  for (auto& r : results) {
    std::vector<double> v = std::move(r.values);
    if (r.failed) v.assign(width - 1, std::numeric_limits<double>::quiet_NaN());
    if (v.size() != width - 1) throw std::logic_error("evaluate_rows: row width mismatch");
    v.push_back(r.failed || r.flagged ? 1.0 : 0.0);
    t.failed = t.failed || r.failed;
    t.rows.push_back(std::move(v));
  }
  return t;
}

}  // namespace cvent::cli
