#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

namespace logeuler {

struct CheckResult {
  std::string name;
  bool pass = false;
  double metric = 0.0;     ///< worst observed value
  double tolerance = 0.0;  ///< threshold the metric was held against
  std::string detail;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;

  /// metric must stay at or below tolerance.
  CheckResult& add_upper(const std::string& name, double metric, double tolerance,
                         const std::string& detail = {});
  /// metric must reach at least tolerance (convergence orders).
  CheckResult& add_lower(const std::string& name, double metric, double tolerance,
                         const std::string& detail = {});
  CheckResult& add_flag(const std::string& name, bool pass, const std::string& detail = {});

  bool pass() const;
};

void write_report_json(const Report& report, const std::filesystem::path& path);
void print_summary(const Report& report, std::ostream& os);

/// Deterministic CSV writer: doubles are printed with %.17g.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);
  const std::filesystem::path& path() const { return path_; }

  static std::string format(double value);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace logeuler
