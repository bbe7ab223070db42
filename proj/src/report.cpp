#include "logeuler/report.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "logeuler/errors.hpp"

namespace logeuler {

CheckResult& Report::add_upper(const std::string& name, double metric,
                               double tolerance, const std::string& detail) {
  checks.push_back({name, metric <= tolerance, metric, tolerance, detail});
  return checks.back();
}

CheckResult& Report::add_lower(const std::string& name, double metric,
                               double tolerance, const std::string& detail) {
  checks.push_back({name, metric >= tolerance, metric, tolerance, detail});
  return checks.back();
}

CheckResult& Report::add_flag(const std::string& name, bool pass,
                              const std::string& detail) {
  checks.push_back({name, pass, pass ? 0.0 : 1.0, 0.0, detail});
  return checks.back();
}

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void write_report_json(const Report& report, const std::filesystem::path& path) {
  nlohmann::json j;
  j["command"] = report.command;
  j["seed"] = report.seed;
  j["pass"] = report.pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"metric", c.metric},
                           {"tolerance", c.tolerance},
                           {"detail", c.detail}});
  }
  j["artifacts"] = report.artifacts;

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

void print_summary(const Report& report, std::ostream& os) {
  for (const auto& c : report.checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  metric="
       << CsvWriter::format(c.metric) << " tol=" << CsvWriter::format(c.tolerance);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (report.pass() ? "PASS" : "FAIL") << ": " << report.command << " ("
     << report.checks.size() << " checks)\n";
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path), out_(path) {
  if (!out_) throw ConfigError("cannot write " + path.string());
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    out_ << (i ? "," : "") << names[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format(values[i]);
  out_ << "\n";
}

void CsvWriter::raw_row(const std::string& line) { out_ << line << "\n"; }

std::string CsvWriter::format(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace logeuler
