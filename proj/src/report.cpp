#include "novlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "novlab/error.hpp"

namespace novlab {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void StudyReport::set_parameter(const std::string& key, const std::string& value) {
  auto it = std::find_if(parameters_.begin(), parameters_.end(),
                         [&key](const auto& kv) { return kv.first == key; });
  if (it != parameters_.end()) {
    it->second = value;
  } else {
    parameters_.emplace_back(key, value);
  }
}

void StudyReport::set_parameter(const std::string& key, double value) {
  set_parameter(key, format_number(value));
}

void StudyReport::declare_tolerance(const std::string& key, double value) {
  set_parameter("tol." + key, value);
}

double StudyReport::tolerance(const std::string& key) const {
  return std::stod(parameter("tol." + key));
}

std::string StudyReport::parameter(const std::string& key) const {
  for (const auto& [k, v] : parameters_) {
    if (k == key) return v;
  }
  throw InvalidArgument("report " + name_ + " has no parameter " + key);
}

void StudyReport::set_columns(std::vector<std::string> columns, bool log_x) {
  columns_ = std::move(columns);
  log_x_ = log_x;
}

void StudyReport::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) throw InvalidArgument("row width does not match columns");
  rows_.push_back(std::move(row));
}

void StudyReport::add_fit(const std::string& label, const ScalingFit& fit) {
  set_parameter("fit." + label + ".slope", fit.slope);
  set_parameter("fit." + label + ".intercept", fit.intercept);
  set_parameter("fit." + label + ".r_squared", fit.r_squared);
}

void StudyReport::add_verdict(const std::string& name, double value,
                              const std::string& tolerance_key, const std::string& expectation,
                              bool passed) {
  (void)parameter("tol." + tolerance_key);
  verdicts_.push_back(Verdict{name, value, tolerance_key, expectation, passed});
}

const Verdict& StudyReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts_) {
    if (v.name == name) return v;
  }
  throw InvalidArgument("report " + name_ + " has no verdict " + name);
}

bool StudyReport::passed() const {
  return std::all_of(verdicts_.begin(), verdicts_.end(), [](const Verdict& v) { return v.passed; });
}

std::string StudyReport::to_csv(std::string_view timestamp) const {
  std::ostringstream out;
  out << "# study=" << name_ << '\n';
  if (!timestamp.empty()) out << "# generated=" << timestamp << '\n';
  for (const auto& [k, v] : parameters_) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  out << "# verdict:\n";
  for (const auto& v : verdicts_) {
    out << "# verdict: " << v.name << ' ' << (v.passed ? "PASS" : "FAIL")
        << " value=" << format_number(v.value) << " tol=tol." << v.tolerance_key
        << " expect=" << v.expectation << '\n';
  }
  out << "# verdict: overall " << (passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string StudyReport::plot_script(std::string_view csv_file) const {
  std::ostringstream out;
  out << "# gnuplot script for " << csv_file << "\n"
      << "set datafile separator ','\n"
      << "set datafile commentschars '#'\n"
      << "set key autotitle columnhead\n"
      << "set logscale y 2\n";
  if (log_x_) out << "set logscale x 2\n";
  out << "set xlabel '" << (columns_.empty() ? "" : columns_.front()) << "'\n"
      << "set title '" << name_ << "'\n"
      << "set terminal pngcairo size 900,600\n"
      << "set output '" << name_ << ".png'\n"
      << "plot";
  for (std::size_t c = 1; c < columns_.size(); ++c) {
    out << (c > 1 ? "," : "") << " '" << csv_file << "' using 1:" << c + 1
        << " with linespoints";
  }
  out << '\n';
  return out.str();
}

std::filesystem::path write_report(const StudyReport& report, const std::filesystem::path& dir,
                                   std::string_view timestamp) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError("output directory " + dir.string() + " does not exist");
  }
  const auto csv = dir / (report.name() + ".csv");
  const auto gp = dir / (report.name() + ".gp");
  const auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw IoError("write failed for " + path.string());
  };
  write(csv, report.to_csv(timestamp));
  write(gp, report.plot_script(csv.filename().string()));
  return csv;
}

}  // namespace novlab
