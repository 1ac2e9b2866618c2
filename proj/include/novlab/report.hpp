#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "novlab/powerfit.hpp"

namespace novlab {

/// Shortest round-trip decimal form of a double ("inf", "-inf", "nan" for non-finite).
std::string format_number(double value);

struct Verdict {
  std::string name;
  double value;
  std::string tolerance_key;  // declared as "tol.<key>" in the header
  std::string expectation;    // human-readable condition, e.g. "|value + 1| <= tol"
  bool passed;
};

/// Tabular study output: `# key=value` header, one CSV row per data point,
/// trailing `# verdict:` block.
class StudyReport {
 public:
  explicit StudyReport(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  void set_parameter(const std::string& key, const std::string& value);
  void set_parameter(const std::string& key, double value);
  void declare_tolerance(const std::string& key, double value);
  double tolerance(const std::string& key) const;

  void set_columns(std::vector<std::string> columns, bool log_x = false);
  void add_row(std::vector<double> row);
  void add_fit(const std::string& label, const ScalingFit& fit);

  /// Throws InvalidArgument unless tolerance_key was declared.
  void add_verdict(const std::string& name, double value, const std::string& tolerance_key,
                   const std::string& expectation, bool passed);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  const std::vector<Verdict>& verdicts() const noexcept { return verdicts_; }
  const Verdict& verdict(const std::string& name) const;
  std::string parameter(const std::string& key) const;
  bool passed() const;

  /// `timestamp` is emitted as `# generated=...` when non-empty.
  std::string to_csv(std::string_view timestamp = {}) const;

  /// gnuplot script plotting every data column against the first.
  std::string plot_script(std::string_view csv_file) const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, std::string>> parameters_;
  std::vector<std::string> columns_;
  bool log_x_ = false;
  std::vector<std::vector<double>> rows_;
  std::vector<Verdict> verdicts_;
};

/// Writes <dir>/<name>.csv and <dir>/<name>.gp. The directory must exist.
/// Throws IoError naming the path on failure.
std::filesystem::path write_report(const StudyReport& report, const std::filesystem::path& dir,
                                   std::string_view timestamp = {});

}  // namespace novlab
