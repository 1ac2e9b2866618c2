#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace novlab {

struct RunConfig {
  std::string command;     // generate-data | solve | decompose | study
  std::string study_name;  // lemma31 | shorttime | separation | inequalities
  double s = 3.0;
  double p = 2.0;
  double lambda = 68.0 / 48.0;
  int num_terms = 12;
  std::size_t grid_points = std::size_t{1} << 18;
  /// 0 selects the length near 128 that is commensurate with lambda.
  double domain_length = 0.0;
  /// 0 selects min(1e-4, t/64) per target time.
  double dt = 0.0;
  double t_final = 0.01;
  double delta = 0.1;
  int n_min = 5;
  int n_max = 11;
  std::uint64_t seed = 20240917;
  int corpus_size = 100;
  int num_times = 6;
  bool delta_sweep = true;
  bool ablation = false;
  std::string output_path = ".";

  /// key=value lines in the format read by --config.
  std::string to_config_text() const;
};

const std::vector<std::string>& known_commands();
const std::vector<std::string>& known_studies();

/// Parses `# comment` / `key=value` lines. Keys are the long flag names.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Throws InvalidArgument naming the violated constraint.
void validate(const RunConfig& config);

/// A parsed config, or an exit code when parsing ended early (help, usage error).
using ParseOutcome = std::variant<RunConfig, int>;

/// Defaults < --config file < flags. --dump-config PATH writes the effective
/// configuration and returns exit code 0 without running.
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace novlab
