#include "novlab/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "novlab/error.hpp"
#include "novlab/illposed_data.hpp"
#include "novlab/report.hpp"

namespace novlab {
namespace {

constexpr const char* kRanges =
    "Admissible ranges:\n"
    "  s > max{2 + 1/p, 5/2}, p in [1, inf]\n"
    "  lambda in [67/48, 69/48] = [1.395833, 1.4375]\n"
    "Thread count: NOVLAB_THREADS (default: hardware concurrency).\n"
    "Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage or I/O error.";

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void build_app(CLI::App& app, RunConfig& cfg, std::string& dump_path, std::string& config_path) {
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("command", cfg.command, "generate-data | solve | decompose | study");
  app.add_option("study", cfg.study_name, "lemma31 | shorttime | separation | inequalities");
  app.add_option("--s", cfg.s, "regularity index")->capture_default_str();
  app.add_option("--p", cfg.p, "integrability index (inf allowed)")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "base carrier frequency")->capture_default_str();
  app.add_option("--num-terms", cfg.num_terms, "terms N in the data series")->capture_default_str();
  app.add_option("--grid-points", cfg.grid_points, "grid size (power of two)")
      ->capture_default_str();
  app.add_option("--domain-length", cfg.domain_length,
                 "periodic box length; 0 = commensurate length near 128")
      ->capture_default_str();
  app.add_option("--dt", cfg.dt, "RK4 step; 0 = min(1e-4, t/64)")->capture_default_str();
  app.add_option("--t-final", cfg.t_final, "solve: final time; shorttime: largest time")
      ->capture_default_str();
  app.add_option("--delta", cfg.delta, "separation: t_n = delta 2^-n")->capture_default_str();
  app.add_option("--n-min", cfg.n_min, "smallest dyadic index")->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "largest dyadic index")->capture_default_str();
  app.add_option("--seed", cfg.seed, "inequalities: corpus seed (second corpus uses seed+1)")
      ->capture_default_str();
  app.add_option("--corpus-size", cfg.corpus_size, "inequalities: samples per corpus")
      ->capture_default_str();
  app.add_option("--num-times", cfg.num_times, "shorttime: times t_final 2^-k, k < num-times")
      ->capture_default_str();
  app.add_option("--delta-sweep", cfg.delta_sweep, "separation: also run delta/2 and 2 delta")
      ->capture_default_str();
  app.add_option("--ablation", cfg.ablation, "shorttime: drop the first variation (v0 = w0 = 0)")
      ->capture_default_str();
  app.add_option("--output-path", cfg.output_path, "existing output directory")
      ->capture_default_str();
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--dump-config", dump_path, "write the effective configuration and exit");
  app.footer(kRanges);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names{"generate-data", "solve", "decompose", "study"};
  return names;
}

const std::vector<std::string>& known_studies() {
  static const std::vector<std::string> names{"lemma31", "shorttime", "separation",
                                              "inequalities"};
  return names;
}

std::string RunConfig::to_config_text() const {
  std::ostringstream out;
  out << "command=" << command << '\n';
  if (!study_name.empty()) out << "study=" << study_name << '\n';
  out << "s=" << format_number(s) << '\n'
      << "p=" << format_number(p) << '\n'
      << "lambda=" << format_number(lambda) << '\n'
      << "num-terms=" << num_terms << '\n'
      << "grid-points=" << grid_points << '\n'
      << "domain-length=" << format_number(domain_length) << '\n'
      << "dt=" << format_number(dt) << '\n'
      << "t-final=" << format_number(t_final) << '\n'
      << "delta=" << format_number(delta) << '\n'
      << "n-min=" << n_min << '\n'
      << "n-max=" << n_max << '\n'
      << "seed=" << seed << '\n'
      << "corpus-size=" << corpus_size << '\n'
      << "num-times=" << num_times << '\n'
      << "delta-sweep=" << (delta_sweep ? "true" : "false") << '\n'
      << "ablation=" << (ablation ? "true" : "false") << '\n'
      << "output-path=" << output_path << '\n';
  return out.str();
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(number) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw InvalidArgument("config line " + std::to_string(number) + ": empty key");
    }
    entries[key] = trim(line.substr(eq + 1));
  }
  return entries;
}

void validate(const RunConfig& c) {
  if (!contains(known_commands(), c.command)) {
    throw InvalidArgument("command must be one of generate-data, solve, decompose, study");
  }
  if (c.command == "study" && !contains(known_studies(), c.study_name)) {
    throw InvalidArgument("study must be one of lemma31, shorttime, separation, inequalities");
  }
  if (c.command != "study" && !c.study_name.empty()) {
    throw InvalidArgument("a study name is only accepted by the study command");
  }
  if (!(c.p >= 1.0)) throw InvalidArgument("p must lie in [1, inf]");
  require_illposed_range(c.s, c.p);
  require_lambda_range(c.lambda);
  if (c.num_terms < 1) throw InvalidArgument("num-terms must be >= 1");
  if (c.grid_points < 16 || (c.grid_points & (c.grid_points - 1)) != 0) {
    throw InvalidArgument("grid-points must be a power of two >= 16");
  }
  if (!(c.domain_length >= 0.0) || !std::isfinite(c.domain_length)) {
    throw InvalidArgument("domain-length must be finite and >= 0");
  }
  if (!(c.dt >= 0.0) || !std::isfinite(c.dt)) throw InvalidArgument("dt must be finite and >= 0");
  if (!(c.t_final >= 0.0) || !std::isfinite(c.t_final)) {
    throw InvalidArgument("t-final must be finite and >= 0");
  }
  if (!(c.delta > 0.0) || !std::isfinite(c.delta)) throw InvalidArgument("delta must be > 0");
  if (c.n_min > c.n_max) throw InvalidArgument("n-min must not exceed n-max");
  if (c.corpus_size < 100) throw InvalidArgument("corpus-size must be >= 100");
  if (c.num_times < 3) throw InvalidArgument("num-times must be >= 3");
  if (c.output_path.empty()) throw InvalidArgument("output-path must not be empty");
  if (c.command == "study" && c.study_name == "shorttime" && !(c.t_final > 0.0)) {
    throw InvalidArgument("shorttime needs t-final > 0");
  }
}

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string dump_path;
  std::string config_path;

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        err << "error: cannot read config file " << config_path << '\n';
        return 2;
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      std::vector<std::string> tokens;
      const auto entries = parse_config_text(buffer.str());
      if (auto it = entries.find("command"); it != entries.end()) tokens.push_back(it->second);
      if (auto it = entries.find("study"); it != entries.end()) tokens.push_back(it->second);
      for (const auto& [key, value] : entries) {
        if (key == "command" || key == "study") continue;
        if (key == "config" || key == "dump-config") {
          throw InvalidArgument("config files cannot set " + key);
        }
        tokens.push_back("--" + key);
        tokens.push_back(value);
      }
      std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes a reversed vector
      std::string ignored_dump, ignored_config;
      CLI::App file_app("novlab");
      build_app(file_app, cfg, ignored_dump, ignored_config);
      try {
        file_app.parse(tokens);
      } catch (const CLI::ParseError& e) {
        err << "error: config file " << config_path << ": " << e.what() << '\n';
        return 2;
      }
    }

    CLI::App app("Two-component Novikov system: Besov toolkit, solver and ill-posedness studies",
                 "novlab");
    build_app(app, cfg, dump_path, config_path);
    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }

    validate(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (!dump_path.empty()) {
    std::ofstream dump(dump_path);
    if (!(dump << cfg.to_config_text())) {
      err << "error: cannot write config to " << dump_path << '\n';
      return 2;
    }
    return 0;
  }
  return cfg;
}

}  // namespace novlab
