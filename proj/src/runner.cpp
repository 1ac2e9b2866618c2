#include "novlab/runner.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <ostream>

#include "novlab/error.hpp"
#include "novlab/field_io.hpp"
#include "novlab/littlewood_paley.hpp"
#include "novlab/novikov.hpp"
#include "novlab/spectral.hpp"
#include "novlab/studies.hpp"

namespace novlab {
namespace {

namespace fs = std::filesystem;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void describe_run(StudyReport& report, const RunConfig& config) {
  report.set_parameter("command", config.command);
  report.set_parameter("seed", std::to_string(config.seed));
}

FieldDump make_dump(const Grid& grid, double time, const RunConfig& config) {
  FieldDump dump;
  dump.grid = grid;
  dump.time = time;
  dump.metadata.emplace_back("s", format_number(config.s));
  dump.metadata.emplace_back("p", format_number(config.p));
  dump.metadata.emplace_back("lambda", format_number(config.lambda));
  dump.metadata.emplace_back("num_terms", std::to_string(config.num_terms));
  return dump;
}

StudyReport run_generate(const RunConfig& config, const fs::path& dir) {
  const IllposedDataParams params = data_params(config);
  const InitialData data = build_initial_data(params);
  FieldDump dump = make_dump(params.grid, 0.0, config);
  dump.fields.emplace_back("rho0", data.rho0);
  dump.fields.emplace_back("u0", data.u0);
  write_field_dump(dir / "initial_data.nvf", dump);

  const LPFilterBank bank(params.grid);
  StudyReport report("generate_data");
  describe_run(report, config);
  report.set_parameter("grid_points", static_cast<double>(params.grid.size()));
  report.set_parameter("domain_length", params.grid.length());
  report.set_parameter("rho_tail_bound", data.rho_tail_bound);
  report.set_parameter("u_tail_bound", data.u_tail_bound);
  report.set_parameter("u0_at_origin", data.u0.at_origin());
  report.set_parameter("field_dump", "initial_data.nvf");
  report.set_columns({"j", "rho0_weighted_s-1", "u0_weighted_s"});
  const auto rho_seq = besov_sequence(bank, data.rho0, config.s - 1.0, config.p);
  const auto u_seq = besov_sequence(bank, data.u0, config.s, config.p);
  for (std::size_t i = 0; i < rho_seq.size(); ++i) {
    report.add_row({static_cast<double>(i) - 1.0, rho_seq[i], u_seq[i]});
  }
  return report;
}

StudyReport run_solve(const RunConfig& config, const fs::path& dir) {
  const IllposedDataParams params = data_params(config);
  const InitialData data = build_initial_data(params);
  SolverConfig cfg;
  cfg.t_final = config.t_final;
  cfg.dt = config.dt > 0.0 ? config.dt : default_time_step(config.t_final);
  const Trajectory traj = integrate(SystemState{data.rho0, data.u0, 0.0}, cfg);

  const LPFilterBank bank(params.grid);
  StudyReport report("solve");
  describe_run(report, config);
  report.set_parameter("t_final", config.t_final);
  report.set_parameter("dt", cfg.dt);
  report.set_parameter("steps", static_cast<double>(traj.step_times.size()));
  report.set_parameter("states", static_cast<double>(traj.states.size()));
  report.set_columns({"t", "rho_sup", "u_sup", "energy"});
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const SystemState& st = traj.states[i];
    const double energy = besov_norm(bank, st.rho, {config.s - 1.0, config.p, kInfinity}) +
                          besov_norm(bank, st.u, {config.s, config.p, kInfinity});
    report.add_row({st.time, lp_norm(st.rho, kInfinity), lp_norm(st.u, kInfinity), energy});
    FieldDump dump = make_dump(params.grid, st.time, config);
    dump.fields.emplace_back("rho", st.rho);
    dump.fields.emplace_back("u", st.u);
    write_field_dump(dir / ("solve_" + std::to_string(i) + ".nvf"), dump);
  }
  return report;
}

StudyReport run_decompose(const RunConfig& config, const fs::path& dir) {
  const IllposedDataParams params = data_params(config);
  const InitialData data = build_initial_data(params);
  const LPFilterBank bank(params.grid);
  const DyadicDecomposition rho = decompose(bank, data.rho0);
  const DyadicDecomposition u = decompose(bank, data.u0);

  FieldDump dump = make_dump(params.grid, 0.0, config);
  StudyReport report("decompose");
  describe_run(report, config);
  report.set_parameter("j_max", static_cast<double>(bank.j_max()));
  report.set_parameter("covered_frequency", bank.covered_frequency());
  report.set_columns({"j", "rho0_block_lp", "u0_block_lp"});
  for (int j = -1; j <= bank.j_max(); ++j) {
    report.add_row({static_cast<double>(j), lp_norm(rho.block(j), config.p),
                    lp_norm(u.block(j), config.p)});
    dump.fields.emplace_back("rho0_block_" + std::to_string(j), rho.block(j));
    dump.fields.emplace_back("u0_block_" + std::to_string(j), u.block(j));
  }
  write_field_dump(dir / "decompose.nvf", dump);
  return report;
}

StudyReport run_study(const RunConfig& config) {
  const IllposedDataParams params = data_params(config);
  StudyReport report("");
  if (config.study_name == "lemma31") {
    report = study_lemma31(params, config.n_min, config.n_max);
  } else if (config.study_name == "shorttime") {
    ShorttimeOptions opts;
    opts.drop_first_variation = config.ablation;
    if (config.dt > 0.0) opts.dt_scale = config.dt / default_time_step(config.t_final);
    report = study_shorttime(params, geometric_times(config.t_final, config.num_times), opts);
  } else if (config.study_name == "separation") {
    SeparationOptions opts;
    opts.deltas = config.delta_sweep
                      ? std::vector<double>{config.delta, config.delta / 2.0, config.delta * 2.0}
                      : std::vector<double>{config.delta};
    report = study_separation(params, config.n_min, config.n_max, opts);
  } else {
    report = study_inequalities(config.corpus_size, config.seed, config.s, config.p);
  }
  describe_run(report, config);
  return report;
}

}  // namespace

IllposedDataParams data_params(const RunConfig& config) {
  IllposedDataParams params = default_study_params(config.s, config.p, config.lambda);
  params.num_terms = config.num_terms;
  const double length = config.domain_length > 0.0
                            ? config.domain_length
                            : commensurate_length(config.lambda, 128.0);
  params.grid = Grid(config.grid_points, length);
  return params;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const fs::path dir(config.output_path);
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      err << "error: output directory " << dir.string() << " does not exist\n";
      return 2;
    }
    StudyReport report("");
    if (config.command == "generate-data") {
      report = run_generate(config, dir);
    } else if (config.command == "solve") {
      report = run_solve(config, dir);
    } else if (config.command == "decompose") {
      report = run_decompose(config, dir);
    } else {
      report = run_study(config);
    }
    const fs::path csv = write_report(report, dir, utc_timestamp());
    out << "wrote " << csv.string() << '\n';
    for (const Verdict& v : report.verdicts()) {
      out << (v.passed ? "PASS " : "FAIL ") << v.name << " = " << format_number(v.value) << '\n';
    }
    return report.passed() ? 0 : 1;
  } catch (const BlowUp& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace novlab
