#include <catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "novlab/error.hpp"
#include "novlab/field_io.hpp"
#include "novlab/parallel.hpp"
#include "novlab/powerfit.hpp"
#include "novlab/report.hpp"
#include "novlab/studies.hpp"

using namespace novlab;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("novlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("power-law fits", "[fit]") {
  std::vector<std::pair<double, double>> pts;
  for (int n = 0; n < 6; ++n) pts.emplace_back(n, std::exp2(-2.0 * n));
  ScalingFit fit = fit_powerlaw(pts, FitAxis::Dyadic);
  CHECK(fit.slope == Approx(-2.0));
  CHECK(fit.r_squared == Approx(1.0));
  CHECK(fit.intercept == Approx(0.0).margin(1e-12));

  pts.clear();
  for (double t : {0.1, 0.05, 0.025, 0.0125}) pts.emplace_back(t, 3.0 * t * t);
  fit = fit_powerlaw(pts, FitAxis::Time);
  CHECK(fit.slope == Approx(2.0));
  CHECK(fit.intercept == Approx(std::log2(3.0)));

  pts = {{1, 5.0}, {2, 5.0}, {3, 5.0}};
  fit = fit_powerlaw(pts, FitAxis::Dyadic);
  CHECK(fit.slope == Approx(0.0).margin(1e-15));
  CHECK(fit.r_squared == 1.0);

  CHECK_THROWS_AS(fit_powerlaw(std::vector<std::pair<double, double>>{{1, 1.0}, {2, 2.0}}, FitAxis::Dyadic),
                  DegenerateData);
  pts = {{1, 1.0}, {2, 0.0}, {3, 2.0}};
  CHECK_THROWS_AS(fit_powerlaw(pts, FitAxis::Dyadic), DegenerateData);
  pts = {{0.0, 1.0}, {2, 1.0}, {3, 2.0}};
  CHECK_THROWS_AS(fit_powerlaw(pts, FitAxis::Time), DegenerateData);
}

TEST_CASE("study report CSV layout", "[report]") {
  StudyReport r("demo");
  r.set_parameter("s", 3.0);
  r.declare_tolerance("slope", 0.1);
  r.set_columns({"n", "value"});
  r.add_row({1.0, 0.5});
  CHECK_THROWS_AS(r.add_row({1.0}), InvalidArgument);
  r.add_verdict("slope_ok", -1.02, "slope", "|value + 1| <= tol", true);
  CHECK_THROWS_AS(r.add_verdict("x", 0.0, "undeclared", "", true), InvalidArgument);
  CHECK(r.passed());
  CHECK(r.tolerance("slope") == 0.1);
  const std::string csv = r.to_csv("2026-01-01T00:00:00Z");
  CHECK(csv ==
        "# study=demo\n# generated=2026-01-01T00:00:00Z\n# s=3\n# tol.slope=0.1\nn,value\n1,0.5\n"
        "# verdict:\n# verdict: slope_ok PASS value=-1.02 tol=tol.slope expect=|value + 1| <= tol\n"
        "# verdict: overall PASS\n");
  r.add_verdict("other", 2.0, "slope", "value <= tol", false);
  CHECK_FALSE(r.passed());
  CHECK(r.to_csv().find("# verdict: overall FAIL") != std::string::npos);
  CHECK(r.plot_script("demo.csv").find("using 1:2") != std::string::npos);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-kInfinity) == "-inf");

  const fs::path dir = scratch_dir("report");
  const fs::path csv_path = write_report(r, dir);
  CHECK(fs::exists(csv_path));
  CHECK(fs::exists(dir / "demo.gp"));
  CHECK_THROWS_AS(write_report(r, dir / "missing"), IoError);
  CHECK_FALSE(fs::exists(dir / "missing"));
}

TEST_CASE("parallel_for runs each index once and propagates errors", "[parallel]") {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw DegenerateData("boom");
                  }),
                  DegenerateData);
  CHECK(worker_count() >= 1);
}

TEST_CASE("field dumps round-trip bit for bit", "[io]") {
  const Grid g(32, 3.5);
  FieldDump dump;
  dump.grid = g;
  dump.time = 0.125;
  dump.fields.emplace_back("rho", RealField::sample(g, [](double x) { return std::sin(x) / 3.0; }));
  dump.fields.emplace_back("u", RealField::sample(g, [](double x) { return std::exp(x); }));
  dump.metadata.emplace_back("lambda", "1.4166666666666667");
  const fs::path path = scratch_dir("io") / "state.nvf";
  write_field_dump(path, dump);
  const FieldDump back = read_field_dump(path);
  CHECK(back.grid == g);
  CHECK(back.time == 0.125);
  REQUIRE(back.fields.size() == 2);
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(back.field("rho")[m] == dump.field("rho")[m]);
    CHECK(back.field("u")[m] == dump.field("u")[m]);
  }
  CHECK(back.metadata == dump.metadata);
  CHECK_THROWS_AS(back.field("w"), InvalidArgument);
  CHECK_THROWS_AS(read_field_dump(path.parent_path() / "nope.nvf"), IoError);
  {
    std::ofstream bad(path.parent_path() / "bad.nvf");
    bad << "not a dump\n";
  }
  CHECK_THROWS_AS(read_field_dump(path.parent_path() / "bad.nvf"), IoError);
}

TEST_CASE("geometric times and default study parameters", "[studies]") {
  const auto t = geometric_times(1e-2, 4);
  REQUIRE(t.size() == 4);
  CHECK(t[3] == 1.25e-3);
  const IllposedDataParams p = default_study_params();
  CHECK(p.grid.size() == (1u << 18));
  CHECK(p.num_terms == 12);
  CHECK(LPFilterBank(p.grid).j_max() == 11);
  CHECK(p.max_frequency() < LPFilterBank(p.grid).covered_frequency());
}

TEST_CASE("lemma31 study on the default data", "[studies]") {
  const IllposedDataParams params = default_study_params();
  const StudyReport r = study_lemma31(params, 5, 11);
  CHECK(r.rows().size() == 7);
  CHECK(r.verdict("rho_slope").passed);
  CHECK(r.verdict("u_slope").passed);
  CHECK(std::stod(r.parameter("fit.rho.slope")) == Approx(-1.0).margin(0.1));
  CHECK(std::stod(r.parameter("fit.u.slope")) == Approx(-2.0).margin(0.1));

  InitialData data = build_initial_data(params);
  data.u0 = RealField::zeros(params.grid);
  CHECK_THROWS_AS(study_lemma31(params, data, 5, 11), DegenerateData);
  CHECK_THROWS_AS(study_lemma31(params, 2, 11), InvalidArgument);
  CHECK_THROWS_AS(study_lemma31(params, 5, 12), InvalidArgument);
  IllposedDataParams low = params;
  low.s = 2.4;
  CHECK_THROWS_AS(study_lemma31(low, 5, 11), InvalidArgument);
}

TEST_CASE("lemma31 norms are resolution independent", "[studies]") {
  IllposedDataParams coarse = default_study_params();
  IllposedDataParams fine = coarse;
  fine.grid = Grid(coarse.grid.size() * 2, coarse.grid.length());
  const StudyReport a = study_lemma31(coarse, 5, 11);
  const StudyReport b = study_lemma31(fine, 5, 11);
  for (std::size_t i = 0; i < a.rows().size(); ++i) {
    CHECK(b.rows()[i][1] == Approx(a.rows()[i][1]).epsilon(0.005));
    CHECK(b.rows()[i][2] == Approx(a.rows()[i][2]).epsilon(0.005));
  }
}

TEST_CASE("inequality ratios on special pairs", "[studies]") {
  const Grid g = inequality_grid();
  const LPFilterBank bank(g);
  std::mt19937_64 rng(3);
  const RealField u = random_band_limited_field(g, 10.0, rng);
  const double same = product_law_ratio(bank, u, u, 3.0, 2.0);
  CHECK(std::isfinite(same));
  CHECK(same > 0.0);
  CHECK(commutator_ratio(bank, u, u, 3.0, 2.0) > 0.0);
  CHECK(commutator_ratio(bank, u, RealField::constant(g, 1.5), 3.0, 2.0) == 0.0);
  const HalfSpectrum s = spectral::to_spectrum(u);
  CHECK(spectral::energy_fraction_above(s, 10.0) < 1e-28);
}

TEST_CASE("inequality study is seeded and reproducible", "[studies]") {
  const StudyReport a = study_inequalities(100, 42);
  const StudyReport b = study_inequalities(100, 42);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.rows().size() == 200);
  CHECK(a.passed());
  CHECK(study_inequalities(100, 43).to_csv() != a.to_csv());
  CHECK_THROWS_AS(study_inequalities(99, 42), InvalidArgument);
}

TEST_CASE("short-time study on a coarse grid", "[studies]") {
  IllposedDataParams params = default_study_params();
  params.num_terms = 7;
  params.grid = Grid(1u << 14, commensurate_length(params.lambda, 128.0));
  const StudyReport r = study_shorttime(params, geometric_times(1e-2, 4));
  CHECK(r.rows().size() == 4);
  CHECK(r.verdict("rho_dist_order").passed);
  CHECK(r.verdict("u_dist_order").passed);
  CHECK(r.verdict("rho_resid_order").passed);
  CHECK(r.verdict("u_resid_order").passed);

  ShorttimeOptions ablation;
  ablation.drop_first_variation = true;
  const StudyReport ab = study_shorttime(params, geometric_times(1e-2, 4), ablation);
  CHECK(ab.name() == "shorttime_ablation");
  CHECK(std::stod(ab.parameter("fit.rho_resid.slope")) == Approx(1.0).margin(0.1));
  CHECK(std::stod(ab.parameter("fit.u_resid.slope")) == Approx(1.0).margin(0.1));
  CHECK_THROWS_AS(study_shorttime(params, {1e-2, 5e-3}), InvalidArgument);
}

TEST_CASE("separation study bookkeeping on a coarse grid", "[studies]") {
  IllposedDataParams params = default_study_params();
  params.num_terms = 7;
  params.grid = Grid(1u << 14, commensurate_length(params.lambda, 128.0));
  SeparationOptions opts;
  opts.deltas = {0.1, 0.05};
  opts.audit_points = 2;
  const StudyReport r = study_separation(params, 3, 6, opts);
  CHECK(r.rows().size() == 12);
  CHECK(r.verdict("control_slope").passed);
  CHECK(r.verdict("energy.delta@0.1").passed);
  CHECK_NOTHROW(r.verdict("delta_linearity.0.1/0.05"));
  CHECK_NOTHROW(r.verdict("separation_slope.delta@0.05"));
  CHECK_THROWS_AS(study_separation(params, 3, 7, opts), InvalidArgument);
}
