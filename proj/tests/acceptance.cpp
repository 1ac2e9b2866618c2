// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned below.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "novlab/illposed_data.hpp"
#include "novlab/littlewood_paley.hpp"
#include "novlab/novikov.hpp"
#include "novlab/spectral.hpp"
#include "novlab/studies.hpp"

using namespace novlab;

namespace {

constexpr double kLocalizationTol = 1e-8;
constexpr double kUniformBoundTol = 0.01;
constexpr double kModeExactTol = 1e-10;
constexpr double kRk4Order = 4.0;
constexpr double kRk4OrderTol = 0.3;
constexpr std::uint64_t kSeed = 20240917;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " | " << detail
            << std::endl;
  if (!pass) ++failures;
}

std::string verdict_summary(const StudyReport& r, const std::vector<std::string>& names, bool& pass) {
  std::ostringstream out;
  for (const auto& n : names) {
    const Verdict& v = r.verdict(n);
    pass = pass && v.passed;
    out << n << "=" << format_number(v.value) << (v.passed ? " ok; " : " FAIL; ");
  }
  return out.str();
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void criterion1(const IllposedDataParams& params) {
  const LPFilterBank bank(params.grid);
  double worst_identity = 0.0;
  double worst_residual = 0.0;
  for (int n = 3; n <= 11; ++n) {
    const RealField f = modulated_bump(params.bump, params.grid, std::ldexp(params.lambda, n));
    const double norm = lp_norm(f, 2.0);
    for (int j = 3; j <= 11; ++j) {
      const RealField b = dyadic_block(bank, f, j);
      if (j == n) {
        worst_identity = std::max(worst_identity, lp_norm(b - f, 2.0) / norm);
      } else {
        worst_residual = std::max(worst_residual, lp_norm(b, 2.0) / norm);
      }
    }
  }
  std::ostringstream d;
  d << "max identity err=" << worst_identity << " max residual=" << worst_residual
    << " tol=" << kLocalizationTol;
  report(1, "frequency localization of phi cos(lambda 2^n x)",
         worst_identity < kLocalizationTol && worst_residual < kLocalizationTol, d.str());
}

void criterion2(const IllposedDataParams& base) {
  const LPFilterBank bank(base.grid);
  const std::vector<std::pair<double, double>> indices{{3.0, 2.0}, {3.0, kInfinity}, {2.6, 1.0}};
  double worst = 0.0;
  std::ostringstream d;
  for (const auto& [s, p] : indices) {
    double rho_lo = kInfinity, rho_hi = 0.0, u_lo = kInfinity, u_hi = 0.0;
    for (int N = 8; N <= 12; ++N) {
      IllposedDataParams params = base;
      params.s = s;
      params.p = p;
      params.num_terms = N;
      const InitialData data = build_initial_data(params);
      const double r = besov_norm(bank, data.rho0, {s - 1.0, p, kInfinity});
      const double u = besov_norm(bank, data.u0, {s, p, kInfinity});
      rho_lo = std::min(rho_lo, r);
      rho_hi = std::max(rho_hi, r);
      u_lo = std::min(u_lo, u);
      u_hi = std::max(u_hi, u);
    }
    const double var = std::max((rho_hi - rho_lo) / rho_hi, (u_hi - u_lo) / u_hi);
    worst = std::max(worst, var);
    d << "(s=" << s << ",p=" << format_number(p) << ") rel var=" << var << "; ";
  }
  d << "tol=" << kUniformBoundTol;
  report(2, "uniform Besov bounds of rho0, u0 for N = 8..12", worst < kUniformBoundTol, d.str());
}

void criterion3(const IllposedDataParams& params) {
  const StudyReport r = study_lemma31(params, 5, 11);
  bool pass = true;
  const std::string d =
      verdict_summary(r, {"rho_slope", "u_slope", "rho_r_squared", "u_r_squared"}, pass);
  report(3, "localized product slopes -(s-2), -(s-1) +- 0.1 with r^2 >= 0.99", pass, d);
}

void criterion4(const IllposedDataParams& params) {
  const StudyReport r = study_shorttime(params, geometric_times(1e-2, 6));
  bool pass = true;
  const std::string d = verdict_summary(
      r, {"rho_dist_order", "u_dist_order", "rho_resid_order", "u_resid_order"}, pass);
  report(4, "short-time orders 1 +- 0.1 and 2 +- 0.2", pass, d);
}

void criteria5and6(const IllposedDataParams& params) {
  SeparationOptions opts;
  opts.deltas = {0.1};
  opts.include_control = true;
  const StudyReport r = study_separation(params, 5, 11, opts);
  bool pass5 = true;
  std::string d5 = verdict_summary(
      r, {"separation_slope.delta@0.1", "separation_plateau.delta@0.1", "control_slope"}, pass5);
  d5 += "info: block-n slope=" + r.parameter("fit.block_n.delta@0.1.slope") +
        " block-n plateau=" + r.parameter("info.block_n_plateau_ratio.delta@0.1");
  report(5, "separation D_n along t_n = 0.1 2^-n does not decay; control decays", pass5, d5);

  bool pass6 = true;
  const std::string d6 = verdict_summary(r, {"energy.delta@0.1", "energy.control"}, pass6);
  report(6, "energy audit within 2x of the initial value", pass6, d6);
}

void criterion7() {
  const StudyReport r = study_inequalities(100, kSeed);
  bool pass = true;
  const std::string d = verdict_summary(
      r,
      {"product_max_finite.0", "product_max_finite.1", "commutator_max_finite.0",
       "commutator_max_finite.1", "product_stability", "commutator_stability"},
      pass);
  report(7, "inequality corpora finite and stable within 2x", pass, d);
}

double mode_exactness_error() {
  const Grid g(1024, 40.0);
  double worst = 0.0;
  for (long k = 1; k < 512; ++k) {
    const double xi = g.frequency(k);
    const RealField f = RealField::sample(g, [&](double x) { return std::cos(xi * x); });
    const SpectralCoeffs c = forward_transform(f);
    for (long q = c.min_wavenumber(); q <= c.max_wavenumber(); ++q) {
      const double expected = std::abs(q) == k ? 0.5 : 0.0;
      worst = std::max(worst, std::abs(c.coeff(q) - expected));
    }
    const RealField df = derivative(f);
    const RealField hf = helmholtz_inverse(f);
    for (std::size_t m = 0; m < g.size(); ++m) {
      const double x = g.position(m);
      worst = std::max(worst, std::abs(df[m] + xi * std::sin(xi * x)) / xi);
      worst = std::max(worst, std::abs(hf[m] - std::cos(xi * x) / (1.0 + xi * xi)));
    }
  }
  return worst;
}

double rk4_order() {
  const Grid g(64, 2.0 * std::numbers::pi);
  const SystemState s0{
      RealField::sample(g, [](double x) { return 0.3 * std::cos(x) + 0.1 * std::sin(2 * x); }),
      RealField::sample(g, [](double x) { return 0.5 * std::cos(x) + 0.2 * std::sin(2 * x); }), 0.0};
  const auto solve = [&](int steps) {
    SolverConfig cfg;
    cfg.t_final = 0.5;
    cfg.dt = 0.5 / steps;
    return integrate(s0, cfg).states.back();
  };
  const SystemState ref = solve(640);
  const auto err = [&](int steps) {
    const SystemState x = solve(steps);
    return lp_norm(x.u - ref.u, kInfinity) + lp_norm(x.rho - ref.rho, kInfinity);
  };
  return std::log2(err(20) / err(40));
}

bool reproducible(const IllposedDataParams& params) {
  const bool ineq = study_inequalities(100, kSeed).to_csv() == study_inequalities(100, kSeed).to_csv();
  const bool localized = study_lemma31(params, 5, 11).to_csv() == study_lemma31(params, 5, 11).to_csv();
  const InitialData data = build_initial_data(params);
  SolverConfig cfg;
  cfg.t_final = 3e-4;
  cfg.dt = 1e-4;
  const SystemState a = integrate({data.rho0, data.u0, 0.0}, cfg).states.back();
  const SystemState b = integrate({data.rho0, data.u0, 0.0}, cfg).states.back();
  bool same = true;
  for (std::size_t m = 0; m < a.u.size(); ++m) same = same && a.u[m] == b.u[m] && a.rho[m] == b.rho[m];
  return ineq && localized && same;
}

void criterion8(const IllposedDataParams& params) {
  const double mode_err = mode_exactness_error();
  const double order = rk4_order();
  const bool repro = reproducible(params);
  std::ostringstream d;
  d << "per-mode err=" << mode_err << " (tol " << kModeExactTol << "); RK4 order=" << order
    << " (4 +- " << kRk4OrderTol << "); bit-reproducible=" << (repro ? "yes" : "no");
  report(8, "numerical hygiene", mode_err < kModeExactTol &&
                                     std::abs(order - kRk4Order) <= kRk4OrderTol && repro,
         d.str());
}

}  // namespace

int main() {
  const IllposedDataParams params = default_study_params();
  std::cout << "acceptance: grid " << params.grid.size() << " points, L = "
            << params.grid.length() << ", N = " << params.num_terms << ", j_max = "
            << LPFilterBank(params.grid).j_max() << std::endl;
  const std::vector<std::pair<void (*)(const IllposedDataParams&), const char*>> steps{
      {criterion1, "1"}, {criterion2, "2"}, {criterion3, "3"}, {criterion4, "4"},
      {criteria5and6, "5-6"}, {[](const IllposedDataParams&) { criterion7(); }, "7"},
      {criterion8, "8"}};
  for (const auto& [fn, label] : steps) {
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(params);
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion " << label << ": aborted with " << e.what() << std::endl;
      ++failures;
    }
    std::cout << "  (" << label << " took " << elapsed(start) << " s)" << std::endl;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria PASS" : "acceptance: failures = ")
            << (failures == 0 ? "" : std::to_string(failures)) << std::endl;
  return failures == 0 ? 0 : 1;
}
