#include "novlab/studies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "novlab/error.hpp"
#include "novlab/novikov.hpp"
#include "novlab/parallel.hpp"
#include "novlab/spectral.hpp"

namespace novlab {
namespace {

std::string label(const char* stem, double value) { return std::string(stem) + "@" + format_number(value); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// min over the upper half of the sequence divided by the median of all of it.
double plateau_ratio(const std::vector<double>& v) {
  const std::size_t upper = v.size() / 2;
  const double lowest = *std::min_element(v.begin() + static_cast<long>(upper), v.end());
  const double mid = median(v);
  return mid > 0.0 ? lowest / mid : 0.0;
}

void describe(StudyReport& report, const IllposedDataParams& params) {
  report.set_parameter("s", params.s);
  report.set_parameter("p", params.p);
  report.set_parameter("lambda", params.lambda);
  report.set_parameter("num_terms", static_cast<double>(params.num_terms));
  report.set_parameter("grid_points", static_cast<double>(params.grid.size()));
  report.set_parameter("domain_length", params.grid.length());
  report.set_parameter("nyquist", params.grid.nyquist());
  report.set_parameter("bump_inner_radius", params.bump.inner_radius);
  report.set_parameter("bump_outer_radius", params.bump.outer_radius);
  // The line problem is truncated to a periodic box; this is the bump's size at the box edge.
  const RealField bump = build_bump(params.bump, params.grid);
  report.set_parameter("bump_at_origin", bump.at_origin());
  report.set_parameter("bump_at_box_edge", std::abs(bump[0]));
  report.set_parameter("rounding_floor_factor", kRoundingFloorFactor);
}

void check_verdict_band(StudyReport& report, const std::string& name, double value,
                        double expected, const std::string& tol_key) {
  const double tol = report.tolerance(tol_key);
  std::ostringstream expect;
  expect << "|value - (" << format_number(expected) << ")| <= tol";
  report.add_verdict(name, value, tol_key, expect.str(), std::abs(value - expected) <= tol);
}

/// Smallest n from which the normalized sequence stays within 10% of its last value.
double onset_index(const std::vector<int>& ns, const std::vector<double>& normalized) {
  const double last = normalized.back();
  std::size_t i = normalized.size();
  while (i > 0 && std::abs(normalized[i - 1] / last - 1.0) <= 0.1) --i;
  return i < normalized.size() ? ns[i] : ns.back();
}

}  // namespace

IllposedDataParams default_study_params(double s, double p, double lambda) {
  IllposedDataParams params;
  params.s = s;
  params.p = p;
  params.lambda = lambda;
  params.num_terms = 12;
  params.grid = Grid(1u << 18, commensurate_length(lambda, 128.0));
  return params;
}

StudyReport study_lemma31(const IllposedDataParams& params, int n_min, int n_max) {
  return study_lemma31(params, build_initial_data(params), n_min, n_max);
}

StudyReport study_lemma31(const IllposedDataParams& params, const InitialData& data, int n_min,
                          int n_max) {
  require_illposed_range(params.s, params.p);
  const LPFilterBank bank(params.grid);
  if (n_min < 3 || n_max < n_min + 2 || n_max >= params.num_terms || n_max > bank.j_max()) {
    throw InvalidArgument("lemma31 needs 3 <= n_min, n_min + 2 <= n_max < num_terms, n_max <= j_max");
  }

  StudyReport report("lemma31");
  describe(report, params);
  report.set_parameter("n_min", static_cast<double>(n_min));
  report.set_parameter("n_max", static_cast<double>(n_max));
  report.declare_tolerance("slope", 0.1);
  report.declare_tolerance("r2_min", 0.99);
  report.declare_tolerance("plateau_ratio", 0.5);
  report.set_columns({"n", "rho_norm", "u_norm", "rho_normalized", "u_normalized"});

  std::vector<int> ns;
  for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
  std::vector<double> rho_norm(ns.size()), u_norm(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const int n = ns[i];
    const RealField drho = derivative(dyadic_block(bank, data.rho0, n));
    const RealField du = derivative(dyadic_block(bank, data.u0, n));
    rho_norm[i] = lp_norm(triple_product(data.u0, data.u0, drho), params.p);
    u_norm[i] = lp_norm(triple_product(data.u0, data.u0, du), params.p);
  });

  std::vector<std::pair<double, double>> rho_pts, u_pts;
  std::vector<double> rho_scaled, u_scaled;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = ns[i];
    rho_scaled.push_back(std::exp2(n * (params.s - 2.0)) * rho_norm[i]);
    u_scaled.push_back(std::exp2(n * (params.s - 1.0)) * u_norm[i]);
    report.add_row({n, rho_norm[i], u_norm[i], rho_scaled.back(), u_scaled.back()});
    rho_pts.emplace_back(n, rho_norm[i]);
    u_pts.emplace_back(n, u_norm[i]);
  }
  const ScalingFit rho_fit = fit_powerlaw(rho_pts, FitAxis::Dyadic);
  const ScalingFit u_fit = fit_powerlaw(u_pts, FitAxis::Dyadic);
  report.add_fit("rho", rho_fit);
  report.add_fit("u", u_fit);
  report.set_parameter("onset_n_rho", onset_index(ns, rho_scaled));
  report.set_parameter("onset_n_u", onset_index(ns, u_scaled));

  check_verdict_band(report, "rho_slope", rho_fit.slope, -(params.s - 2.0), "slope");
  check_verdict_band(report, "u_slope", u_fit.slope, -(params.s - 1.0), "slope");
  const double r2 = report.tolerance("r2_min");
  report.add_verdict("rho_r_squared", rho_fit.r_squared, "r2_min", "value >= tol",
                     rho_fit.r_squared >= r2);
  report.add_verdict("u_r_squared", u_fit.r_squared, "r2_min", "value >= tol",
                     u_fit.r_squared >= r2);
  const double floor_tol = report.tolerance("plateau_ratio");
  const auto floor_ratio = [](const std::vector<double>& v) {
    return *std::min_element(v.begin(), v.end()) / median(v);
  };
  report.add_verdict("rho_normalized_floor", floor_ratio(rho_scaled), "plateau_ratio",
                     "min/median >= tol", floor_ratio(rho_scaled) >= floor_tol);
  report.add_verdict("u_normalized_floor", floor_ratio(u_scaled), "plateau_ratio",
                     "min/median >= tol", floor_ratio(u_scaled) >= floor_tol);
  return report;
}

std::vector<double> geometric_times(double t0, int count) {
  std::vector<double> times;
  for (int k = 0; k < count; ++k) times.push_back(std::ldexp(t0, -k));
  return times;
}

StudyReport study_shorttime(const IllposedDataParams& params, const std::vector<double>& times,
                            const ShorttimeOptions& options) {
  require_illposed_range(params.s, params.p);
  if (times.size() < 3 || std::any_of(times.begin(), times.end(), [](double t) { return !(t > 0.0); })) {
    throw InvalidArgument("shorttime needs at least three positive times");
  }
  if (!(options.dt_scale > 0.0)) throw InvalidArgument("dt_scale must be positive");

  const InitialData data = build_initial_data(params);
  const LPFilterBank bank(params.grid);
  const FirstVariation fv = options.drop_first_variation
                                ? FirstVariation{RealField::zeros(params.grid),
                                                 RealField::zeros(params.grid)}
                                : first_variation(data.rho0, data.u0);

  StudyReport report(options.drop_first_variation ? "shorttime_ablation" : "shorttime");
  describe(report, params);
  report.set_parameter("dt_rule", "min(1e-4, t/64)");
  report.set_parameter("dt_scale", options.dt_scale);
  report.set_parameter("drop_first_variation", options.drop_first_variation ? "1" : "0");
  report.declare_tolerance("first_order", 0.1);
  report.declare_tolerance("second_order", 0.2);
  report.set_columns({"t", "rho_dist_s-2", "u_dist_s-1", "rho_resid_s-3", "u_resid_s-2", "dt"},
                     true);

  const double s = params.s;
  const double p = params.p;
  const double rho_floor = rounding_floor(data.rho0);
  const double u_floor = rounding_floor(data.u0);
  struct Point {
    double values[4];
    double dt;
  };
  std::vector<Point> pts(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const double t = times[i];
    SolverConfig cfg;
    cfg.t_final = t;
    cfg.dt = default_time_step(t) * options.dt_scale;
    const Trajectory traj = integrate(SystemState{data.rho0, data.u0, 0.0}, cfg);
    const SystemState& end = traj.states.back();
    const RealField drho = end.rho - data.rho0;
    const RealField du = end.u - data.u0;
    pts[i].values[0] = besov_norm(bank, drho, {s - 2.0, p, kInfinity}, rho_floor);
    pts[i].values[1] = besov_norm(bank, du, {s - 1.0, p, kInfinity}, u_floor);
    pts[i].values[2] =
        besov_norm(bank, RealField::axpy(drho, -t, fv.v0), {s - 3.0, p, kInfinity}, rho_floor);
    pts[i].values[3] =
        besov_norm(bank, RealField::axpy(du, -t, fv.w0), {s - 2.0, p, kInfinity}, u_floor);
    pts[i].dt = t / static_cast<double>(traj.step_times.size());
  });

  std::vector<std::vector<std::pair<double, double>>> series(4);
  for (std::size_t i = 0; i < times.size(); ++i) {
    report.add_row({times[i], pts[i].values[0], pts[i].values[1], pts[i].values[2],
                    pts[i].values[3], pts[i].dt});
    for (int c = 0; c < 4; ++c) series[c].emplace_back(times[i], pts[i].values[c]);
  }
  const char* names[4] = {"rho_dist", "u_dist", "rho_resid", "u_resid"};
  for (int c = 0; c < 4; ++c) {
    const ScalingFit fit = fit_powerlaw(series[c], FitAxis::Time);
    report.add_fit(names[c], fit);
    const bool second = c >= 2 && !options.drop_first_variation;
    check_verdict_band(report, std::string(names[c]) + "_order", fit.slope, second ? 2.0 : 1.0,
                       second ? "second_order" : "first_order");
  }
  return report;
}

StudyReport study_separation(const IllposedDataParams& params, int n_min, int n_max,
                             const SeparationOptions& options) {
  require_illposed_range(params.s, params.p);
  const LPFilterBank bank(params.grid);
  if (n_min < 1 || n_max < n_min + 2 || n_max >= params.num_terms || n_max > bank.j_max()) {
    throw InvalidArgument("separation needs 1 <= n_min, n_min + 2 <= n_max <= num_terms - 1, n_max <= j_max");
  }
  if (options.deltas.empty() ||
      std::any_of(options.deltas.begin(), options.deltas.end(), [](double d) { return !(d > 0.0); })) {
    throw InvalidArgument("separation needs positive deltas");
  }
  if (options.audit_points < 1) throw InvalidArgument("audit_points must be positive");

  const InitialData data = build_initial_data(params);
  const RealField bump = build_bump(params.bump, params.grid);

  struct Case {
    bool control;
    double delta;
  };
  std::vector<Case> cases;
  for (double d : options.deltas) cases.push_back({false, d});
  if (options.include_control) cases.push_back({true, options.deltas.front()});

  struct Task {
    std::size_t c;
    int n;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    for (int n = n_min; n <= n_max; ++n) tasks.push_back({c, n});
  }

  const double s = params.s;
  const double p = params.p;
  const auto energy = [&](const RealField& rho, const RealField& u) {
    return besov_norm(bank, rho, {s - 1.0, p, kInfinity}) + besov_norm(bank, u, {s, p, kInfinity});
  };
  const double energy_constructed = energy(data.rho0, data.u0);
  const double energy_control = energy(bump, bump);

  struct Result {
    double t, dist_rho, dist_u, block_n, energy_ratio;
  };
  std::vector<Result> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Case& cs = cases[tasks[i].c];
    const int n = tasks[i].n;
    const RealField& rho0 = cs.control ? bump : data.rho0;
    const RealField& u0 = cs.control ? bump : data.u0;
    const double e0 = cs.control ? energy_control : energy_constructed;
    const double t = std::ldexp(cs.delta, -n);
    SolverConfig cfg;
    cfg.t_final = t;
    cfg.dt = default_time_step(t);
    for (int k = 1; k < options.audit_points; ++k) {
      cfg.checkpoints.push_back(t * k / options.audit_points);
    }
    const Trajectory traj = integrate(SystemState{rho0, u0, 0.0}, cfg);
    double worst = 1.0;
    for (const auto& st : traj.states) worst = std::max(worst, energy(st.rho, st.u) / e0);
    const SystemState& end = traj.states.back();
    const auto seq_rho = besov_sequence(bank, end.rho - rho0, s - 1.0, p, rounding_floor(rho0));
    const auto seq_u = besov_sequence(bank, end.u - u0, s, p, rounding_floor(u0));
    const double dr = *std::max_element(seq_rho.begin(), seq_rho.end());
    const double du = *std::max_element(seq_u.begin(), seq_u.end());
    const auto idx = static_cast<std::size_t>(n + 1);
    results[i] = Result{t, dr, du, seq_rho[idx] + seq_u[idx], worst};
  });

  StudyReport report("separation");
  describe(report, params);
  report.set_parameter("n_min", static_cast<double>(n_min));
  report.set_parameter("n_max", static_cast<double>(n_max));
  std::string delta_list;
  for (double d : options.deltas) delta_list += (delta_list.empty() ? "" : ";") + format_number(d);
  report.set_parameter("deltas", delta_list);
  report.set_parameter("control_datum", "rho0 = u0 = phi");
  report.set_parameter("dt_rule", "min(1e-4, t/64)");
  report.declare_tolerance("min_slope", -0.1);
  report.declare_tolerance("plateau_ratio", 0.5);
  report.declare_tolerance("control_max_slope", -0.9);
  report.declare_tolerance("energy_factor", 2.0);
  report.declare_tolerance("delta_linearity", 0.2);
  report.set_columns({"n", "control", "delta", "t", "rho_dist_s-1", "u_dist_s", "D", "block_n",
                      "energy_ratio"});

  std::vector<double> medians(cases.size());
  for (std::size_t c = 0; c < cases.size(); ++c) {
    std::vector<std::pair<double, double>> d_pts, block_pts;
    std::vector<double> ds, blocks;
    double worst_energy = 0.0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].c != c) continue;
      const Result& r = results[i];
      const double n = tasks[i].n;
      const double d = r.dist_rho + r.dist_u;
      report.add_row({n, cases[c].control ? 1.0 : 0.0, cases[c].delta, r.t, r.dist_rho, r.dist_u,
                      d, r.block_n, r.energy_ratio});
      d_pts.emplace_back(n, d);
      block_pts.emplace_back(n, r.block_n);
      ds.push_back(d);
      blocks.push_back(r.block_n);
      worst_energy = std::max(worst_energy, r.energy_ratio);
    }
    medians[c] = median(ds);
    const std::string tag = cases[c].control ? std::string("control")
                                             : label("delta", cases[c].delta);
    const ScalingFit d_fit = fit_powerlaw(d_pts, FitAxis::Dyadic);
    report.add_fit("D." + tag, d_fit);
    report.set_parameter("info.D_median." + tag, medians[c]);
    if (!cases[c].control) {
      // The smooth control has nothing in block n; its block-n column is zero.
      report.add_fit("block_n." + tag, fit_powerlaw(block_pts, FitAxis::Dyadic));
      report.set_parameter("info.block_n_plateau_ratio." + tag, plateau_ratio(blocks));
    }
    if (cases[c].control) {
      report.add_verdict("control_slope", d_fit.slope, "control_max_slope", "value <= tol",
                         d_fit.slope <= report.tolerance("control_max_slope"));
    } else {
      report.add_verdict("separation_slope." + tag, d_fit.slope, "min_slope", "value >= tol",
                         d_fit.slope >= report.tolerance("min_slope"));
      const double ratio = plateau_ratio(ds);
      report.add_verdict("separation_plateau." + tag, ratio, "plateau_ratio",
                         "min(upper half)/median >= tol",
                         ratio >= report.tolerance("plateau_ratio"));
    }
    report.add_verdict("energy." + tag, worst_energy, "energy_factor", "value <= tol",
                       worst_energy <= report.tolerance("energy_factor"));
  }

  // Leading term is linear in delta: halving delta should halve the typical separation.
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    if (!cases[c].control) order.push_back(c);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return cases[a].delta < cases[b].delta; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Case& lo = cases[order[k - 1]];
    const Case& hi = cases[order[k]];
    const double measured = medians[order[k]] / medians[order[k - 1]];
    const double rel = measured / (hi.delta / lo.delta) - 1.0;
    report.add_verdict("delta_linearity." + format_number(hi.delta) + "/" + format_number(lo.delta),
                       rel, "delta_linearity", "|median ratio / delta ratio - 1| <= tol",
                       std::abs(rel) <= report.tolerance("delta_linearity"));
  }
  return report;
}

double product_law_ratio(const LPFilterBank& bank, const RealField& u, const RealField& v,
                         double s, double p) {
  const double lhs = besov_norm(bank, product(u, v), {s - 2.0, p, kInfinity});
  if (lhs == 0.0) return 0.0;
  const double rhs = besov_norm(bank, u, {s - 2.0, p, kInfinity}) *
                     besov_norm(bank, v, {s - 1.0, p, kInfinity});
  return lhs / rhs;
}

double commutator_ratio(const LPFilterBank& bank, const RealField& u, const RealField& v,
                        double s, double p) {
  double lhs = 0.0;
  for (int j = -1; j <= bank.j_max(); ++j) {
    lhs = std::max(lhs, std::exp2(j * s) * lp_norm(commutator(bank, j, u, v), p));
  }
  if (lhs == 0.0) return 0.0;
  const double rhs =
      lp_norm(derivative(u), kInfinity) * besov_norm(bank, v, {s, p, kInfinity}) +
      lp_norm(derivative(v), kInfinity) * besov_norm(bank, u, {s, p, kInfinity});
  return lhs / rhs;
}

RealField random_band_limited_field(const Grid& grid, double max_frequency, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> slope(0.5, 3.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double beta = slope(rng);
  HalfSpectrum spec(grid);
  spec.data[0] = 0.5 * gauss(rng);
  for (std::size_t k = 1; k + 1 < spec.data.size(); ++k) {
    const double xi = grid.frequency(static_cast<long>(k));
    if (xi > max_frequency) break;
    const double envelope = std::pow(1.0 + xi, -beta);
    const double re = gauss(rng);
    const double im = gauss(rng);
    spec.data[k] = envelope * Complex(re, im) / std::sqrt(2.0);
  }
  return spectral::to_field(spec);
}

Grid inequality_grid() { return Grid(1024, 64.0); }

StudyReport study_inequalities(int corpus_size, std::uint64_t seed, double s, double p) {
  if (corpus_size < 100) throw InvalidArgument("inequality corpora need at least 100 samples");
  if (!(s > std::max(1.0 + (std::isinf(p) ? 0.0 : 1.0 / p), 1.5))) {
    throw InvalidArgument("product law needs s > max{1 + 1/p, 3/2}");
  }
  const Grid grid = inequality_grid();
  const LPFilterBank bank(grid);
  // Quadratic interactions must stay inside the covered band.
  const double band = bank.covered_frequency() / 3.0;

  StudyReport report("inequalities");
  report.set_parameter("corpus_size", static_cast<double>(corpus_size));
  report.set_parameter("seed", std::to_string(seed));
  report.set_parameter("corpus_seeds", std::to_string(seed) + ";" + std::to_string(seed + 1));
  report.set_parameter("s", s);
  report.set_parameter("p", p);
  report.set_parameter("grid_points", static_cast<double>(grid.size()));
  report.set_parameter("domain_length", grid.length());
  report.set_parameter("band_limit", band);
  report.declare_tolerance("stability_factor", 2.0);
  report.declare_tolerance("finite", 0.0);
  report.set_columns({"index", "corpus", "product_ratio", "commutator_ratio"});

  double max_product[2] = {0.0, 0.0};
  double max_commutator[2] = {0.0, 0.0};
  for (int corpus = 0; corpus < 2; ++corpus) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(corpus));
    std::vector<std::pair<RealField, RealField>> pairs;
    for (int i = 0; i < corpus_size; ++i) {
      RealField u = random_band_limited_field(grid, band, rng);
      RealField v = random_band_limited_field(grid, band, rng);
      pairs.emplace_back(std::move(u), std::move(v));
    }
    std::vector<double> prod(pairs.size()), comm(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
      prod[i] = product_law_ratio(bank, pairs[i].first, pairs[i].second, s, p);
      comm[i] = commutator_ratio(bank, pairs[i].first, pairs[i].second, s, p);
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      report.add_row({static_cast<double>(i), static_cast<double>(corpus), prod[i], comm[i]});
      max_product[corpus] = std::max(max_product[corpus], prod[i]);
      max_commutator[corpus] = std::max(max_commutator[corpus], comm[i]);
    }
  }

  for (int c = 0; c < 2; ++c) {
    const std::string tag = std::to_string(c);
    report.set_parameter("max_product_ratio." + tag, max_product[c]);
    report.set_parameter("max_commutator_ratio." + tag, max_commutator[c]);
    report.add_verdict("product_max_finite." + tag, max_product[c], "finite",
                       "finite and > tol", std::isfinite(max_product[c]) && max_product[c] > 0.0);
    report.add_verdict("commutator_max_finite." + tag, max_commutator[c], "finite",
                       "finite and > tol",
                       std::isfinite(max_commutator[c]) && max_commutator[c] > 0.0);
  }
  const auto spread = [](const double* m) {
    const double lo = std::min(m[0], m[1]);
    return lo > 0.0 ? std::max(m[0], m[1]) / lo : kInfinity;
  };
  const double tol = report.tolerance("stability_factor");
  report.add_verdict("product_stability", spread(max_product), "stability_factor",
                     "max/min across corpora <= tol", spread(max_product) <= tol);
  report.add_verdict("commutator_stability", spread(max_commutator), "stability_factor",
                     "max/min across corpora <= tol", spread(max_commutator) <= tol);
  return report;
}

}  // namespace novlab
