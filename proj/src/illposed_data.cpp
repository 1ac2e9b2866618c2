#include "novlab/illposed_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "novlab/error.hpp"
#include "novlab/littlewood_paley.hpp"
#include "novlab/novikov.hpp"
#include "novlab/spectral.hpp"

namespace novlab {
namespace {

// Half spectrum (sample-0 phase convention) of the periodization of a line
// function with even Fourier transform `hat`, centred at x = 0.
HalfSpectrum periodized(const Grid& grid, const std::function<double(double)>& hat) {
  HalfSpectrum s(grid);
  const double inv_length = 1.0 / grid.length();
  for (std::size_t k = 0; k < s.data.size(); ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s.data[k] = sign * hat(grid.frequency(static_cast<long>(k))) * inv_length;
  }
  return s;
}

}  // namespace

double bump_profile(const BumpSpec& spec, double xi) {
  const double width = spec.outer_radius - spec.inner_radius;
  return 1.0 - smooth_step((std::abs(xi) - spec.inner_radius) / width);
}

RealField build_bump(const BumpSpec& spec, const Grid& grid) {
  if (!(spec.inner_radius > 0.0) || !(spec.outer_radius > spec.inner_radius)) {
    throw InvalidArgument("bump radii must satisfy 0 < inner < outer");
  }
  if (!(spec.outer_radius < grid.nyquist())) throw ResolutionError("bump support above Nyquist");
  return spectral::to_field(
      periodized(grid, [&spec](double xi) { return bump_profile(spec, xi); }));
}

RealField modulated_bump(const BumpSpec& spec, const Grid& grid, double carrier) {
  if (!(carrier + spec.outer_radius < grid.nyquist())) {
    throw ResolutionError("modulated bump at carrier " + std::to_string(carrier) +
                          " exceeds Nyquist " + std::to_string(grid.nyquist()));
  }
  return spectral::to_field(periodized(grid, [&spec, carrier](double xi) {
    return 0.5 * (bump_profile(spec, xi - carrier) + bump_profile(spec, xi + carrier));
  }));
}

double regularity_threshold(double p) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::max(2.0 + inv_p, 2.5);
}

void require_illposed_range(double s, double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidArgument("p must lie in [1, inf]");
  if (!(s > regularity_threshold(p))) {
    std::ostringstream msg;
    msg << "s = " << s << " violates s > max{2 + 1/p, 5/2} = " << regularity_threshold(p);
    throw InvalidArgument(msg.str());
  }
}

void require_lambda_range(double lambda) {
  if (!(lambda >= kLambdaMin && lambda <= kLambdaMax)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambda = " << lambda << " outside [67/48, 69/48] = [" << kLambdaMin << ", "
        << kLambdaMax << "]";
    throw InvalidArgument(msg.str());
  }
}

double IllposedDataParams::max_frequency() const {
  const double top = std::ldexp(1.0, num_terms - 1);
  return lambda * top * (1.0 + 1.0 / (2.0 * top));
}

InitialData build_initial_data(const IllposedDataParams& params) {
  require_lambda_range(params.lambda);
  if (!(params.s > 1.0)) throw InvalidArgument("data regularity s must exceed 1");
  if (std::isnan(params.p) || params.p < 1.0) throw InvalidArgument("p must lie in [1, inf]");
  if (params.num_terms < 1) throw InvalidArgument("num_terms must be at least 1");
  if (!(params.max_frequency() < params.grid.nyquist())) {
    std::ostringstream msg;
    msg << "top synthesized band " << params.max_frequency() << " (num_terms = "
        << params.num_terms << ") is not below the Nyquist frequency " << params.grid.nyquist();
    throw ResolutionError(msg.str());
  }

  const Grid& grid = params.grid;
  std::vector<double> rho(grid.size(), 0.0);
  std::vector<double> u(grid.size(), 0.0);
  for (int n = 0; n < params.num_terms; ++n) {
    const RealField band = modulated_bump(params.bump, grid, params.lambda * std::ldexp(1.0, n));
    const double rho_weight = std::exp2(-n * (params.s - 1.0));
    const double u_weight = std::exp2(-n * params.s);
    for (std::size_t m = 0; m < grid.size(); ++m) {
      rho[m] += rho_weight * band[m];
      u[m] += u_weight * band[m];
    }
  }

  const double bump_norm = lp_norm(build_bump(params.bump, grid), params.p);
  const auto tail = [&](double exponent) {
    return std::exp2(-params.num_terms * exponent) / (1.0 - std::exp2(-exponent)) * bump_norm;
  };
  return InitialData{RealField(grid, std::move(rho)), RealField(grid, std::move(u)),
                     tail(params.s - 1.0), tail(params.s)};
}

FirstVariation first_variation(const RealField& rho0, const RealField& u0) {
  require_same_grid(rho0, u0);
  const RealField rho_x = derivative(rho0);
  const RealField u_x = derivative(u0);
  RealField v0 = triple_product(u0, u0, rho_x) + triple_product(rho0, u0, u_x);
  RealField w0 = compute_P(u0) + compute_Q(u0, rho0) + triple_product(u0, u0, u_x);
  return FirstVariation{std::move(v0), std::move(w0)};
}

FloorCheck pointwise_floor_check(const RealField& u0) {
  const double origin = u0.at_origin();
  const double origin_sq = origin * origin;
  if (origin_sq == 0.0) throw DegenerateData("floor violated at origin: u0(0) = 0");
  const double floor = 0.5 * origin_sq;
  const std::size_t centre = u0.grid().origin_index();
  std::size_t radius = 0;
  while (radius + 1 < centre) {
    const double left = u0[centre - radius - 1];
    const double right = u0[centre + radius + 1];
    if (left * left < floor || right * right < floor) break;
    ++radius;
  }
  if (radius == 0) throw DegenerateData("floor holds only at the origin sample");
  return FloorCheck{static_cast<double>(radius) * u0.grid().spacing(), floor, origin_sq};
}

}  // namespace novlab
