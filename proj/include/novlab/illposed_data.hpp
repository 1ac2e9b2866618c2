#pragma once

#include "novlab/field.hpp"

namespace novlab {

inline constexpr double kLambdaMin = 67.0 / 48.0;
inline constexpr double kLambdaMax = 69.0 / 48.0;
inline constexpr double kLambdaDefault = 68.0 / 48.0;

/// Fourier profile of the bump: 1 on |xi| <= inner_radius, 0 on |xi| >= outer_radius,
/// with the glued-exponential transition in between.
struct BumpSpec {
  double inner_radius = 0.25;
  double outer_radius = 0.5;
};

double bump_profile(const BumpSpec& spec, double xi);

/// The bump phi with Fourier transform bump_profile, synthesized on the grid as
/// the L-periodization of the line function (exact, compactly supported spectrum).
RealField build_bump(const BumpSpec& spec, const Grid& grid);

/// phi(x) cos(carrier x), synthesized from the shifted profile
/// (bump_profile(xi - carrier) + bump_profile(xi + carrier)) / 2.
RealField modulated_bump(const BumpSpec& spec, const Grid& grid, double carrier);

/// max{2 + 1/p, 5/2}; ill-posedness requires s strictly above it.
double regularity_threshold(double p);

/// Throws InvalidArgument naming the violated condition.
void require_illposed_range(double s, double p);
void require_lambda_range(double lambda);

struct IllposedDataParams {
  double s = 3.0;
  double p = 2.0;
  double lambda = kLambdaDefault;
  int num_terms = 12;
  Grid grid{1u << 19, 256.0};
  BumpSpec bump{};

  /// Highest synthesized frequency, lambda 2^{N-1} (1 + 1/(2 2^{N-1})).
  double max_frequency() const;
};

struct InitialData {
  RealField rho0;
  RealField u0;
  /// L^p-size of the dropped tails: sum_{n>=N} 2^{-n(s-1)} ||phi||_p, and likewise with s.
  double rho_tail_bound = 0.0;
  double u_tail_bound = 0.0;
};

/// rho0 = sum_{n<N} 2^{-n(s-1)} phi cos(lambda 2^n x),  u0 = sum_{n<N} 2^{-ns} phi cos(lambda 2^n x).
/// Requires lambda in [67/48, 69/48], s > 1, N >= 1 and the top band below Nyquist.
/// The ill-posedness range for (s, p) is enforced by the studies, not here.
InitialData build_initial_data(const IllposedDataParams& params);

struct FirstVariation {
  RealField v0;  // u0^2 rho0_x + rho0 u0 u0_x
  RealField w0;  // P(u0) + Q(u0, rho0) + u0^2 u0_x
};

FirstVariation first_variation(const RealField& rho0, const RealField& u0);

struct FloorCheck {
  double sigma;         // largest grid radius with u0^2 >= floor on |x| <= sigma
  double floor;         // u0^2(0) / 2
  double origin_value;  // u0^2(0)
};

/// Throws DegenerateData("floor violated at origin") when u0(0) = 0.
FloorCheck pointwise_floor_check(const RealField& u0);

}  // namespace novlab
