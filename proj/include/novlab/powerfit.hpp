#pragma once

#include <span>
#include <utility>
#include <vector>

namespace novlab {

/// How the abscissa enters a power-law fit.
enum class FitAxis {
  Dyadic,  // (n, log2 y): slope is the exponent in y ~ 2^{slope n}
  Time,    // (log2 t, log2 y): slope is the exponent in y ~ t^{slope}
};

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;  // base-2 log of the prefactor
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // raw (x, y) as supplied
};

/// Least-squares line through the log-transformed points. Needs at least three
/// points with y > 0 (and t > 0 on the Time axis); throws DegenerateData otherwise.
/// r_squared is 1 when the log-values are all equal.
ScalingFit fit_powerlaw(std::span<const std::pair<double, double>> points, FitAxis axis);

}  // namespace novlab
