#include "novlab/powerfit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "novlab/error.hpp"

namespace novlab {

ScalingFit fit_powerlaw(std::span<const std::pair<double, double>> points, FitAxis axis) {
  if (points.size() < 3) {
    throw DegenerateData("power-law fit needs at least 3 points, got " +
                         std::to_string(points.size()));
  }
  std::vector<double> xs, ys;
  for (const auto& [x, y] : points) {
    if (!(y > 0.0) || !std::isfinite(y)) {
      throw DegenerateData("power-law fit needs positive finite values, got " + std::to_string(y));
    }
    if (axis == FitAxis::Time && !(x > 0.0)) {
      throw DegenerateData("time-indexed fit needs positive times");
    }
    xs.push_back(axis == FitAxis::Time ? std::log2(x) : x);
    ys.push_back(std::log2(y));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw DegenerateData("power-law fit needs distinct abscissae");

  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double residual = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    residual += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - residual / syy, 0.0, 1.0) : 1.0;
  fit.points.assign(points.begin(), points.end());
  return fit;
}

}  // namespace novlab
