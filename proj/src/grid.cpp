#include "novlab/grid.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "novlab/error.hpp"

namespace novlab {

Grid::Grid(std::size_t num_points, double length) : num_points_(num_points), length_(length) {
  if (num_points < 16 || !std::has_single_bit(num_points)) {
    throw InvalidArgument("grid size must be a power of two >= 16, got " +
                          std::to_string(num_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("grid length must be positive and finite");
  }
}

Grid::Grid(std::size_t num_points, double length, double max_frequency)
    : Grid(num_points, length) {
  if (!(nyquist() > max_frequency)) {
    throw ResolutionError("Nyquist frequency " + std::to_string(nyquist()) +
                          " does not exceed requested frequency " +
                          std::to_string(max_frequency));
  }
}

double commensurate_length(double base_frequency, double approx_length) {
  if (!(base_frequency > 0.0) || !(approx_length > 0.0)) {
    throw InvalidArgument("commensurate_length needs positive frequency and length");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double multiple = std::max(1.0, std::round(base_frequency * approx_length / two_pi));
  return two_pi * multiple / base_frequency;
}

}  // namespace novlab
