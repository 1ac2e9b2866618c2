#pragma once

#include <cstddef>
#include <numbers>

namespace novlab {

/// Uniform periodic grid on [-L/2, L/2) with num_points samples.
///
/// Sample m sits at x_m = -L/2 + m * spacing. Wavenumber k corresponds to the
/// physical frequency xi_k = 2 pi k / L, and the representable wavenumbers are
/// -N/2 < k <= N/2.
class Grid {
 public:
  Grid(std::size_t num_points, double length);

  /// Also checks that the Nyquist frequency strictly exceeds max_frequency.
  Grid(std::size_t num_points, double length, double max_frequency);

  std::size_t size() const noexcept { return num_points_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(num_points_); }
  double fundamental() const noexcept { return 2.0 * std::numbers::pi / length_; }
  double nyquist() const noexcept {
    return std::numbers::pi * static_cast<double>(num_points_) / length_;
  }

  /// Number of non-negative wavenumbers, N/2 + 1.
  std::size_t half_size() const noexcept { return num_points_ / 2 + 1; }

  double position(std::size_t m) const noexcept {
    return -0.5 * length_ + static_cast<double>(m) * spacing();
  }
  double frequency(long k) const noexcept { return fundamental() * static_cast<double>(k); }

  /// Index of the sample at x = 0.
  std::size_t origin_index() const noexcept { return num_points_ / 2; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t num_points_;
  double length_;
};

/// Domain length closest to approx_length for which base_frequency is an
/// integer multiple of the fundamental 2 pi / L.
double commensurate_length(double base_frequency, double approx_length);

}  // namespace novlab
