#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "novlab/grid.hpp"

namespace novlab {

/// Real function sampled on a Grid. Values are always finite.
class RealField {
 public:
  RealField(Grid grid, std::vector<double> values);

  static RealField zeros(const Grid& grid);
  static RealField constant(const Grid& grid, double value);
  static RealField sample(const Grid& grid, const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t m) const noexcept { return values_[m]; }

  /// Value at x = 0.
  double at_origin() const noexcept { return values_[grid_.origin_index()]; }

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double c);

  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(double c, RealField a) { return a *= c; }
  friend RealField operator*(RealField a, double c) { return a *= c; }
  friend RealField operator-(RealField a) { return a *= -1.0; }

  /// Pointwise a + c * b without an intermediate.
  static RealField axpy(const RealField& a, double c, const RealField& b);

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients under the convention
///   coeff(k) = (1/N) sum_m values(m) exp(-i xi_k x_m),
/// so that values(m) = sum_k coeff(k) exp(i xi_k x_m).
/// Stored for every wavenumber -N/2 < k <= N/2.
class SpectralCoeffs {
 public:
  explicit SpectralCoeffs(Grid grid);

  const Grid& grid() const noexcept { return grid_; }

  std::complex<double> coeff(long k) const;
  void set(long k, std::complex<double> value);

  long min_wavenumber() const noexcept;
  long max_wavenumber() const noexcept;

  /// Largest |coeff(-k) - conj(coeff(k))| relative to the largest |coeff|.
  double hermitian_defect() const;

 private:
  std::size_t slot(long k) const;

  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

void require_same_grid(const RealField& a, const RealField& b);

}  // namespace novlab
