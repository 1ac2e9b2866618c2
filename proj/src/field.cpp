#include "novlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "novlab/error.hpp"

namespace novlab {

RealField::RealField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("field has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_.size()));
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw InvalidArgument("field contains non-finite values");
  }
}

RealField RealField::zeros(const Grid& grid) { return constant(grid, 0.0); }

RealField RealField::constant(const Grid& grid, double value) {
  return RealField(grid, std::vector<double>(grid.size(), value));
}

RealField RealField::sample(const Grid& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = fn(grid.position(m));
  return RealField(grid, std::move(v));
}

RealField& RealField::operator+=(const RealField& other) {
  require_same_grid(*this, other);
  for (std::size_t m = 0; m < values_.size(); ++m) values_[m] += other.values_[m];
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  require_same_grid(*this, other);
  for (std::size_t m = 0; m < values_.size(); ++m) values_[m] -= other.values_[m];
  return *this;
}

RealField& RealField::operator*=(double c) {
  if (!std::isfinite(c)) throw InvalidArgument("non-finite scale factor");
  for (double& v : values_) v *= c;
  return *this;
}

RealField RealField::axpy(const RealField& a, double c, const RealField& b) {
  require_same_grid(a, b);
  std::vector<double> out(a.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = a.values_[m] + c * b.values_[m];
  return RealField(a.grid_, std::move(out));
}

void require_same_grid(const RealField& a, const RealField& b) {
  if (!(a.grid() == b.grid())) {
    throw GridMismatch("fields live on different grids (" + std::to_string(a.grid().size()) +
                       " vs " + std::to_string(b.grid().size()) + " points)");
  }
}

SpectralCoeffs::SpectralCoeffs(Grid grid) : grid_(grid), coeffs_(grid.size(), std::complex<double>{}) {}

long SpectralCoeffs::min_wavenumber() const noexcept {
  return -static_cast<long>(grid_.size() / 2) + 1;
}
long SpectralCoeffs::max_wavenumber() const noexcept {
  return static_cast<long>(grid_.size() / 2);
}

std::size_t SpectralCoeffs::slot(long k) const {
  if (k < min_wavenumber() || k > max_wavenumber()) {
    throw InvalidArgument("wavenumber " + std::to_string(k) + " outside the grid");
  }
  const auto n = static_cast<long>(grid_.size());
  return static_cast<std::size_t>(k >= 0 ? k : k + n);
}

std::complex<double> SpectralCoeffs::coeff(long k) const { return coeffs_[slot(k)]; }

void SpectralCoeffs::set(long k, std::complex<double> value) { coeffs_[slot(k)] = value; }

double SpectralCoeffs::hermitian_defect() const {
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double defect = std::abs(coeff(0).imag());
  defect = std::max(defect, std::abs(coeff(max_wavenumber()).imag()));
  for (long k = 1; k < max_wavenumber(); ++k) {
    defect = std::max(defect, std::abs(coeff(-k) - std::conj(coeff(k))));
  }
  return defect / scale;
}

}  // namespace novlab
