#include "novlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "novlab/error.hpp"

namespace novlab {
namespace {

double alternating_sign(std::size_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

std::vector<double> sample_even_multiplier(const Grid& grid, const Multiplier& m) {
  std::vector<double> weights(grid.half_size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double xi = grid.frequency(static_cast<long>(k));
    const double plus = m(xi);
    const double minus = m(-xi);
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      throw InvalidArgument("multiplier is not finite at xi = " + std::to_string(xi));
    }
    if (std::abs(plus - minus) > 1e-14 * std::max(1.0, std::abs(plus))) {
      throw InvalidArgument("multiplier is not even at xi = " + std::to_string(xi));
    }
    weights[k] = plus;
  }
  return weights;
}

}  // namespace

namespace spectral {

HalfSpectrum to_spectrum(const RealField& f) {
  HalfSpectrum s(f.grid());
  fft::forward(f.values(), s.data);
  return s;
}

RealField to_field(const HalfSpectrum& s) {
  std::vector<double> values(s.grid.size());
  fft::inverse(s.data, values);
  return RealField(s.grid, std::move(values));
}

AlignedReal padded_values(const HalfSpectrum& s, std::size_t padded_points) {
  const std::size_t n = s.grid.size();
  if (padded_points < n || padded_points % n != 0) {
    throw InvalidArgument("padded size must be a multiple of the grid size");
  }
  AlignedComplex padded(padded_points / 2 + 1, Complex{});
  std::copy(s.data.begin(), s.data.begin() + static_cast<long>(n / 2), padded.begin());
  // The Nyquist mode a*(-1)^m splits evenly between +N/2 and -N/2 on a finer grid.
  padded[n / 2] = padded_points == n ? s.data[n / 2] : 0.5 * s.data[n / 2];
  AlignedReal values(padded_points);
  fft::inverse(padded, values);
  return values;
}

HalfSpectrum project(const Grid& target, std::span<const double> padded) {
  const std::size_t n = target.size();
  if (padded.size() < n || padded.size() % n != 0) {
    throw InvalidArgument("padded sample count must be a multiple of the grid size");
  }
  AlignedComplex full(padded.size() / 2 + 1);
  fft::forward(padded, full);
  HalfSpectrum s(target);
  std::copy(full.begin(), full.begin() + static_cast<long>(n / 2), s.data.begin());
  s.data[n / 2] = Complex{};
  return s;
}

void scale(HalfSpectrum& s, std::span<const double> weights) {
  if (weights.size() != s.data.size()) throw InvalidArgument("multiplier size mismatch");
  for (std::size_t k = 0; k < weights.size(); ++k) s.data[k] *= weights[k];
}

void differentiate(HalfSpectrum& s) {
  const std::size_t nyq = s.data.size() - 1;
  for (std::size_t k = 0; k < nyq; ++k) {
    s.data[k] *= Complex(0.0, s.grid.frequency(static_cast<long>(k)));
  }
  s.data[nyq] = Complex{};
}

double energy_fraction_above(const HalfSpectrum& s, double cutoff) {
  const std::size_t nyq = s.data.size() - 1;
  double total = 0.0;
  double above = 0.0;
  for (std::size_t k = 0; k <= nyq; ++k) {
    const double weight = (k == 0 || k == nyq) ? 1.0 : 2.0;
    const double e = weight * std::norm(s.data[k]);
    total += e;
    if (s.grid.frequency(static_cast<long>(k)) > cutoff) above += e;
  }
  return total > 0.0 ? above / total : 0.0;
}

std::vector<double> sample_multiplier(const Grid& grid, const Multiplier& m) {
  return sample_even_multiplier(grid, m);
}

}  // namespace spectral

SpectralCoeffs forward_transform(const RealField& f) {
  const HalfSpectrum s = spectral::to_spectrum(f);
  SpectralCoeffs c(f.grid());
  const std::size_t nyq = s.data.size() - 1;
  for (std::size_t k = 0; k <= nyq; ++k) {
    const Complex phys = alternating_sign(k) * s.data[k];
    c.set(static_cast<long>(k), phys);
    if (k != 0 && k != nyq) c.set(-static_cast<long>(k), std::conj(phys));
  }
  return c;
}

RealField inverse_transform(const SpectralCoeffs& c) {
  const double defect = c.hermitian_defect();
  if (defect > kHermitianTolerance) {
    throw InvalidArgument("coefficients violate Hermitian symmetry (defect " +
                          std::to_string(defect) + ")");
  }
  HalfSpectrum s(c.grid());
  const std::size_t nyq = s.data.size() - 1;
  for (std::size_t k = 0; k <= nyq; ++k) {
    const long kk = static_cast<long>(k);
    Complex sym = c.coeff(kk);
    if (k == 0 || k == nyq) {
      sym = Complex(sym.real(), 0.0);
    } else {
      sym = 0.5 * (sym + std::conj(c.coeff(-kk)));
    }
    s.data[k] = alternating_sign(k) * sym;
  }
  return spectral::to_field(s);
}

RealField apply_multiplier(const RealField& f, const Multiplier& m) {
  HalfSpectrum s = spectral::to_spectrum(f);
  spectral::scale(s, sample_even_multiplier(f.grid(), m));
  return spectral::to_field(s);
}

RealField derivative(const RealField& f) {
  HalfSpectrum s = spectral::to_spectrum(f);
  spectral::differentiate(s);
  return spectral::to_field(s);
}

RealField helmholtz_inverse(const RealField& f) {
  return apply_multiplier(f, [](double xi) { return 1.0 / (1.0 + xi * xi); });
}

RealField helmholtz(const RealField& f) {
  return apply_multiplier(f, [](double xi) { return 1.0 + xi * xi; });
}

double lp_norm(std::span<const double> values, double spacing, double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidArgument("L^p norm needs p >= 1");
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (std::isinf(p) || peak == 0.0) return peak;
  // Normalizing by the peak keeps |v|^p in range for large p.
  double sum = 0.0;
  if (p == 1.0) {
    for (double v : values) sum += std::abs(v) / peak;
    return peak * (spacing * sum);
  }
  if (p == 2.0) {
    for (double v : values) {
      const double r = v / peak;
      sum += r * r;
    }
    return peak * std::sqrt(spacing * sum);
  }
  for (double v : values) sum += std::pow(std::abs(v) / peak, p);
  return peak * std::pow(spacing * sum, 1.0 / p);
}

double lp_norm(const RealField& f, double p) { return lp_norm(f.values(), f.grid().spacing(), p); }

RealField product(const RealField& f, const RealField& g) {
  require_same_grid(f, g);
  const std::size_t padded = 2 * f.grid().size();
  AlignedReal a = spectral::padded_values(spectral::to_spectrum(f), padded);
  const AlignedReal b = spectral::padded_values(spectral::to_spectrum(g), padded);
  for (std::size_t m = 0; m < padded; ++m) a[m] *= b[m];
  return spectral::to_field(spectral::project(f.grid(), a));
}

RealField triple_product(const RealField& f, const RealField& g, const RealField& h) {
  require_same_grid(f, g);
  require_same_grid(f, h);
  const std::size_t padded = 2 * f.grid().size();
  AlignedReal a = spectral::padded_values(spectral::to_spectrum(f), padded);
  const AlignedReal b = spectral::padded_values(spectral::to_spectrum(g), padded);
  const AlignedReal c = spectral::padded_values(spectral::to_spectrum(h), padded);
  for (std::size_t m = 0; m < padded; ++m) a[m] *= b[m] * c[m];
  return spectral::to_field(spectral::project(f.grid(), a));
}

}  // namespace novlab
