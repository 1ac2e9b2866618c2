#pragma once

#include <functional>
#include <limits>
#include <span>

#include "novlab/field.hpp"
#include "novlab/fft.hpp"

namespace novlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Tolerance for the Hermitian check in inverse_transform.
inline constexpr double kHermitianTolerance = 1e-12;

SpectralCoeffs forward_transform(const RealField& f);

/// Throws InvalidArgument when the coefficients are not Hermitian to kHermitianTolerance.
RealField inverse_transform(const SpectralCoeffs& c);

using Multiplier = std::function<double(double)>;

/// f(D): scales every Fourier coefficient by m(xi_k). m must be even and finite on the grid.
RealField apply_multiplier(const RealField& f, const Multiplier& m);

/// Spectral d/dx. The Nyquist mode is dropped (i xi maps it out of the real fields).
RealField derivative(const RealField& f);

/// (1 - d_xx)^{-1}, the multiplier 1 / (1 + xi^2).
RealField helmholtz_inverse(const RealField& f);

/// (1 - d_xx), e.g. m = u - u_xx.
RealField helmholtz(const RealField& f);

/// Grid quadrature of the L^p norm; p = kInfinity gives max |f|.
double lp_norm(const RealField& f, double p);
double lp_norm(std::span<const double> values, double spacing, double p);

/// Dealiased pointwise products: computed on a grid padded by a factor of two
/// and projected back, which is exact for quadratic and cubic interactions.
RealField product(const RealField& f, const RealField& g);
RealField triple_product(const RealField& f, const RealField& g, const RealField& h);

namespace spectral {

HalfSpectrum to_spectrum(const RealField& f);
RealField to_field(const HalfSpectrum& s);

/// Values of the trigonometric polynomial `s` sampled on `padded_points` >= N points.
AlignedReal padded_values(const HalfSpectrum& s, std::size_t padded_points);

/// Spectrum of padded samples projected onto `target` (|k| < N/2; Nyquist dropped).
HalfSpectrum project(const Grid& target, std::span<const double> padded);

/// Multiply coefficient k by weights[k].
void scale(HalfSpectrum& s, std::span<const double> weights);

void differentiate(HalfSpectrum& s);

/// Fraction of the L^2 energy carried by modes with |xi| > cutoff (0 for the zero field).
double energy_fraction_above(const HalfSpectrum& s, double cutoff);

/// Samples of m on the non-negative wavenumbers of `grid`.
std::vector<double> sample_multiplier(const Grid& grid, const Multiplier& m);

}  // namespace spectral

}  // namespace novlab
