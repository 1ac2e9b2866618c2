#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <new>
#include <span>
#include <vector>

#include "novlab/grid.hpp"

namespace novlab {

using Complex = std::complex<double>;

namespace detail {
void* fftw_allocate(std::size_t bytes);
void fftw_release(void* ptr) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage so buffers can be passed to shared FFTW plans.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() noexcept = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) {
    if (n > std::numeric_limits<std::size_t>::max() / sizeof(T)) throw std::bad_array_new_length();
    return static_cast<T*>(detail::fftw_allocate(n * sizeof(T)));
  }
  void deallocate(T* p, std::size_t) noexcept { detail::fftw_release(p); }
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

using AlignedReal = std::vector<double, FftwAllocator<double>>;
using AlignedComplex = std::vector<Complex, FftwAllocator<Complex>>;

/// Non-negative half of the normalized DFT of a real field,
///   data[k] = (1/N) sum_m values(m) exp(-2 pi i k m / N),  k = 0..N/2.
/// The phase is taken relative to sample 0 (x = -L/2); the physical
/// coefficient of SpectralCoeffs is (-1)^k data[k]. Diagonal operators
/// (multipliers, padding, truncation) act identically in both conventions.
struct HalfSpectrum {
  Grid grid;
  AlignedComplex data;

  explicit HalfSpectrum(const Grid& g) : grid(g), data(g.half_size(), Complex{}) {}
};

namespace fft {

/// Real-to-half-complex transform of n samples, normalized by 1/n.
void forward(std::span<const double> values, std::span<Complex> out);

/// Half-complex-to-real synthesis of n samples (no normalization).
/// `spectrum` has n/2 + 1 entries and is not modified.
void inverse(std::span<const Complex> spectrum, std::span<double> out);

}  // namespace fft

}  // namespace novlab
