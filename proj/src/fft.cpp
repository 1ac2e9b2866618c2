#include "novlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <new>

#include "novlab/error.hpp"

namespace novlab {

namespace detail {

void* fftw_allocate(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (p == nullptr) throw std::bad_alloc();
  return p;
}

void fftw_release(void* ptr) noexcept { fftw_free(ptr); }

}  // namespace detail

namespace fft {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~PlanPair() {
    if (r2c != nullptr) fftw_destroy_plan(r2c);
    if (c2r != nullptr) fftw_destroy_plan(c2r);
  }
};

// FFTW's planner is not thread-safe; execution on an existing plan is.
// FFTW_ESTIMATE keeps plan selection, and therefore rounding, deterministic.
const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    AlignedReal real(n);
    AlignedComplex spec(n / 2 + 1);
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    slot = std::make_unique<PlanPair>();
    const int size = static_cast<int>(n);
    slot->r2c = fftw_plan_dft_r2c_1d(size, real.data(), c, FFTW_ESTIMATE);
    slot->c2r = fftw_plan_dft_c2r_1d(size, c, real.data(), FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
    if (slot->r2c == nullptr || slot->c2r == nullptr) throw Error("FFTW planning failed");
  }
  return *slot;
}

thread_local AlignedReal real_scratch;
thread_local AlignedComplex complex_scratch;

}  // namespace

void forward(std::span<const double> values, std::span<Complex> out) {
  const std::size_t n = values.size();
  if (out.size() != n / 2 + 1) throw InvalidArgument("fft::forward: output size mismatch");
  const auto& plans = plans_for(n);
  real_scratch.assign(values.begin(), values.end());
  complex_scratch.resize(n / 2 + 1);
  fftw_execute_dft_r2c(plans.r2c, real_scratch.data(),
                       reinterpret_cast<fftw_complex*>(complex_scratch.data()));
  const double norm = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = complex_scratch[k] * norm;
}

void inverse(std::span<const Complex> spectrum, std::span<double> out) {
  const std::size_t n = out.size();
  if (spectrum.size() != n / 2 + 1) throw InvalidArgument("fft::inverse: input size mismatch");
  const auto& plans = plans_for(n);
  complex_scratch.assign(spectrum.begin(), spectrum.end());
  real_scratch.resize(n);
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(complex_scratch.data()),
                       real_scratch.data());
  std::copy(real_scratch.begin(), real_scratch.end(), out.begin());
}

}  // namespace fft
}  // namespace novlab
