#include "novlab/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "novlab/error.hpp"

namespace novlab {
namespace {

double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

constexpr double kChiPlateau = 1.0;
constexpr double kChiSupport = 4.0 / 3.0;
constexpr double kRingOuter = 8.0 / 3.0;

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = glue(t);
  return a / (a + glue(1.0 - t));
}

double lp_chi(double xi) {
  return 1.0 - smooth_step((std::abs(xi) - kChiPlateau) / (kChiSupport - kChiPlateau));
}

double lp_phi(double xi) { return lp_chi(0.5 * xi) - lp_chi(xi); }

BesovIndex::BesovIndex(double s_, double p_, double r_) : s(s_), p(p_), r(r_) {
  if (!std::isfinite(s)) throw InvalidArgument("Besov regularity must be finite");
  if (std::isnan(p) || p < 1.0) throw InvalidArgument("Besov integrability p must lie in [1, inf]");
  if (std::isnan(r) || r < 1.0) throw InvalidArgument("Besov summability r must lie in [1, inf]");
}

LPFilterBank::LPFilterBank(const Grid& grid) : grid_(grid) {
  j_max_ = static_cast<int>(std::floor(std::log2(grid.nyquist() / kRingOuter)));
  if (j_max_ < 0) throw ResolutionError("grid too coarse for any dyadic ring");
  weights_.reserve(static_cast<std::size_t>(j_max_ + 2));
  weights_.push_back(spectral::sample_multiplier(grid, lp_chi));
  for (int j = 0; j <= j_max_; ++j) {
    const double scale = std::ldexp(1.0, -j);
    weights_.push_back(
        spectral::sample_multiplier(grid, [scale](double xi) { return lp_phi(scale * xi); }));
  }
}

double LPFilterBank::covered_frequency() const noexcept { return std::ldexp(1.0, j_max_ + 1); }

std::span<const double> LPFilterBank::weights(int j) const {
  if (j < -1 || j > j_max_) {
    throw ResolutionError("dyadic block " + std::to_string(j) + " outside [-1, " +
                          std::to_string(j_max_) + "]");
  }
  return weights_[static_cast<std::size_t>(j + 1)];
}

LPFilterBank build_filter_bank(const Grid& grid) { return LPFilterBank(grid); }

RealField dyadic_block(const LPFilterBank& bank, const RealField& f, int j) {
  if (!(f.grid() == bank.grid())) throw GridMismatch("field and filter bank grids differ");
  if (j <= -2) return RealField::zeros(f.grid());
  const auto w = bank.weights(j);
  HalfSpectrum s = spectral::to_spectrum(f);
  spectral::scale(s, w);
  return spectral::to_field(s);
}

RealField DyadicDecomposition::reconstruct() const {
  RealField sum = blocks.front();
  for (std::size_t i = 1; i < blocks.size(); ++i) sum += blocks[i];
  return sum;
}

DyadicDecomposition decompose(const LPFilterBank& bank, const RealField& f) {
  if (!(f.grid() == bank.grid())) throw GridMismatch("field and filter bank grids differ");
  const HalfSpectrum s = spectral::to_spectrum(f);
  DyadicDecomposition d;
  for (int j = -1; j <= bank.j_max(); ++j) {
    HalfSpectrum b = s;
    spectral::scale(b, bank.weights(j));
    d.blocks.push_back(spectral::to_field(b));
  }
  return d;
}

void require_resolved(const LPFilterBank& bank, const RealField& f) {
  const double fraction =
      spectral::energy_fraction_above(spectral::to_spectrum(f), bank.covered_frequency());
  if (fraction > kUnresolvedEnergyTolerance) {
    throw ResolutionError("unresolved spectrum: " + std::to_string(fraction) +
                          " of the energy lies above |xi| = " +
                          std::to_string(bank.covered_frequency()));
  }
}

double rounding_floor(const RealField& reference) {
  return kRoundingFloorFactor * std::numeric_limits<double>::epsilon() * lp_norm(reference, 2.0);
}

std::vector<double> besov_sequence(const LPFilterBank& bank, const RealField& f, double s,
                                   double p, double rounding_floor) {
  if (!(rounding_floor >= 0.0)) throw InvalidArgument("rounding floor must be non-negative");
  if (!(f.grid() == bank.grid())) throw GridMismatch("field and filter bank grids differ");
  const HalfSpectrum spec = spectral::to_spectrum(f);
  const double f_l2 = lp_norm(f, 2.0);
  const double zero_level = std::max(rounding_floor, novlab::rounding_floor(f));
  std::vector<double> seq;
  seq.reserve(static_cast<std::size_t>(bank.j_max() + 2));
  std::vector<double> values(f.size());
  const double dx = f.grid().spacing();
  double resolved = 0.0;
  for (int j = -1; j <= bank.j_max(); ++j) {
    HalfSpectrum b = spec;
    spectral::scale(b, bank.weights(j));
    fft::inverse(b.data, values);
    const double weight = std::exp2(j * s);
    const double l2 = lp_norm(values, dx, 2.0);
    if (l2 <= zero_level) {
      seq.push_back(0.0);
      continue;
    }
    seq.push_back(weight * lp_norm(values, dx, p));
    resolved = std::max(resolved, weight * l2);
  }

  // Everything above covered_frequency() would land in blocks j_max + 1 and up.
  const double fraction = spectral::energy_fraction_above(spec, bank.covered_frequency());
  const double tail = std::sqrt(fraction) * f_l2;
  const double missing = std::exp2((bank.j_max() + 1) * s) * tail;
  if (tail > zero_level && missing > kUnresolvedBlockTolerance * resolved) {
    std::ostringstream msg;
    msg << "unresolved spectrum: a fraction " << fraction << " of the energy lies above |xi| = "
        << bank.covered_frequency() << " (weighted tail " << missing << " vs resolved blocks "
        << resolved << ")";
    throw ResolutionError(msg.str());
  }
  return seq;
}

double besov_norm(const LPFilterBank& bank, const RealField& f, const BesovIndex& idx,
                  double rounding_floor) {
  const auto seq = besov_sequence(bank, f, idx.s, idx.p, rounding_floor);
  if (std::isinf(idx.r)) return *std::max_element(seq.begin(), seq.end());
  double peak = *std::max_element(seq.begin(), seq.end());
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (double a : seq) sum += std::pow(a / peak, idx.r);
  return peak * std::pow(sum, 1.0 / idx.r);
}

RealField commutator(const LPFilterBank& bank, int j, const RealField& u, const RealField& v) {
  require_same_grid(u, v);
  const RealField vx = derivative(v);
  return dyadic_block(bank, product(u, vx), j) - product(u, dyadic_block(bank, vx, j));
}

}  // namespace novlab
