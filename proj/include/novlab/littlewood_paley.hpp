#pragma once

#include <span>
#include <vector>

#include "novlab/field.hpp"
#include "novlab/spectral.hpp"

namespace novlab {

/// C-infinity transition: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
/// Returns exactly 0 and 1 outside the open interval (0, 1).
double smooth_step(double t);

/// Low-frequency cutoff chi: 1 on |xi| <= 1, 0 on |xi| >= 4/3.
double lp_chi(double xi);

/// Ring profile phi(xi) = chi(xi/2) - chi(xi): supported in 1 <= |xi| <= 8/3 and
/// identically 1 on 4/3 <= |xi| <= 2. The partition of unity telescopes:
/// chi(xi) + sum_{j=0}^{J} phi(2^{-j} xi) = chi(2^{-J-1} xi).
double lp_phi(double xi);

/// Besov index (s, p, r); p and r may be kInfinity.
struct BesovIndex {
  double s;
  double p;
  double r;

  BesovIndex(double s, double p, double r);
};

/// Sampled dyadic multipliers for one grid. Block j_max is the largest whose
/// ring (8/3) 2^j fits under the Nyquist frequency.
class LPFilterBank {
 public:
  explicit LPFilterBank(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  int j_max() const noexcept { return j_max_; }

  /// Frequencies up to this value are covered exactly by blocks -1..j_max.
  double covered_frequency() const noexcept;

  /// Samples of chi (j = -1) or phi(2^{-j} .) on wavenumbers 0..N/2.
  std::span<const double> weights(int j) const;

 private:
  Grid grid_;
  int j_max_;
  std::vector<std::vector<double>> weights_;
};

LPFilterBank build_filter_bank(const Grid& grid);

/// Delta_j f. Zero for j <= -2; throws ResolutionError for j > j_max.
RealField dyadic_block(const LPFilterBank& bank, const RealField& f, int j);

struct DyadicDecomposition {
  std::vector<RealField> blocks;  // blocks[i] is Delta_{i-1} f

  const RealField& block(int j) const { return blocks.at(static_cast<std::size_t>(j + 1)); }
  int j_max() const noexcept { return static_cast<int>(blocks.size()) - 2; }
  RealField reconstruct() const;
};

DyadicDecomposition decompose(const LPFilterBank& bank, const RealField& f);

/// Largest admissible energy fraction above covered_frequency() in Besov computations.
inline constexpr double kUnresolvedEnergyTolerance = 1e-12;

/// Throws ResolutionError("unresolved spectrum ...") if f carries more than
/// kUnresolvedEnergyTolerance of its energy above the covered band.
void require_resolved(const LPFilterBank& bank, const RealField& f);

/// Largest admissible ratio of the weighted L^2 tail 2^{(j_max+1)s} ||f_{>covered}||_2
/// to max_j 2^{js} ||Delta_j f||_2 in Besov computations.
inline constexpr double kUnresolvedBlockTolerance = 1e-6;

/// Rounding level of a field relative to `reference`: kRoundingFloorFactor machine
/// epsilons times its L^2 norm.
inline constexpr double kRoundingFloorFactor = 32.0;
double rounding_floor(const RealField& reference);

/// The weighted block norms 2^{js} ||Delta_j f||_{L^p}, j = -1..j_max (index j + 1).
/// Throws ResolutionError("unresolved spectrum ...") when the spectrum above the
/// covered band exceeds kUnresolvedBlockTolerance in the weighted sense above.
///
/// Blocks (and the tail) whose L^2 norm is at most max(rounding_floor, rounding_floor(f))
/// count as zero: the weights 2^{js} would otherwise amplify rounding. Pass the floor of
/// the reference state when f is a difference of nearby states.
std::vector<double> besov_sequence(const LPFilterBank& bank, const RealField& f, double s,
                                   double p, double rounding_floor = 0.0);

double besov_norm(const LPFilterBank& bank, const RealField& f, const BesovIndex& idx,
                  double rounding_floor = 0.0);

/// [Delta_j, u] d_x v = Delta_j(u v_x) - u Delta_j(v_x), with dealiased products.
RealField commutator(const LPFilterBank& bank, int j, const RealField& u, const RealField& v);

}  // namespace novlab
