#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "novlab/illposed_data.hpp"
#include "novlab/littlewood_paley.hpp"
#include "novlab/report.hpp"

namespace novlab {

/// Default desk-scale setup: 2^18 points, domain length snapped near 128 so that
/// lambda is a multiple of the fundamental frequency, 12 terms.
IllposedDataParams default_study_params(double s = 3.0, double p = 2.0,
                                        double lambda = kLambdaDefault);

/// Scaling of ||u0^2 d_x Delta_n rho0||_{L^p} ~ 2^{-n(s-2)} and
/// ||u0^2 d_x Delta_n u0||_{L^p} ~ 2^{-n(s-1)} over n in [n_min, n_max].
StudyReport study_lemma31(const IllposedDataParams& params, const InitialData& data, int n_min,
                          int n_max);
StudyReport study_lemma31(const IllposedDataParams& params, int n_min, int n_max);

struct ShorttimeOptions {
  /// Compare against rho0, u0 only (v0 = w0 = 0) in the second-order residuals.
  bool drop_first_variation = false;
  /// Multiplies the default step min(1e-4, t/64).
  double dt_scale = 1.0;
};

/// Orders in t of ||rho(t) - rho0||_{B^{s-2}}, ||u(t) - u0||_{B^{s-1}} (expected 1) and
/// ||rho(t) - rho0 - t v0||_{B^{s-3}}, ||u(t) - u0 - t w0||_{B^{s-2}} (expected 2).
StudyReport study_shorttime(const IllposedDataParams& params, const std::vector<double>& times,
                            const ShorttimeOptions& options = {});

/// t_k = t0 2^{-k}, k = 0..count-1.
std::vector<double> geometric_times(double t0, int count);

struct SeparationOptions {
  std::vector<double> deltas{0.1};
  /// Also run the smooth control datum rho0 = u0 = phi at the first delta.
  bool include_control = true;
  /// Intermediate states per trajectory for the energy audit.
  int audit_points = 4;
};

/// D_n = ||rho(t_n) - rho0||_{B^{s-1}_{p,inf}} + ||u(t_n) - u0||_{B^s_{p,inf}} along
/// t_n = delta 2^{-n}. Also records the block-n part of D_n and the energy ratio.
StudyReport study_separation(const IllposedDataParams& params, int n_min, int n_max,
                             const SeparationOptions& options = {});

/// sup_j 2^{j(s-2)} ||Delta_j(uv)||_p / (||u||_{B^{s-2}_{p,inf}} ||v||_{B^{s-1}_{p,inf}}).
double product_law_ratio(const LPFilterBank& bank, const RealField& u, const RealField& v,
                         double s, double p);

/// sup_j 2^{js} ||[Delta_j, u] d_x v||_p /
///   (||u_x||_inf ||v||_{B^s_{p,inf}} + ||v_x||_inf ||u||_{B^s_{p,inf}}).
/// Zero when the commutator vanishes identically.
double commutator_ratio(const LPFilterBank& bank, const RealField& u, const RealField& v,
                        double s, double p);

/// Random real field with spectrum in |xi| <= max_frequency and a random power-law envelope.
RealField random_band_limited_field(const Grid& grid, double max_frequency, std::mt19937_64& rng);

/// Grid used by the inequality corpora.
Grid inequality_grid();

/// Two corpora (seeds `seed` and `seed + 1`) of corpus_size random pairs each.
StudyReport study_inequalities(int corpus_size, std::uint64_t seed, double s = 3.0,
                               double p = 2.0);

}  // namespace novlab
