#pragma once

#include <vector>

#include "novlab/field.hpp"

namespace novlab {

/// (rho, u) at time t for the nonlocal two-component Novikov system
///   rho_t = u^2 rho_x + rho u u_x,
///   u_t   = u^2 u_x + P(u) + Q(u, rho).
struct SystemState {
  RealField rho;
  RealField u;
  double time = 0.0;
};

struct Rates {
  RealField rho_t;
  RealField u_t;
};

/// P1 + P2 + P3 with
///   P1 = d_x (1 - d_xx)^{-1} (u^3),  P2 = 3/2 d_x (1 - d_xx)^{-1} (u u_x^2),
///   P3 = 1/2 (1 - d_xx)^{-1} (u_x^3).
RealField compute_P(const RealField& u);

/// Q1 + Q2 with
///   Q1 = -1/2 d_x (1 - d_xx)^{-1} (u rho^2),  Q2 = -1/2 (1 - d_xx)^{-1} (u_x rho^2).
RealField compute_Q(const RealField& u, const RealField& rho);

/// Right-hand side of the nonlocal system. All cubic terms are formed in one
/// padded pass. With dealias = false the products are taken on the native grid.
Rates rhs(const SystemState& state, bool dealias = true);

/// One classical RK4 step. Throws BlowUp when a value becomes non-finite or the
/// sup norm of rho or u exceeds blowup_threshold.
SystemState step_rk4(const SystemState& state, double dt, double blowup_threshold = 1e300,
                     bool dealias = true);

struct SolverConfig {
  double dt = 1e-4;
  double t_final = 0.0;
  double blowup_threshold = 0.0;  // <= 0: 100x the initial sup norm
  bool dealias = true;
  /// Extra output times in (0, t_final); t_final itself is always emitted.
  std::vector<double> checkpoints;
};

/// min(1e-4, t_final / 64).
double default_time_step(double t_final);

struct Trajectory {
  std::vector<SystemState> states;  // initial state, checkpoints, final state
  std::vector<double> step_times;   // time after every step
  std::vector<double> sup_norms;    // max(||rho||_inf, ||u||_inf) after every step
  double blowup_threshold = 0.0;
};

/// Fixed-step RK4 from state0 to state0.time + t_final. Each segment between
/// consecutive output times is split into equal steps no longer than dt.
Trajectory integrate(const SystemState& state0, const SolverConfig& cfg);

}  // namespace novlab
