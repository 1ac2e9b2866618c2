#include "novlab/novikov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "novlab/error.hpp"
#include "novlab/spectral.hpp"

namespace novlab {
namespace {

double sup_norm(const RealField& f) { return lp_norm(f, kInfinity); }

}  // namespace

RealField compute_P(const RealField& u) {
  const RealField ux = derivative(u);
  RealField p1 = derivative(helmholtz_inverse(triple_product(u, u, u)));
  RealField p2 = 1.5 * derivative(helmholtz_inverse(triple_product(u, ux, ux)));
  RealField p3 = 0.5 * helmholtz_inverse(triple_product(ux, ux, ux));
  return p1 + p2 + p3;
}

RealField compute_Q(const RealField& u, const RealField& rho) {
  require_same_grid(u, rho);
  const RealField ux = derivative(u);
  RealField q1 = -0.5 * derivative(helmholtz_inverse(triple_product(u, rho, rho)));
  RealField q2 = -0.5 * helmholtz_inverse(triple_product(ux, rho, rho));
  return q1 + q2;
}

Rates rhs(const SystemState& state, bool dealias) {
  require_same_grid(state.rho, state.u);
  const Grid& grid = state.u.grid();
  const std::size_t padded = dealias ? 2 * grid.size() : grid.size();

  const HalfSpectrum u_hat = spectral::to_spectrum(state.u);
  const HalfSpectrum rho_hat = spectral::to_spectrum(state.rho);
  HalfSpectrum ux_hat = u_hat;
  HalfSpectrum rhox_hat = rho_hat;
  spectral::differentiate(ux_hat);
  spectral::differentiate(rhox_hat);

  const AlignedReal u = spectral::padded_values(u_hat, padded);
  const AlignedReal rho = spectral::padded_values(rho_hat, padded);
  const AlignedReal ux = spectral::padded_values(ux_hat, padded);
  const AlignedReal rhox = spectral::padded_values(rhox_hat, padded);

  // transport:  rho_t = u^2 rho_x + rho u u_x,  u_t ⊃ u^2 u_x
  // nonlocal:   d_x H(u^3 + 3/2 u u_x^2 - 1/2 u rho^2) + H(1/2 u_x^3 - 1/2 u_x rho^2)
  AlignedReal rho_rate(padded), u_rate(padded), flux(padded), source(padded);
  for (std::size_t m = 0; m < padded; ++m) {
    const double uu = u[m] * u[m];
    const double ux2 = ux[m] * ux[m];
    const double rr = rho[m] * rho[m];
    rho_rate[m] = uu * rhox[m] + rho[m] * u[m] * ux[m];
    u_rate[m] = uu * ux[m];
    flux[m] = u[m] * (uu + 1.5 * ux2 - 0.5 * rr);
    source[m] = 0.5 * ux[m] * (ux2 - rr);
  }

  const HalfSpectrum rho_t = spectral::project(grid, rho_rate);
  HalfSpectrum u_t = spectral::project(grid, u_rate);
  const HalfSpectrum flux_hat = spectral::project(grid, flux);
  const HalfSpectrum source_hat = spectral::project(grid, source);
  for (std::size_t k = 0; k < u_t.data.size(); ++k) {
    const double xi = grid.frequency(static_cast<long>(k));
    const double h = 1.0 / (1.0 + xi * xi);
    u_t.data[k] += Complex(0.0, xi * h) * flux_hat.data[k] + h * source_hat.data[k];
  }
  return Rates{spectral::to_field(rho_t), spectral::to_field(u_t)};
}

SystemState step_rk4(const SystemState& state, double dt, double blowup_threshold, bool dealias) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive");
  try {
    const Rates k1 = rhs(state, dealias);
    const Rates k2 = rhs({RealField::axpy(state.rho, 0.5 * dt, k1.rho_t),
                          RealField::axpy(state.u, 0.5 * dt, k1.u_t), state.time + 0.5 * dt},
                         dealias);
    const Rates k3 = rhs({RealField::axpy(state.rho, 0.5 * dt, k2.rho_t),
                          RealField::axpy(state.u, 0.5 * dt, k2.u_t), state.time + 0.5 * dt},
                         dealias);
    const Rates k4 = rhs({RealField::axpy(state.rho, dt, k3.rho_t),
                          RealField::axpy(state.u, dt, k3.u_t), state.time + dt},
                         dealias);
    const auto combine = [dt](const RealField& y, const RealField& a, const RealField& b,
                              const RealField& c, const RealField& d) {
      std::vector<double> out(y.size());
      for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] = y[m] + dt / 6.0 * (a[m] + 2.0 * b[m] + 2.0 * c[m] + d[m]);
      }
      return RealField(y.grid(), std::move(out));
    };
    SystemState next{combine(state.rho, k1.rho_t, k2.rho_t, k3.rho_t, k4.rho_t),
                     combine(state.u, k1.u_t, k2.u_t, k3.u_t, k4.u_t), state.time + dt};
    const double sup = std::max(sup_norm(next.rho), sup_norm(next.u));
    if (sup > blowup_threshold) {
      std::ostringstream msg;
      msg << "blow-up guard tripped at t = " << next.time << ": sup norm " << sup
          << " exceeds " << blowup_threshold;
      throw BlowUp(msg.str());
    }
    return next;
  } catch (const InvalidArgument& e) {
    std::ostringstream msg;
    msg << "non-finite state during step from t = " << state.time << " (" << e.what() << ")";
    throw BlowUp(msg.str());
  }
}

double default_time_step(double t_final) { return std::min(1e-4, t_final / 64.0); }

Trajectory integrate(const SystemState& state0, const SolverConfig& cfg) {
  require_same_grid(state0.rho, state0.u);
  if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) {
    throw InvalidArgument("t_final must be a finite non-negative time");
  }
  Trajectory traj;
  const double initial_sup = std::max(sup_norm(state0.rho), sup_norm(state0.u));
  traj.blowup_threshold = cfg.blowup_threshold > 0.0 ? cfg.blowup_threshold
                          : initial_sup > 0.0        ? 100.0 * initial_sup
                                                     : kInfinity;
  traj.states.push_back(state0);
  if (cfg.t_final == 0.0) return traj;
  if (!(cfg.dt > 0.0)) throw InvalidArgument("dt must be positive");

  std::vector<double> outputs;
  for (double t : cfg.checkpoints) {
    if (t > 0.0 && t < cfg.t_final) outputs.push_back(t);
  }
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
  outputs.push_back(cfg.t_final);

  SystemState state = state0;
  double previous = 0.0;
  for (double target : outputs) {
    const double span = target - previous;
    const auto steps = static_cast<long>(std::max(1.0, std::ceil(span / cfg.dt - 1e-9)));
    const double h = span / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
      state = step_rk4(state, h, traj.blowup_threshold, cfg.dealias);
      state.time = state0.time + previous + static_cast<double>(i + 1) * h;
      traj.step_times.push_back(state.time);
      traj.sup_norms.push_back(std::max(sup_norm(state.rho), sup_norm(state.u)));
    }
    state.time = state0.time + target;
    traj.states.push_back(state);
    previous = target;
  }
  return traj;
}

}  // namespace novlab
