#pragma once

#include <vector>

#include "hgf/grid.hpp"
#include "hgf/solver.hpp"

// Rotationally symmetric metrics u = u(t, r) on an annulus excluding the
// origin: psi = ln u, invariants mu = v + chi w, nu = v - chi w with
// v = u_t/u, w = psi_r, chi = e^{-psi/2}, evolving by
//   psi_t = (mu + nu)/2
//   mu_t - chi mu_r = -((mu+nu)/2)^2 + (chi/r - nu/2)(mu - nu)/2
//   nu_t + chi nu_r = -((mu+nu)/2)^2 + (chi/r + mu/2)(mu - nu)/2
// No claims are made near r = 0; the grid must satisfy r_min >= 10 dr.

namespace hgf {

struct RadialState {
    double t = 0.0;
    std::vector<double> psi, mu, nu;
};

struct RadialRhs {
    std::vector<double> dpsi, dmu, dnu;
};

struct RadialTrajectory {
    Grid1D grid; // radial coordinate; ConstantExtension only
    std::vector<RadialState> snapshots;
    StopReason stop_reason = StopReason::ReachedEnd;
    double stop_time = 0.0;
    double stop_r = 0.0;
};

// psi = ln u0, w = psi_r by centered differences, v = u1/u0.
RadialState radial_initial_invariants(const std::vector<double>& u0,
                                      const std::vector<double>& u1,
                                      const Grid1D& grid);

RadialRhs radial_rhs(const RadialState& state, const Grid1D& grid,
                     Limiter limiter = Limiter::None);

RadialTrajectory run_radial(const std::vector<double>& u0,
                            const std::vector<double>& u1, const Grid1D& grid,
                            const SolverConfig& config);

// Max-norm residual, per interior snapshot, of the conservative form
// mu_t - (chi mu)_r = -mu nu + chi (mu - nu)/(2r)  (and the nu analogue),
// assembled by centered differences of stored snapshots.
std::vector<double> conservative_form_residual(const RadialTrajectory& traj);

// Max-norm residual of the derivative-field system for eta = mu_r,
// gamma = nu_r, assembled the same way. The gamma equation is used with
// source factor (chi/r + mu/2); the (chi/r - mu/2) variant fails on
// manufactured solutions (see docs/radial_identities.md).
std::vector<double> derivative_system_residual(const RadialTrajectory& traj);

} // namespace hgf
