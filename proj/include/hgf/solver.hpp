#pragma once

#include <optional>
#include <vector>

#include "hgf/grid.hpp"

// Explicit method-of-lines integration of the strictly hyperbolic system
//   phi_t = (p+q)/2
//   p_t - lambda p_x = -1/4 (p^2 + 3pq)   (p advects with speed -lambda)
//   q_t + lambda q_x = -1/4 (q^2 + 3pq)   (q advects with speed +lambda)
// with lambda = e^{-phi/2}: first-order upwind fluxes, optional minmod
// second-order reconstruction, Heun time stepping.
//
// An optional cell-wise forcing S (the -2k + normalization term of the
// conformal-class flow, entering the u_tt balance) adds S e^{-phi} to both
// the p and the q equations.

namespace hgf {

enum class Limiter { None, Minmod };

struct SolverConfig {
    double cfl = 0.5;          // in (0, 1]
    double t_end = 1.0;
    int snapshot_stride = 10;  // steps between stored snapshots
    Limiter limiter = Limiter::None;
    long max_steps = 20'000'000;
    double blowup_p_threshold = 1e6;
    double u_floor = 1e-8;
    double fixed_dt = 0.0;     // > 0 forces a constant step (still CFL-checked)
};

struct Rhs {
    std::vector<double> dphi, dp, dq;
};

// Spatial discretization of the system above at one state.
Rhs rhs(const ConformalState& state, const Grid1D& grid,
        Limiter limiter = Limiter::None,
        const std::vector<double>* forcing = nullptr);

// cfl * dx / max lambda, capped by the remaining time to t_end.
double stable_dt(const ConformalState& state, const Grid1D& grid,
                 const SolverConfig& config);

// One Heun (explicit trapezoidal) step of size dt.
ConformalState step(const ConformalState& state, const Grid1D& grid, double dt,
                    Limiter limiter = Limiter::None,
                    const std::vector<double>* forcing = nullptr);

// Signal check after a step: location of the worst offender, if any.
struct BlowupSignal {
    StopReason reason; // Blowup (p/q threshold) or Degeneracy (u under floor)
    double t;
    double x;
};
std::optional<BlowupSignal> check_signal(const ConformalState& state,
                                         const Grid1D& grid,
                                         const SolverConfig& config);

DiagnosticRecord diagnostics_of(const ConformalState& state, const Grid1D& grid);

// Integrates to t_end or until a blowup/degeneracy signal. Snapshots every
// snapshot_stride steps plus the final state. Throws ContractError when
// max_steps is exceeded.
FlowTrajectory run(const InitialData& init, const SolverConfig& config,
                   const std::vector<double>* forcing = nullptr);

// Discrete u_tt - (ln u)_xx assembled from stored snapshots; one max-norm
// value per interior snapshot. Requires >= 3 uniformly spaced snapshots.
std::vector<double> second_order_residual(const FlowTrajectory& traj);

// Padding that keeps a window inside the numerically determined region of
// a ConstantExtension run: t_end * (min u0)^{-1/2} on each side.
double line_padding(double t_end, double u0_min);

} // namespace hgf
