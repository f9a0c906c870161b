#pragma once

#include <string>
#include <vector>

#include "hgf/grid.hpp"

// Scalar curvature in the sign convention R = (ln u)_xx / u,
// derivative invariants r = p_x, s = q_x, maximum-principle monitors and
// decay-rate fitting.

namespace hgf {

struct CurvatureField {
    std::vector<double> R;
    std::vector<double> r; // p_x
    std::vector<double> s; // q_x
};

struct DecayFit {
    double gamma = 0.0;   // fitted exponent of sup|R| ~ k_tilde (1+t)^{-gamma}
    double k_tilde = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double residual = 0.0; // rms of log-log fit residuals
};

struct BoundViolation {
    std::size_t snapshot; // index into trajectory
    double t;
    double x;
    std::string what; // which bound, e.g. "p < 0" or "r above initial sup"
    double value;
    double bound;
};

// r = p_x, s = q_x by centered differences (boundary-aware).
std::pair<std::vector<double>, std::vector<double>>
derivative_invariants(const ConformalState& state, const Grid1D& grid);

// R = 1/2 [ (r - s) e^{-phi/2} + ((p-q)/2)^2 ].
std::vector<double> scalar_curvature(const ConformalState& state,
                                     std::span<const double> r,
                                     std::span<const double> s);

// Cross-check route: R = (ln u)_xx / u by direct second differences.
std::vector<double> scalar_curvature_fd(std::span<const double> u,
                                        const Grid1D& grid);

// Checks 0 <= p <= sup p0, 0 <= q <= sup q0 and |r|,|s| <= initial sup,
// each with tolerance `tol`. Empty result means every bound holds.
std::vector<BoundViolation> bound_monitor(const FlowTrajectory& traj,
                                          double tol = 1e-6);

// Least-squares fit of log sup|R| versus log(1+t) over snapshots with
// t in [t_lo, t_hi]; the sup is taken over the interior 80% of the grid.
DecayFit fit_decay(const FlowTrajectory& traj, double t_lo, double t_hi);

} // namespace hgf
