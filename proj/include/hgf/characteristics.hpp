#pragma once

#include <utility>
#include <vector>

#include "hgf/grid.hpp"

// Characteristic curves dxi/dtau = +-lambda of the invariant system, traced
// through a finished trajectory, plus the closed forms that hold along them.
// These serve as high-precision oracles against the grid solver.

namespace hgf {

enum class CharFamily { Minus, Plus }; // dxi/dtau = -lambda resp. +lambda

struct CharCurve {
    CharFamily family;
    double anchor_t = 0.0;
    double anchor_x = 0.0;
    std::vector<double> tau; // strictly increasing
    std::vector<double> xi;  // same length as tau
    bool truncated = false;  // left the grid on a non-periodic domain
};

// lambda = e^{-phi/2} at (t, x), bilinear between snapshots in time and
// linear between cell centers in space.
double interpolate_lambda(const FlowTrajectory& traj, double t, double x);

// Linear space-time interpolation of p (Minus) or q (Plus) at (t, x).
double interpolate_invariant(const FlowTrajectory& traj, double t, double x,
                             CharFamily family);

// Classical RK4 integration of the curve from the anchor backward to tau=0.
// Samples are returned in increasing tau. On a non-periodic grid a curve
// that exits the window is clipped and flagged truncated.
CharCurve trace(const FlowTrajectory& traj, double anchor_t, double anchor_x,
                CharFamily family, int substeps_per_snapshot = 8);

// Strong determinate domain of [a, b] given characteristic-speed bounds
// m <= u <= M: the slab a + m^{-1/2} t <= x <= b + M^{-1/2} t, closing at
// apex time (b - a) / (m^{-1/2} - M^{-1/2}).
struct DeterminateDomain {
    double a, b, m, M;
    double apex_time() const;
    bool contains(double t, double x) const;
};
DeterminateDomain determinate_domain(double a, double b, double m, double M);

// Riccati closed form p(t) = p0 / (1 + p0 t / 4) along a Minus curve in the
// q == 0 scenario. Throws BlowupRangeError at or past the vanishing of the
// denominator.
double p_along_char_closed_form(double p0_at_foot, double t);

} // namespace hgf
