#include "hgf/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgf/errors.hpp"

namespace hgf {

namespace {

// Fractional cell index of x (0 at the first cell center), wrapped or
// clamped according to the boundary rule.
double fractional_index(const Grid1D& grid, double x, int n) {
    double s = (x - grid.x_min) / grid.dx() - 0.5;
    if (grid.boundary == Boundary::Periodic) {
        s = std::fmod(s, static_cast<double>(n));
        if (s < 0.0) s += n;
    } else {
        s = std::clamp(s, 0.0, static_cast<double>(n - 1));
    }
    return s;
}

double sample_linear(const std::vector<double>& f, const Grid1D& grid,
                     double x) {
    const int n = static_cast<int>(f.size());
    const double s = fractional_index(grid, x, n);
    const int i = std::min(static_cast<int>(s), n - 1);
    const double w = s - i;
    const int j =
        grid.boundary == Boundary::Periodic ? (i + 1) % n : std::min(i + 1, n - 1);
    return (1.0 - w) * f[i] + w * f[j];
}

// Index of the last snapshot with snapshot time <= t.
std::size_t lower_snapshot(const FlowTrajectory& traj, double t) {
    const auto& s = traj.snapshots;
    std::size_t lo = 0;
    while (lo + 1 < s.size() && s[lo + 1].t <= t) ++lo;
    return lo;
}

double interp_field(const FlowTrajectory& traj, double t, double x,
                    const std::vector<double> ConformalState::* field,
                    bool as_lambda) {
    const auto& snaps = traj.snapshots;
    if (snaps.empty()) throw ContractError("trajectory holds no snapshots");
    t = std::clamp(t, snaps.front().t, snaps.back().t);
    const std::size_t k = lower_snapshot(traj, t);
    auto value_at = [&](std::size_t s) {
        const double v = sample_linear(snaps[s].*field, traj.grid, x);
        return as_lambda ? std::exp(-0.5 * v) : v;
    };
    if (k + 1 >= snaps.size() || snaps[k + 1].t <= snaps[k].t)
        return value_at(k);
    const double w = (t - snaps[k].t) / (snaps[k + 1].t - snaps[k].t);
    return (1.0 - w) * value_at(k) + w * value_at(k + 1);
}

} // namespace

double interpolate_lambda(const FlowTrajectory& traj, double t, double x) {
    return interp_field(traj, t, x, &ConformalState::phi, /*as_lambda=*/true);
}

double interpolate_invariant(const FlowTrajectory& traj, double t, double x,
                             CharFamily family) {
    return interp_field(traj, t, x,
                        family == CharFamily::Minus ? &ConformalState::p
                                                    : &ConformalState::q,
                        /*as_lambda=*/false);
}

CharCurve trace(const FlowTrajectory& traj, double anchor_t, double anchor_x,
                CharFamily family, int substeps_per_snapshot) {
    const auto& snaps = traj.snapshots;
    if (snaps.empty()) throw ContractError("trajectory holds no snapshots");
    if (anchor_t < snaps.front().t - 1e-12 || anchor_t > snaps.back().t + 1e-12)
        throw DomainError("anchor time " + std::to_string(anchor_t) +
                          " outside the trajectory's range");
    if (substeps_per_snapshot < 1)
        throw ConfigError("substeps_per_snapshot must be >= 1");

    const double sign = family == CharFamily::Minus ? -1.0 : 1.0;
    const Grid1D& grid = traj.grid;
    const bool periodic = grid.boundary == Boundary::Periodic;

    CharCurve curve;
    curve.family = family;
    curve.anchor_t = anchor_t;
    curve.anchor_x = anchor_x;

    // Integrate backward from the anchor, collecting samples in reverse.
    std::vector<double> rev_tau{anchor_t};
    std::vector<double> rev_xi{anchor_x};

    // Substep size tied to the snapshot cadence so the interpolant is
    // resolved: the smallest positive snapshot gap, subdivided.
    double gap = anchor_t;
    for (std::size_t s = 1; s < snaps.size(); ++s)
        gap = std::min(gap, snaps[s].t - snaps[s - 1].t);
    if (!(gap > 0.0)) gap = anchor_t > 0.0 ? anchor_t : 1.0;
    const double h_base = gap / substeps_per_snapshot;

    double tau = anchor_t;
    double xi = anchor_x;
    while (tau > 0.0) {
        const double h = std::min(h_base, tau);
        auto speed = [&](double tt, double xx) {
            return sign * interpolate_lambda(traj, tt, xx);
        };
        const double k1 = speed(tau, xi);
        const double k2 = speed(tau - 0.5 * h, xi - 0.5 * h * k1);
        const double k3 = speed(tau - 0.5 * h, xi - 0.5 * h * k2);
        const double k4 = speed(tau - h, xi - h * k3);
        xi -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        tau -= h;
        if (!periodic && (xi < grid.x_min || xi > grid.x_max)) {
            curve.truncated = true;
            xi = std::clamp(xi, grid.x_min, grid.x_max);
            rev_tau.push_back(tau);
            rev_xi.push_back(xi);
            break;
        }
        rev_tau.push_back(tau);
        rev_xi.push_back(xi);
    }

    curve.tau.assign(rev_tau.rbegin(), rev_tau.rend());
    curve.xi.assign(rev_xi.rbegin(), rev_xi.rend());
    return curve;
}

double DeterminateDomain::apex_time() const {
    return (b - a) / (1.0 / std::sqrt(m) - 1.0 / std::sqrt(M));
}

bool DeterminateDomain::contains(double t, double x) const {
    if (t < 0.0 || t > apex_time()) return false;
    const double left = a + t / std::sqrt(m);
    const double right = b + t / std::sqrt(M);
    return left <= x && x <= right;
}

DeterminateDomain determinate_domain(double a, double b, double m, double M) {
    if (!(0.0 < m && m < M))
        throw DomainError("speed bounds must satisfy 0 < m < M");
    if (!(a < b)) throw DomainError("interval must satisfy a < b");
    return DeterminateDomain{a, b, m, M};
}

double p_along_char_closed_form(double p0_at_foot, double t) {
    const double denom = 1.0 + 0.25 * p0_at_foot * t;
    if (denom <= 0.0)
        throw BlowupRangeError("closed form evaluated at or past blowup: "
                               "1 + p0 t/4 = " +
                               std::to_string(denom));
    return p0_at_foot / denom;
}

} // namespace hgf
