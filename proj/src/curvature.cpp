#include "hgf/curvature.hpp"

#include <cmath>

namespace hgf {

std::pair<std::vector<double>, std::vector<double>>
derivative_invariants(const ConformalState& state, const Grid1D& grid) {
    return {centered_derivative(state.p, grid),
            centered_derivative(state.q, grid)};
}

std::vector<double> scalar_curvature(const ConformalState& state,
                                     std::span<const double> r,
                                     std::span<const double> s) {
    const std::size_t n = state.phi.size();
    if (r.size() != n || s.size() != n)
        throw ContractError("scalar_curvature: length mismatch");
    std::vector<double> R(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lam = std::exp(-0.5 * state.phi[i]);
        double half_diff = 0.5 * (state.p[i] - state.q[i]);
        R[i] = 0.5 * ((r[i] - s[i]) * lam + half_diff * half_diff);
    }
    return R;
}

std::vector<double> scalar_curvature_fd(std::span<const double> u,
                                        const Grid1D& grid) {
    const int n = grid.n;
    if ((int)u.size() != n)
        throw ContractError("scalar_curvature_fd: length mismatch");
    std::vector<double> lnu(n);
    for (int i = 0; i < n; ++i) {
        if (!(u[i] > 0.0))
            throw ConfigError("scalar_curvature_fd: u <= 0 at cell " +
                              std::to_string(i));
        lnu[i] = std::log(u[i]);
    }
    std::vector<double> d2 = second_derivative(lnu, grid);
    for (int i = 0; i < n; ++i) d2[i] /= u[i];
    return d2;
}

std::vector<BoundViolation> bound_monitor(const FlowTrajectory& traj,
                                          double tol) {
    std::vector<BoundViolation> out;
    if (traj.snapshots.empty()) return out;
    const Grid1D& grid = traj.grid;
    const ConformalState& s0 = traj.snapshots.front();

    auto [r0, ss0] = derivative_invariants(s0, grid);
    double sup_p0 = *std::max_element(s0.p.begin(), s0.p.end());
    double sup_q0 = *std::max_element(s0.q.begin(), s0.q.end());
    double sup_rs0 = 0.0;
    for (std::size_t i = 0; i < r0.size(); ++i)
        sup_rs0 = std::max({sup_rs0, std::fabs(r0[i]), std::fabs(ss0[i])});

    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        const ConformalState& st = traj.snapshots[k];
        auto [r, s] = derivative_invariants(st, grid);
        auto report = [&](int i, const std::string& what, double val, double bnd) {
            out.push_back({k, st.t, grid.center(i), what, val, bnd});
        };
        for (int i = 0; i < grid.n; ++i) {
            if (st.p[i] < -tol) report(i, "p below 0", st.p[i], 0.0);
            if (st.p[i] > sup_p0 + tol) report(i, "p above initial sup", st.p[i], sup_p0);
            if (st.q[i] < -tol) report(i, "q below 0", st.q[i], 0.0);
            if (st.q[i] > sup_q0 + tol) report(i, "q above initial sup", st.q[i], sup_q0);
            if (std::fabs(r[i]) > sup_rs0 + tol)
                report(i, "|r| above initial sup", r[i], sup_rs0);
            if (std::fabs(s[i]) > sup_rs0 + tol)
                report(i, "|s| above initial sup", s[i], sup_rs0);
        }
    }
    return out;
}

namespace {
// sup|R| over the interior 80% of the grid (boundary-extension cells can
// pollute the decay fit on line domains).
double interior_sup_abs_R(const ConformalState& st, const Grid1D& grid) {
    auto [r, s] = derivative_invariants(st, grid);
    std::vector<double> R = scalar_curvature(st, r, s);
    int lo = grid.n / 10;
    int hi = grid.n - grid.n / 10;
    double m = 0.0;
    for (int i = lo; i < hi; ++i) m = std::max(m, std::fabs(R[i]));
    return m;
}
} // namespace

DecayFit fit_decay(const FlowTrajectory& traj, double t_lo, double t_hi) {
    if (!(t_hi > t_lo)) throw ContractError("fit_decay: empty window");
    std::vector<double> xs, ys;
    for (const ConformalState& st : traj.snapshots) {
        if (st.t < t_lo || st.t > t_hi) continue;
        double sup = interior_sup_abs_R(st, traj.grid);
        if (sup <= 0.0) continue;
        xs.push_back(std::log1p(st.t));
        ys.push_back(std::log(sup));
    }
    if (xs.size() < 3)
        throw ContractError("fit_decay: fewer than 3 usable snapshots in window "
                            "(flat metric or window outside trajectory)");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = (double)xs.size();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double intercept = (sy - slope * sx) / m;
    DecayFit fit;
    fit.gamma = -slope;
    fit.k_tilde = std::exp(intercept);
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (intercept + slope * xs[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / m);
    return fit;
}

} // namespace hgf
