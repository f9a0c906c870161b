#include "hgf/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgf/errors.hpp"
#include "hgf/kernels.hpp"

namespace hgf {

namespace {

constexpr std::size_t kGhost = 2;

void pad_clamped(std::vector<double>& out, const std::vector<double>& v) {
    const std::size_t n = v.size();
    out.resize(n + 2 * kGhost);
    std::copy(v.begin(), v.end(), out.begin() + kGhost);
    for (std::size_t g = 0; g < kGhost; ++g) {
        out[g] = v.front();
        out[n + kGhost + g] = v.back();
    }
}

// Same upwind stencils as the planar solver: first-order one-sided
// differences, or minmod-limited face reconstruction.
void upwind_derivative(std::vector<double>& dfdx,
                       const std::vector<double>& a, double dx,
                       bool leans_right, Limiter limiter) {
    const auto& k = kernels::active();
    const std::size_t n = a.size() - 2 * kGhost;
    dfdx.resize(n);
    if (limiter == Limiter::None) {
        if (leans_right)
            k.diff_scaled(dfdx.data(), a.data() + kGhost + 1,
                          a.data() + kGhost, 1.0 / dx, n);
        else
            k.diff_scaled(dfdx.data(), a.data() + kGhost,
                          a.data() + kGhost - 1, 1.0 / dx, n);
        return;
    }
    const std::size_t ns = n + 2;
    std::vector<double> dl(ns), dr(ns), sig(ns), faces(n + 1);
    k.diff_scaled(dl.data(), a.data() + 1, a.data(), 1.0 / dx, ns);
    k.diff_scaled(dr.data(), a.data() + 2, a.data() + 1, 1.0 / dx, ns);
    k.minmod(sig.data(), dl.data(), dr.data(), ns);
    if (leans_right)
        k.axpy(faces.data(), a.data() + 2, sig.data() + 1, -0.5 * dx, n + 1);
    else
        k.axpy(faces.data(), a.data() + 1, sig.data(), 0.5 * dx, n + 1);
    k.diff_scaled(dfdx.data(), faces.data() + 1, faces.data(), 1.0 / dx, n);
}

void radial_signal_check(const RadialState& state, const Grid1D& grid,
                         const SolverConfig& config, RadialTrajectory& traj,
                         bool& stopped) {
    const double psi_floor = std::log(config.u_floor);
    for (std::size_t i = 0; i < state.psi.size(); ++i) {
        StopReason reason;
        if (!(state.psi[i] > psi_floor)) {
            reason = StopReason::Degeneracy;
        } else {
            const double m =
                std::max(std::abs(state.mu[i]), std::abs(state.nu[i]));
            if (m <= config.blowup_p_threshold) continue;
            reason = StopReason::Blowup;
        }
        traj.stop_reason = reason;
        traj.stop_time = state.t;
        traj.stop_r = grid.center(static_cast<int>(i));
        stopped = true;
        return;
    }
}

} // namespace

RadialState radial_initial_invariants(const std::vector<double>& u0,
                                      const std::vector<double>& u1,
                                      const Grid1D& grid) {
    if (u0.size() != u1.size() ||
        u0.size() != static_cast<std::size_t>(grid.n))
        throw ConfigError("initial samples do not match the radial grid");
    if (!(grid.x_min > 0.0))
        throw ConfigError("radial grid must exclude the origin (r_min > 0)");

    RadialState state;
    state.t = 0.0;
    state.psi.resize(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) {
        if (!(u0[i] > 0.0))
            throw ConfigError("u0 must be positive at r=" +
                              std::to_string(grid.center(static_cast<int>(i))));
        state.psi[i] = std::log(u0[i]);
    }
    const auto w = centered_derivative(state.psi, grid);
    state.mu.resize(u0.size());
    state.nu.resize(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) {
        const double v = u1[i] / u0[i];
        const double chi_w = std::exp(-0.5 * state.psi[i]) * w[i];
        state.mu[i] = v + chi_w;
        state.nu[i] = v - chi_w;
    }
    return state;
}

RadialRhs radial_rhs(const RadialState& state, const Grid1D& grid,
                     Limiter limiter) {
    const auto& k = kernels::active();
    const std::size_t n = state.psi.size();
    const double dr = grid.dx();

    std::vector<double> mu_pad, nu_pad;
    pad_clamped(mu_pad, state.mu);
    pad_clamped(nu_pad, state.nu);

    std::vector<double> mur, nur;
    upwind_derivative(mur, mu_pad, dr, /*leans_right=*/true, limiter);
    upwind_derivative(nur, nu_pad, dr, /*leans_right=*/false, limiter);

    RadialRhs out;
    out.dpsi.resize(n);
    out.dmu.resize(n);
    out.dnu.resize(n);
    k.scaled_sum(out.dpsi.data(), state.mu.data(), state.nu.data(), 0.5, n);

    for (std::size_t i = 0; i < n; ++i) {
        const double chi = std::exp(-0.5 * state.psi[i]);
        if (!std::isfinite(chi))
            throw NumericFault("characteristic speed overflowed", state.t,
                               static_cast<long>(i));
        const double r = grid.center(static_cast<int>(i));
        const double mean = 0.5 * (state.mu[i] + state.nu[i]);
        const double half_diff = 0.5 * (state.mu[i] - state.nu[i]);
        out.dmu[i] = chi * mur[i] - mean * mean +
                     (chi / r - 0.5 * state.nu[i]) * half_diff;
        out.dnu[i] = -chi * nur[i] - mean * mean +
                     (chi / r + 0.5 * state.mu[i]) * half_diff;
    }
    return out;
}

RadialTrajectory run_radial(const std::vector<double>& u0,
                            const std::vector<double>& u1, const Grid1D& grid,
                            const SolverConfig& config) {
    if (grid.boundary != Boundary::ConstantExtension)
        throw ConfigError("radial runs use constant-extension boundaries");
    if (!(grid.x_min >= 10.0 * grid.dx()))
        throw ConfigError("radial grid needs r_min >= 10 dr away from the "
                          "origin");
    if (!(config.cfl > 0.0 && config.cfl <= 1.0))
        throw ConfigError("cfl must lie in (0, 1]");
    if (!(config.t_end > 0.0)) throw ConfigError("t_end must be positive");

    RadialTrajectory traj;
    traj.grid = grid;
    RadialState state = radial_initial_invariants(u0, u1, grid);
    traj.snapshots.push_back(state);
    traj.stop_reason = StopReason::ReachedEnd;

    const auto& k = kernels::active();
    long steps = 0;
    while (state.t < config.t_end) {
        const double psi_min =
            k.reduce_min(state.psi.data(), state.psi.size());
        const double chi_max = std::exp(-0.5 * psi_min);
        if (!std::isfinite(chi_max))
            throw BlowupRangeError("characteristic speed overflowed at t=" +
                                   std::to_string(state.t));
        double dt = config.cfl * grid.dx() / chi_max;
        if (config.fixed_dt > 0.0) {
            if (config.fixed_dt > dt * (1.0 + 1e-12))
                throw ConfigError("fixed_dt violates the CFL bound at t=" +
                                  std::to_string(state.t));
            dt = config.fixed_dt;
        }
        dt = std::min(dt, config.t_end - state.t);

        // Heun step.
        const std::size_t n = state.psi.size();
        const RadialRhs k1 = radial_rhs(state, grid, config.limiter);
        RadialState mid;
        mid.t = state.t + dt;
        mid.psi.resize(n);
        mid.mu.resize(n);
        mid.nu.resize(n);
        k.axpy(mid.psi.data(), state.psi.data(), k1.dpsi.data(), dt, n);
        k.axpy(mid.mu.data(), state.mu.data(), k1.dmu.data(), dt, n);
        k.axpy(mid.nu.data(), state.nu.data(), k1.dnu.data(), dt, n);
        const RadialRhs k2 = radial_rhs(mid, grid, config.limiter);
        RadialState next;
        next.t = state.t + dt;
        next.psi.resize(n);
        next.mu.resize(n);
        next.nu.resize(n);
        k.add_scaled_sum(next.psi.data(), state.psi.data(), k1.dpsi.data(),
                         k2.dpsi.data(), 0.5 * dt, n);
        k.add_scaled_sum(next.mu.data(), state.mu.data(), k1.dmu.data(),
                         k2.dmu.data(), 0.5 * dt, n);
        k.add_scaled_sum(next.nu.data(), state.nu.data(), k1.dnu.data(),
                         k2.dnu.data(), 0.5 * dt, n);
        state = std::move(next);
        ++steps;

        bool stopped = false;
        radial_signal_check(state, grid, config, traj, stopped);
        if (stopped || state.t >= config.t_end ||
            steps % config.snapshot_stride == 0)
            traj.snapshots.push_back(state);
        if (stopped) return traj;
        if (steps >= config.max_steps)
            throw ContractError("max_steps exhausted at t=" +
                                std::to_string(state.t));
    }
    traj.stop_time = state.t;
    return traj;
}

namespace {

// Centered time derivative of a field across snapshots s-1, s+1.
std::vector<double> time_derivative(const std::vector<RadialState>& snaps,
                                    std::size_t s,
                                    std::vector<double> RadialState::* field) {
    const double dt2 = snaps[s + 1].t - snaps[s - 1].t;
    const auto& lo = snaps[s - 1].*field;
    const auto& hi = snaps[s + 1].*field;
    std::vector<double> out(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i)
        out[i] = (hi[i] - lo[i]) / dt2;
    return out;
}

} // namespace

std::vector<double> conservative_form_residual(const RadialTrajectory& traj) {
    const auto& snaps = traj.snapshots;
    if (snaps.size() < 3)
        throw ContractError("residual check needs at least 3 snapshots");
    const Grid1D& grid = traj.grid;
    const std::size_t n = snaps[0].psi.size();
    const std::size_t skip = std::min<std::size_t>(4, n / 4);

    std::vector<double> residuals;
    for (std::size_t s = 1; s + 1 < snaps.size(); ++s) {
        const auto& st = snaps[s];
        const auto mu_t = time_derivative(snaps, s, &RadialState::mu);
        const auto nu_t = time_derivative(snaps, s, &RadialState::nu);
        std::vector<double> chi_mu(n), chi_nu(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double chi = std::exp(-0.5 * st.psi[i]);
            chi_mu[i] = chi * st.mu[i];
            chi_nu[i] = chi * st.nu[i];
        }
        const auto dchi_mu = centered_derivative(chi_mu, grid);
        const auto dchi_nu = centered_derivative(chi_nu, grid);
        double worst = 0.0;
        for (std::size_t i = skip; i + skip < n; ++i) {
            const double chi = std::exp(-0.5 * st.psi[i]);
            const double r = grid.center(static_cast<int>(i));
            const double rhs = -st.mu[i] * st.nu[i] +
                               chi * (st.mu[i] - st.nu[i]) / (2.0 * r);
            worst = std::max(worst, std::abs(mu_t[i] - dchi_mu[i] - rhs));
            worst = std::max(worst, std::abs(nu_t[i] + dchi_nu[i] - rhs));
        }
        residuals.push_back(worst);
    }
    return residuals;
}

std::vector<double> derivative_system_residual(const RadialTrajectory& traj) {
    const auto& snaps = traj.snapshots;
    if (snaps.size() < 3)
        throw ContractError("residual check needs at least 3 snapshots");
    const Grid1D& grid = traj.grid;
    const std::size_t n = snaps[0].psi.size();
    const std::size_t skip = std::min<std::size_t>(4, n / 4);

    // eta = mu_r and gamma = nu_r per snapshot.
    std::vector<std::vector<double>> eta(snaps.size()), gam(snaps.size());
    for (std::size_t s = 0; s < snaps.size(); ++s) {
        eta[s] = centered_derivative(snaps[s].mu, grid);
        gam[s] = centered_derivative(snaps[s].nu, grid);
    }

    std::vector<double> residuals;
    for (std::size_t s = 1; s + 1 < snaps.size(); ++s) {
        const auto& st = snaps[s];
        const double dt2 = snaps[s + 1].t - snaps[s - 1].t;
        const auto eta_r = centered_derivative(eta[s], grid);
        const auto gam_r = centered_derivative(gam[s], grid);
        double worst = 0.0;
        for (std::size_t i = skip; i + skip < n; ++i) {
            const double chi = std::exp(-0.5 * st.psi[i]);
            const double r = grid.center(static_cast<int>(i));
            const double diff = st.mu[i] - st.nu[i];
            const double eta_t = (eta[s + 1][i] - eta[s - 1][i]) / dt2;
            const double gam_t = (gam[s + 1][i] - gam[s - 1][i]) / dt2;
            const double shared =
                -(diff / (4.0 * r) + chi / (r * r)) * 0.5 * diff;
            const double r1 =
                eta_t - chi * eta_r[i] +
                0.25 * (3.0 * st.mu[i] + st.nu[i]) * (eta[s][i] + gam[s][i]) -
                shared -
                (chi / r - 0.5 * st.nu[i]) * 0.5 * (eta[s][i] - gam[s][i]);
            const double r2 =
                gam_t + chi * gam_r[i] +
                0.25 * (st.mu[i] + 3.0 * st.nu[i]) * (eta[s][i] + gam[s][i]) -
                shared -
                (chi / r + 0.5 * st.mu[i]) * 0.5 * (eta[s][i] - gam[s][i]);
            worst = std::max(worst, std::max(std::abs(r1), std::abs(r2)));
        }
        residuals.push_back(worst);
    }
    return residuals;
}

} // namespace hgf
