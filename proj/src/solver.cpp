#include "hgf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "hgf/curvature.hpp"
#include "hgf/errors.hpp"
#include "hgf/invariants.hpp"
#include "hgf/kernels.hpp"

namespace hgf {

namespace {

constexpr std::size_t kGhost = 2;

// Copies v into the interior of a (n + 2*kGhost)-cell scratch array and
// fills the ghost cells according to the boundary rule.
void pad(std::vector<double>& out, const std::vector<double>& v,
         const Grid1D& grid) {
    const std::size_t n = v.size();
    out.resize(n + 2 * kGhost);
    std::copy(v.begin(), v.end(), out.begin() + kGhost);
    if (grid.boundary == Boundary::Periodic) {
        for (std::size_t g = 0; g < kGhost; ++g) {
            out[g] = v[n - kGhost + g];
            out[n + kGhost + g] = v[g];
        }
    } else {
        for (std::size_t g = 0; g < kGhost; ++g) {
            out[g] = v.front();
            out[n + kGhost + g] = v.back();
        }
    }
}

// Slope-limited spatial derivative of the padded field a (size n + 4).
// Upwind side selects which adjacent faces enter the divided difference:
// p travels leftward, so its stencil leans right; q leans left.
void upwind_derivative(std::vector<double>& dfdx,
                       const std::vector<double>& a, double dx,
                       bool leans_right, Limiter limiter,
                       std::vector<double>& scratch_faces,
                       std::vector<double>& scratch_dl,
                       std::vector<double>& scratch_dr,
                       std::vector<double>& scratch_sig) {
    const auto& k = kernels::active();
    const std::size_t n = a.size() - 2 * kGhost;
    dfdx.resize(n);
    if (limiter == Limiter::None) {
        if (leans_right) {
            k.diff_scaled(dfdx.data(), a.data() + kGhost + 1,
                          a.data() + kGhost, 1.0 / dx, n);
        } else {
            k.diff_scaled(dfdx.data(), a.data() + kGhost,
                          a.data() + kGhost - 1, 1.0 / dx, n);
        }
        return;
    }

    // Minmod-limited slopes at padded cells 1 .. n+2.
    const std::size_t ns = n + 2;
    scratch_dl.resize(ns);
    scratch_dr.resize(ns);
    scratch_sig.resize(ns);
    k.diff_scaled(scratch_dl.data(), a.data() + 1, a.data(), 1.0 / dx, ns);
    k.diff_scaled(scratch_dr.data(), a.data() + 2, a.data() + 1, 1.0 / dx, ns);
    k.minmod(scratch_sig.data(), scratch_dl.data(), scratch_dr.data(), ns);

    // Reconstructed face values at x_{j+1/2}, j = 1 .. n+1 (padded index).
    scratch_faces.resize(n + 1);
    if (leans_right) {
        // value carried from the right cell: a[j+1] - sigma[j+1] dx/2
        k.axpy(scratch_faces.data(), a.data() + 2, scratch_sig.data() + 1,
               -0.5 * dx, n + 1);
    } else {
        // value carried from the left cell: a[j] + sigma[j] dx/2
        k.axpy(scratch_faces.data(), a.data() + 1, scratch_sig.data(),
               0.5 * dx, n + 1);
    }
    k.diff_scaled(dfdx.data(), scratch_faces.data() + 1, scratch_faces.data(),
                  1.0 / dx, n);
}

struct RhsWorkspace {
    std::vector<double> phi_pad, p_pad, q_pad, lam, px, qx, sp, sq;
    std::vector<double> faces, dl, dr, sig;
};

void eval_rhs(Rhs& out, const ConformalState& state, const Grid1D& grid,
              Limiter limiter, const std::vector<double>* forcing,
              RhsWorkspace& w) {
    const auto& k = kernels::active();
    const std::size_t n = state.p.size();
    const double dx = grid.dx();

    pad(w.phi_pad, state.phi, grid);
    pad(w.p_pad, state.p, grid);
    pad(w.q_pad, state.q, grid);

    w.lam.resize(n + 2 * kGhost);
    for (std::size_t i = 0; i < w.lam.size(); ++i)
        w.lam[i] = std::exp(-0.5 * w.phi_pad[i]);

    upwind_derivative(w.px, w.p_pad, dx, /*leans_right=*/true, limiter,
                      w.faces, w.dl, w.dr, w.sig);
    upwind_derivative(w.qx, w.q_pad, dx, /*leans_right=*/false, limiter,
                      w.faces, w.dl, w.dr, w.sig);

    w.sp.resize(n);
    w.sq.resize(n);
    k.pq_source(w.sp.data(), w.sq.data(), state.p.data(), state.q.data(), n);

    out.dphi.resize(n);
    out.dp.resize(n);
    out.dq.resize(n);
    k.scaled_sum(out.dphi.data(), state.p.data(), state.q.data(), 0.5, n);
    const double* lam_in = w.lam.data() + kGhost;
    k.fmadd(out.dp.data(), lam_in, w.px.data(), w.sp.data(), n);
    k.fnmadd(out.dq.data(), lam_in, w.qx.data(), w.sq.data(), n);

    if (forcing != nullptr) {
        // The u_tt balance carries the term S; divided by u = e^phi it
        // enters both invariant equations as S e^{-phi} = S lambda^2.
        for (std::size_t i = 0; i < n; ++i) {
            const double add = (*forcing)[i] * lam_in[i] * lam_in[i];
            out.dp[i] += add;
            out.dq[i] += add;
        }
    }
}

ConformalState heun_step(const ConformalState& state, const Grid1D& grid,
                         double dt, Limiter limiter,
                         const std::vector<double>* forcing, RhsWorkspace& w,
                         Rhs& k1, Rhs& k2, ConformalState& mid) {
    const auto& k = kernels::active();
    const std::size_t n = state.p.size();

    eval_rhs(k1, state, grid, limiter, forcing, w);

    mid.t = state.t + dt;
    mid.phi.resize(n);
    mid.p.resize(n);
    mid.q.resize(n);
    k.axpy(mid.phi.data(), state.phi.data(), k1.dphi.data(), dt, n);
    k.axpy(mid.p.data(), state.p.data(), k1.dp.data(), dt, n);
    k.axpy(mid.q.data(), state.q.data(), k1.dq.data(), dt, n);

    eval_rhs(k2, mid, grid, limiter, forcing, w);

    ConformalState next;
    next.t = state.t + dt;
    next.phi.resize(n);
    next.p.resize(n);
    next.q.resize(n);
    k.add_scaled_sum(next.phi.data(), state.phi.data(), k1.dphi.data(),
                     k2.dphi.data(), 0.5 * dt, n);
    k.add_scaled_sum(next.p.data(), state.p.data(), k1.dp.data(), k2.dp.data(),
                     0.5 * dt, n);
    k.add_scaled_sum(next.q.data(), state.q.data(), k1.dq.data(), k2.dq.data(),
                     0.5 * dt, n);
    return next;
}

} // namespace

Rhs rhs(const ConformalState& state, const Grid1D& grid, Limiter limiter,
        const std::vector<double>* forcing) {
    RhsWorkspace w;
    Rhs out;
    eval_rhs(out, state, grid, limiter, forcing, w);
    return out;
}

double stable_dt(const ConformalState& state, const Grid1D& grid,
                 const SolverConfig& config) {
    double lam_max = 0.0;
    const double phi_min =
        kernels::active().reduce_min(state.phi.data(), state.phi.size());
    lam_max = std::exp(-0.5 * phi_min);
    if (!std::isfinite(lam_max))
        throw BlowupRangeError("characteristic speed overflowed at t=" +
                               std::to_string(state.t));
    double dt = config.cfl * grid.dx() / lam_max;
    return std::min(dt, config.t_end - state.t);
}

ConformalState step(const ConformalState& state, const Grid1D& grid, double dt,
                    Limiter limiter, const std::vector<double>* forcing) {
    RhsWorkspace w;
    Rhs k1, k2;
    ConformalState mid;
    return heun_step(state, grid, dt, limiter, forcing, w, k1, k2, mid);
}

std::optional<BlowupSignal> check_signal(const ConformalState& state,
                                         const Grid1D& grid,
                                         const SolverConfig& config) {
    const std::size_t n = state.p.size();
    const double phi_floor = std::log(config.u_floor);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(state.phi[i] > phi_floor))
            return BlowupSignal{StopReason::Degeneracy, state.t,
                                grid.center(i)};
        const double m = std::max(std::abs(state.p[i]), std::abs(state.q[i]));
        if (!(m <= config.blowup_p_threshold))
            return BlowupSignal{StopReason::Blowup, state.t, grid.center(i)};
    }
    return std::nullopt;
}

DiagnosticRecord diagnostics_of(const ConformalState& state,
                                const Grid1D& grid) {
    const auto& k = kernels::active();
    const std::size_t n = state.p.size();
    DiagnosticRecord rec;
    rec.t = state.t;
    rec.sup_p = k.reduce_max(state.p.data(), n);
    rec.inf_p = k.reduce_min(state.p.data(), n);
    rec.sup_q = k.reduce_max(state.q.data(), n);
    rec.inf_q = k.reduce_min(state.q.data(), n);

    const auto [r, s] = derivative_invariants(state, grid);
    rec.sup_abs_r = k.reduce_max_abs(r.data(), n);
    rec.sup_abs_s = k.reduce_max_abs(s.data(), n);
    const auto R = scalar_curvature(state, r, s);
    rec.sup_abs_R = k.reduce_max_abs(R.data(), n);

    // Midpoint-rule volume of the metric over the computational window.
    double vol = 0.0;
    for (std::size_t i = 0; i < n; ++i) vol += std::exp(state.phi[i]);
    rec.volume = vol * grid.dx();
    return rec;
}

FlowTrajectory run(const InitialData& init, const SolverConfig& config,
                   const std::vector<double>* forcing) {
    if (!(config.cfl > 0.0 && config.cfl <= 1.0))
        throw ConfigError("cfl must lie in (0, 1]");
    if (!(config.t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (!(config.u_floor > 0.0)) throw ConfigError("u_floor must be positive");
    if (config.snapshot_stride < 1)
        throw ConfigError("snapshot_stride must be >= 1");
    if (forcing != nullptr && forcing->size() != init.u0.size())
        throw ConfigError("forcing length does not match the grid");

    FlowTrajectory traj;
    traj.grid = init.grid;

    ConformalState state = initial_invariants(init);

    traj.snapshots.push_back(state);
    traj.diagnostics.push_back(diagnostics_of(state, init.grid));
    traj.stop_reason = StopReason::ReachedEnd;
    traj.stop_time = 0.0;
    traj.stop_x = 0.0;

    RhsWorkspace w;
    Rhs k1, k2;
    ConformalState mid;

    long steps = 0;
    while (state.t < config.t_end) {
        double dt;
        if (config.fixed_dt > 0.0) {
            dt = std::min(config.fixed_dt, config.t_end - state.t);
            if (dt > stable_dt(state, init.grid, config) * (1.0 + 1e-12))
                throw ConfigError("fixed_dt violates the CFL bound at t=" +
                                  std::to_string(state.t));
        } else {
            dt = stable_dt(state, init.grid, config);
        }
        state = heun_step(state, init.grid, dt, config.limiter, forcing, w,
                          k1, k2, mid);
        ++steps;

        const auto signal = check_signal(state, init.grid, config);
        const bool due = signal.has_value() || state.t >= config.t_end ||
                         steps % config.snapshot_stride == 0;
        if (due) {
            traj.snapshots.push_back(state);
            traj.diagnostics.push_back(diagnostics_of(state, init.grid));
        }
        if (signal) {
            traj.stop_reason = signal->reason;
            traj.stop_time = signal->t;
            traj.stop_x = signal->x;
            return traj;
        }
        if (steps >= config.max_steps)
            throw ContractError("max_steps exhausted at t=" +
                                std::to_string(state.t));
    }
    traj.stop_time = state.t;
    return traj;
}

std::vector<double> second_order_residual(const FlowTrajectory& traj) {
    const auto& snaps = traj.snapshots;
    if (snaps.size() < 3)
        throw ContractError("residual check needs at least 3 snapshots");
    const double dt = snaps[1].t - snaps[0].t;
    for (std::size_t s = 1; s + 1 < snaps.size(); ++s) {
        const double step_dt = snaps[s + 1].t - snaps[s].t;
        if (std::abs(step_dt - dt) > 1e-10 * std::max(1.0, std::abs(dt)))
            throw ContractError("residual check needs uniform snapshots");
    }

    const Grid1D& grid = traj.grid;
    const std::size_t n = snaps[0].phi.size();
    const double dx = grid.dx();
    std::vector<double> residuals;
    residuals.reserve(snaps.size() - 2);
    std::vector<double> u_prev(n), u_mid(n), u_next(n);

    // Interior cells only: one-sided boundary treatment would pollute the
    // centered-difference residual on non-periodic grids.
    const std::size_t skip =
        grid.boundary == Boundary::Periodic ? 0 : std::min<std::size_t>(4, n / 4);

    for (std::size_t s = 1; s + 1 < snaps.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            u_prev[i] = std::exp(snaps[s - 1].phi[i]);
            u_mid[i] = std::exp(snaps[s].phi[i]);
            u_next[i] = std::exp(snaps[s + 1].phi[i]);
        }
        const auto phixx = second_derivative(snaps[s].phi, grid);
        double worst = 0.0;
        for (std::size_t i = skip; i + skip < n; ++i) {
            const double utt =
                (u_next[i] - 2.0 * u_mid[i] + u_prev[i]) / (dt * dt);
            worst = std::max(worst, std::abs(utt - phixx[i]));
        }
        residuals.push_back(worst);
        (void)dx;
    }
    return residuals;
}

double line_padding(double t_end, double u0_min) {
    if (!(u0_min > 0.0)) throw ConfigError("u0 must be positive");
    return t_end / std::sqrt(u0_min);
}

} // namespace hgf
