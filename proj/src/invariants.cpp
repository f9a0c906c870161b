#include "hgf/invariants.hpp"

#include <cmath>
#include <limits>

namespace hgf {

ConformalState initial_invariants(const InitialData& init) {
    const int n = init.grid.n;
    ConformalState st;
    st.t = 0.0;
    st.phi.resize(n);
    st.p.resize(n);
    st.q.resize(n);
    std::vector<double> du0 = derivative4(init.u0, init.grid);
    for (int i = 0; i < n; ++i) {
        double u0 = init.u0[i];
        if (!(u0 > 0.0))
            throw ConfigError("initial_invariants: u0 <= 0 at cell " +
                              std::to_string(i));
        st.phi[i] = std::log(u0);
        double ratio = init.u1[i] / u0;
        double grad = du0[i] / (u0 * std::sqrt(u0));
        st.p[i] = ratio + grad;
        st.q[i] = ratio - grad;
    }
    return st;
}

std::pair<std::vector<double>, std::vector<double>>
state_to_metric(const ConformalState& state) {
    const std::size_t n = state.phi.size();
    std::vector<double> u(n), ut(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = std::exp(state.phi[i]);
        if (!std::isfinite(u[i]))
            throw BlowupRangeError("state_to_metric: e^phi overflow at cell " +
                                   std::to_string(i));
        ut[i] = u[i] * 0.5 * (state.p[i] + state.q[i]);
    }
    return {std::move(u), std::move(ut)};
}

std::vector<double> lambda_of(const ConformalState& state) {
    std::vector<double> lam(state.phi.size());
    for (std::size_t i = 0; i < lam.size(); ++i)
        lam[i] = std::exp(-0.5 * state.phi[i]);
    return lam;
}

AdmissibilityVerdict check_admissibility(const InitialData& init) {
    std::vector<double> du0 = derivative4(init.u0, init.grid);
    AdmissibilityVerdict v;
    v.strict_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < init.grid.n; ++i) {
        double margin = init.u1[i] - std::fabs(du0[i]) / std::sqrt(init.u0[i]);
        if (margin < v.strict_margin) {
            v.strict_margin = margin;
            v.witness_x = init.grid.center(i);
        }
    }
    v.admissible = v.strict_margin >= 0.0;
    return v;
}

HatState hat_invariants(const ConformalState& state) {
    const std::size_t n = state.phi.size();
    HatState h;
    h.hat_p.resize(n);
    h.hat_q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = std::exp(state.phi[i]);
        if (!std::isfinite(u))
            throw BlowupRangeError("hat_invariants: e^phi overflow");
        h.hat_p[i] = u * state.p[i];
        h.hat_q[i] = u * state.q[i];
    }
    return h;
}

TildeState tilde_invariants(const ConformalState& state,
                            std::span<const double> r,
                            std::span<const double> s) {
    const std::size_t n = state.phi.size();
    if (r.size() != n || s.size() != n)
        throw ContractError("tilde_invariants: length mismatch");
    TildeState t;
    t.tilde_r.resize(n);
    t.tilde_s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lam = std::exp(-0.5 * state.phi[i]);
        t.tilde_r[i] = r[i] * lam;
        t.tilde_s[i] = -s[i] * lam;
    }
    return t;
}

} // namespace hgf
