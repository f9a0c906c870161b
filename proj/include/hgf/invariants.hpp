#pragma once

#include <utility>
#include <vector>

#include "hgf/grid.hpp"

// Conversions between the metric description (u, u_t) and the Riemann
// invariants (phi, p, q), plus the global-existence admissibility check
// u1 >= |u0'|/sqrt(u0).

namespace hgf {

struct AdmissibilityVerdict {
    bool admissible = false;
    // Largest eps such that u1 >= |u0'|/sqrt(u0) + eps on samples;
    // negative when the condition fails.
    double strict_margin = 0.0;
    double witness_x = 0.0; // where the margin is attained
};

struct HatState {
    std::vector<double> hat_p; // u*p
    std::vector<double> hat_q; // u*q
};

struct TildeState {
    std::vector<double> tilde_r; //  r e^{-phi/2}
    std::vector<double> tilde_s; // -s e^{-phi/2}
};

// phi = ln u0, p = u1/u0 + u0'/u0^{3/2}, q = u1/u0 - u0'/u0^{3/2},
// with u0' by fourth-order centered differences (one-sided at
// ConstantExtension edges).
ConformalState initial_invariants(const InitialData& init);

// u = e^phi, u_t = u (p+q)/2. Throws BlowupRangeError on e^phi overflow.
std::pair<std::vector<double>, std::vector<double>>
state_to_metric(const ConformalState& state);

// Characteristic speed lambda = e^{-phi/2}.
std::vector<double> lambda_of(const ConformalState& state);

AdmissibilityVerdict check_admissibility(const InitialData& init);

HatState hat_invariants(const ConformalState& state);

TildeState tilde_invariants(const ConformalState& state,
                            std::span<const double> r,
                            std::span<const double> s);

} // namespace hgf
