#include "hgf/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hgf/errors.hpp"

namespace hgf {

namespace {

// e^{f(t)} = (c/2) t^2 + a t + b; must stay positive on the evaluated range.
double time_factor(const SeparableSolution& sol, double t) {
    const double ef = 0.5 * sol.c * t * t + sol.a * t + sol.b;
    if (!(ef > 0.0))
        throw DomainError("separable time factor non-positive at t=" +
                          std::to_string(t));
    return ef;
}

} // namespace

double separable_eval(const SeparableSolution& sol, double t, double x) {
    const double ef = time_factor(sol, t);
    if (sol.c == 0.0) return ef * std::exp(sol.alpha * x + sol.beta);
    if (sol.c < 0.0)
        throw DomainError("separable profile requires c >= 0");
    const double base = sol.C - std::sqrt(0.5 * sol.c) * x;
    if (!(base > 0.0))
        throw DomainError("separable profile undefined at x=" +
                          std::to_string(x));
    return ef / (base * base);
}

double separable_curvature(const SeparableSolution& sol, double t) {
    return sol.c / time_factor(sol, t);
}

double traveling_wave_f(const TravelingWaveSolution& sol, double zeta) {
    if (sol.a == 0.0) throw ConfigError("wave speed must be nonzero");
    const double a2 = sol.a * sol.a;
    const double rhs = sol.c1 * zeta + sol.c2;

    // F(f) = a^2 e^f - f is convex with minimum at f* = -ln a^2,
    // F(f*) = 1 + ln a^2. Two monotone branches; pick the one holding
    // f_init and bracket the root there.
    const double f_star = -std::log(a2);
    const double f_min = 1.0 + std::log(a2);
    if (rhs < f_min - 1e-14)
        throw DomainError("no real traveling-wave branch: right side " +
                          std::to_string(rhs) + " below the fold value " +
                          std::to_string(f_min));

    const bool upper = sol.f_init >= f_star;
    auto F = [&](double f) { return a2 * std::exp(f) - f; };

    // Bracket [lo, hi] with F(lo) <= rhs <= F(hi) on the chosen branch.
    double lo, hi;
    if (upper) {
        lo = f_star;
        hi = f_star + 1.0;
        while (F(hi) < rhs) hi = f_star + 2.0 * (hi - f_star);
    } else {
        hi = f_star;
        lo = f_star - 1.0;
        while (F(lo) < rhs) lo = f_star - 2.0 * (f_star - lo);
    }

    // Safeguarded Newton: fall back to bisection whenever the Newton step
    // leaves the bracket or stalls.
    double f = std::clamp(sol.f_init, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double val = F(f) - rhs;
        if (std::abs(val) < 1e-14 * std::max(1.0, std::abs(rhs))) break;
        // F increases on the upper branch and decreases on the lower one.
        if ((val > 0.0) == upper)
            hi = f;
        else
            lo = f;
        const double deriv = a2 * std::exp(f) - 1.0;
        double next;
        if (std::abs(deriv) < 1e-12) {
            next = 0.5 * (lo + hi);
        } else {
            next = f - val / deriv;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        }
        if (next == f) break;
        f = next;
    }
    // A root at the fold (a^2 e^f = 1) only obstructs a genuinely
    // traveling profile: with c1 = 0 the wave is constant in zeta and the
    // tangent root is the legitimate (unique) solution.
    const double deriv = a2 * std::exp(f) - 1.0;
    if (sol.c1 != 0.0 && std::abs(deriv) < 1e-10)
        throw DomainError("traveling-wave branch fold at zeta=" +
                          std::to_string(zeta));
    return f;
}

double traveling_wave_eval(const TravelingWaveSolution& sol, double t,
                           double x) {
    return std::exp(traveling_wave_f(sol, x - sol.a * t));
}

std::pair<double, double> homogeneous_solution(double u0, double u1,
                                               double t) {
    if (!(u0 > 0.0)) throw ConfigError("u0 must be positive");
    const double P = u1 / u0;
    const double factor = 1.0 + P * t;
    if (!(factor > 0.0))
        throw DomainError("metric degenerate at t=" + std::to_string(t) +
                          " (1 + Pt <= 0)");
    return {u0 * factor, P / factor};
}

} // namespace hgf
