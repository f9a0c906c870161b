#pragma once

#include <utility>

// Closed-form and semi-closed-form solution families of u_tt = (ln u)_xx,
// used as manufactured solutions, convergence oracles, and fixtures.

namespace hgf {

// Separable solutions u = e^{f(t)} e^{g(x)} with e^{f} = (c/2)t^2 + at + b
// and g'' = c e^g. For c = 0 the profile is linear: g = alpha x + beta.
// For c > 0 the zero-energy first integral gives
// g(x) = -2 ln(C - sqrt(c/2) x); see docs/separable_profile.md.
struct SeparableSolution {
    double c = 0.0;
    double a = 0.0;
    double b = 1.0;
    // c == 0 profile:
    double alpha = 0.0;
    double beta = 0.0;
    // c != 0 profile:
    double C = 1.0;
};

double separable_eval(const SeparableSolution& sol, double t, double x);

// Spatially constant scalar curvature R(t) = c / ((c/2)t^2 + at + b).
double separable_curvature(const SeparableSolution& sol, double t);

// Traveling waves u = e^{f(zeta)}, zeta = x - at, with f defined implicitly
// by a^2 e^f - f = c1 zeta + c2. The root is found on the branch containing
// f_init by safeguarded Newton (bisection fallback).
struct TravelingWaveSolution {
    double a = 1.0; // wave speed, nonzero
    double c1 = 0.0;
    double c2 = 1.0;
    double f_init = 0.0; // selects the branch
};

double traveling_wave_f(const TravelingWaveSolution& sol, double zeta);
double traveling_wave_eval(const TravelingWaveSolution& sol, double t,
                           double x);

// Spatially homogeneous solution u = u0 (1 + Pt), P = u1/u0; returns
// (u, p) with p = q = P / (1 + Pt).
std::pair<double, double> homogeneous_solution(double u0, double u1, double t);

} // namespace hgf
