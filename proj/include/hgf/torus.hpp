#pragma once

#include <string>
#include <vector>

#include "hgf/grid.hpp"
#include "hgf/solver.hpp"

// Periodic flows representing y-independent conformal metrics on the flat
// torus: the u_tt balance gains a source -2k(x) + normalization, and the
// one-period volume V(t) = integral of u obeys a Gauss-Bonnet law
// V(t) = -2 pi chi t^2 + c1 t + c2. The transverse period is fixed to 1,
// so the 2D volume equals the 1D integral.

namespace hgf {

struct VolumeSeries {
    std::vector<double> times;
    std::vector<double> volumes;
};

// Source-augmented periodic run. With k == 0 and normalization == 0 this
// is bit-identical to run() on the same periodic grid.
FlowTrajectory run_periodic(const InitialData& init,
                            const std::vector<double>& background_k,
                            double normalization, const SolverConfig& config);

// Per-snapshot one-period integral of u (midpoint sum, exact quadrature
// weightings for a periodic uniform grid).
VolumeSeries volume(const FlowTrajectory& traj);

// V(t) = -2 pi chi t^2 + c1 t + c2.
double volume_law_predict(int chi, double c1, double c2, double t);

// Least-squares model selection among constant / linear / quadratic V(t);
// a periodic-in-time regular solution on the torus requires "constant".
struct VolumeVerdict {
    std::string shape; // "constant", "linear", or "quadratic"
    double c0 = 0.0;   // fitted constant term
    double c1 = 0.0;   // fitted slope
    double c2 = 0.0;   // fitted quadratic coefficient
};
VolumeVerdict periodicity_obstruction_check(const VolumeSeries& series);

} // namespace hgf
