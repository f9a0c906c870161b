#pragma once

#include <optional>

#include "hgf/grid.hpp"

// Blowup-time prediction from initial data, runtime detection over a
// finished trajectory, locus estimation, and curvature growth-rate fitting.

namespace hgf {

struct BlowupPrediction {
    double tmax;      // +infinity when inf p0 >= 0
    double foot_x0;   // argmin of p0 (leftmost on ties)
    double inf_p0;
    bool heuristic;   // u1 deviates from u0' / sqrt(u0)
};

struct BlowupDetection {
    double detected_t;
    double locus_x;
};

struct BlowupReport {
    BlowupPrediction prediction;
    std::optional<BlowupDetection> detection;
    std::optional<double> growth_exponent;
};

// T_max = -4 / inf p0 with p0 = 2 u0' u0^{-3/2}; exact when
// u1 = u0' / sqrt(u0), otherwise flagged heuristic.
BlowupPrediction predict_tmax(const InitialData& init,
                              double u1_tolerance = 1e-8);

// Time and location of the terminating signal. The locus follows the
// Minus-family characteristic from the foot of the minimizing p0 to the
// stop time; if tracing fails the argmin of p at the final snapshot is
// used instead.
std::optional<BlowupDetection> detect(const FlowTrajectory& traj,
                                      const BlowupPrediction& prediction);

// Least-squares slope of log max_x R against log(detected_t - t) over the
// approach window (from max R exceeding 10x its initial value to the last
// snapshot strictly before detected_t). Expected near -2. Throws
// ContractError with fewer than 10 usable snapshots.
double fit_growth_exponent(const FlowTrajectory& traj, double detected_t);

BlowupReport analyze(const InitialData& init, const FlowTrajectory& traj);

} // namespace hgf
