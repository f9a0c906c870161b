#include "hgf/torus.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "hgf/errors.hpp"

namespace hgf {

FlowTrajectory run_periodic(const InitialData& init,
                            const std::vector<double>& background_k,
                            double normalization, const SolverConfig& config) {
    if (init.grid.boundary != Boundary::Periodic)
        throw ConfigError("torus flow requires a periodic grid");
    if (!background_k.empty() && background_k.size() != init.u0.size())
        throw ConfigError("background curvature length does not match grid");

    bool trivial = normalization == 0.0;
    for (double k : background_k)
        if (k != 0.0) trivial = false;
    if (trivial) return run(init, config);

    std::vector<double> forcing(init.u0.size(), normalization);
    for (std::size_t i = 0; i < background_k.size(); ++i)
        forcing[i] -= 2.0 * background_k[i];
    return run(init, config, &forcing);
}

VolumeSeries volume(const FlowTrajectory& traj) {
    if (traj.grid.boundary != Boundary::Periodic)
        throw ConfigError("volume series requires a periodic trajectory");
    VolumeSeries series;
    series.times.reserve(traj.snapshots.size());
    series.volumes.reserve(traj.snapshots.size());
    const double dx = traj.grid.dx();
    for (const auto& snap : traj.snapshots) {
        double v = 0.0;
        for (double phi : snap.phi) v += std::exp(phi);
        series.times.push_back(snap.t);
        series.volumes.push_back(v * dx);
    }
    return series;
}

double volume_law_predict(int chi, double c1, double c2, double t) {
    return -2.0 * std::numbers::pi * chi * t * t + c1 * t + c2;
}

VolumeVerdict periodicity_obstruction_check(const VolumeSeries& series) {
    const std::size_t n = series.times.size();
    if (n < 3 || series.volumes.size() != n)
        throw ContractError("volume verdict needs >= 3 samples");

    // Quadratic least squares via normal equations on (1, t, t^2).
    std::array<double, 5> s{}; // sums of t^k, k = 0..4
    std::array<double, 3> b{}; // sums of V t^k, k = 0..2
    for (std::size_t i = 0; i < n; ++i) {
        const double t = series.times[i];
        const double v = series.volumes[i];
        double tk = 1.0;
        for (int k = 0; k <= 4; ++k) {
            s[k] += tk;
            if (k <= 2) b[k] += v * tk;
            tk *= t;
        }
    }
    // Solve the 3x3 symmetric system by Cramer's rule.
    const double a00 = s[0], a01 = s[1], a02 = s[2];
    const double a11 = s[2], a12 = s[3], a22 = s[4];
    const double det = a00 * (a11 * a22 - a12 * a12) -
                       a01 * (a01 * a22 - a12 * a02) +
                       a02 * (a01 * a12 - a11 * a02);
    if (std::abs(det) < 1e-300)
        throw ContractError("degenerate volume fit (repeated sample times)");
    auto det3 = [](double m00, double m01, double m02, double m10, double m11,
                   double m12, double m20, double m21, double m22) {
        return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
               m02 * (m10 * m21 - m11 * m20);
    };
    VolumeVerdict verdict;
    verdict.c0 = det3(b[0], a01, a02, b[1], a11, a12, b[2], a12, a22) / det;
    verdict.c1 = det3(a00, b[0], a02, a01, b[1], a12, a02, b[2], a22) / det;
    verdict.c2 = det3(a00, a01, b[0], a01, a11, b[1], a02, a12, b[2]) / det;

    // Classify against the series' own scale and time span.
    double vscale = 0.0;
    for (double v : series.volumes) vscale = std::max(vscale, std::abs(v));
    if (vscale == 0.0) vscale = 1.0;
    const double span =
        std::max(1e-300, series.times.back() - series.times.front());
    const double tol = 1e-6 * vscale;
    if (std::abs(verdict.c2) * span * span > tol)
        verdict.shape = "quadratic";
    else if (std::abs(verdict.c1) * span > tol)
        verdict.shape = "linear";
    else
        verdict.shape = "constant";
    return verdict;
}

} // namespace hgf
