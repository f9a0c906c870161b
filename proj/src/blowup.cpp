#include "hgf/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hgf/characteristics.hpp"
#include "hgf/errors.hpp"

namespace hgf {

BlowupPrediction predict_tmax(const InitialData& init, double u1_tolerance) {
    const std::size_t n = init.u0.size();
    const auto du0 = derivative4(init.u0, init.grid);

    BlowupPrediction out;
    out.inf_p0 = std::numeric_limits<double>::infinity();
    out.foot_x0 = init.grid.center(0);
    out.heuristic = false;

    double worst_dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p0 = 2.0 * du0[i] * std::pow(init.u0[i], -1.5);
        if (p0 < out.inf_p0) {
            out.inf_p0 = p0;
            out.foot_x0 = init.grid.center(static_cast<int>(i));
        }
        const double expected_u1 = du0[i] / std::sqrt(init.u0[i]);
        worst_dev = std::max(worst_dev, std::abs(init.u1[i] - expected_u1));
    }
    out.heuristic = worst_dev > u1_tolerance;
    out.tmax = out.inf_p0 >= 0.0 ? std::numeric_limits<double>::infinity()
                                 : -4.0 / out.inf_p0;
    return out;
}

std::optional<BlowupDetection> detect(const FlowTrajectory& traj,
                                      const BlowupPrediction& prediction) {
    if (traj.stop_reason == StopReason::ReachedEnd) return std::nullopt;

    BlowupDetection out;
    out.detected_t = traj.stop_time;

    // Follow the left-moving characteristic forward from the minimizing
    // foot up to the signal time: its endpoint estimates the singular
    // point. Forward RK4 on d xi/dt = -lambda over the stored snapshots.
    bool traced = false;
    try {
        const double t_end = traj.snapshots.back().t;
        double gap = t_end;
        for (std::size_t s = 1; s < traj.snapshots.size(); ++s)
            gap = std::min(gap,
                           traj.snapshots[s].t - traj.snapshots[s - 1].t);
        if (gap > 0.0 && t_end > 0.0) {
            const double h_base = gap / 4.0;
            double t = 0.0;
            double xi = prediction.foot_x0;
            while (t < t_end) {
                const double h = std::min(h_base, t_end - t);
                auto speed = [&](double tt, double xx) {
                    return -interpolate_lambda(traj, tt, xx);
                };
                const double k1 = speed(t, xi);
                const double k2 = speed(t + 0.5 * h, xi + 0.5 * h * k1);
                const double k3 = speed(t + 0.5 * h, xi + 0.5 * h * k2);
                const double k4 = speed(t + h, xi + h * k3);
                xi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                t += h;
            }
            if (traj.grid.boundary == Boundary::Periodic) {
                const double len = traj.grid.length();
                xi = traj.grid.x_min +
                     std::fmod(std::fmod(xi - traj.grid.x_min, len) + len, len);
            }
            if (xi >= traj.grid.x_min && xi <= traj.grid.x_max) {
                out.locus_x = xi;
                traced = true;
            }
        }
    } catch (const std::exception&) {
        traced = false;
    }
    if (!traced) {
        const auto& last = traj.snapshots.back();
        const std::size_t i_min = static_cast<std::size_t>(
            std::min_element(last.p.begin(), last.p.end()) - last.p.begin());
        out.locus_x = traj.grid.center(static_cast<int>(i_min));
    }
    return out;
}

double fit_growth_exponent(const FlowTrajectory& traj, double detected_t) {
    const auto& diags = traj.diagnostics;
    if (diags.empty()) throw ContractError("trajectory holds no diagnostics");

    const double r0 = std::abs(diags.front().sup_abs_R);
    std::vector<double> lx, ly;
    for (const auto& d : diags) {
        if (!(d.t < detected_t)) continue;
        if (!(d.sup_abs_R > 10.0 * r0)) continue;
        const double gap = detected_t - d.t;
        if (!(gap > 0.0) || !(d.sup_abs_R > 0.0)) continue;
        lx.push_back(std::log(gap));
        ly.push_back(std::log(d.sup_abs_R));
    }
    if (lx.size() < 10)
        throw ContractError("growth fit needs >= 10 snapshots in the "
                            "approach window");

    // Ordinary least squares for ly = slope * lx + intercept.
    const double m = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-300)
        throw ContractError("degenerate growth-fit window");
    return (m * sxy - sx * sy) / denom;
}

BlowupReport analyze(const InitialData& init, const FlowTrajectory& traj) {
    BlowupReport report;
    report.prediction = predict_tmax(init);
    report.detection = detect(traj, report.prediction);
    if (report.detection) {
        try {
            report.growth_exponent =
                fit_growth_exponent(traj, report.detection->detected_t);
        } catch (const ContractError&) {
            report.growth_exponent = std::nullopt;
        }
    }
    return report;
}

} // namespace hgf
