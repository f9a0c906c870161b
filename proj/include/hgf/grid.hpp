#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "hgf/errors.hpp"

namespace hgf {

enum class Boundary { Periodic, ConstantExtension };

// Uniform cell-centered 1D grid.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 8;
    Boundary boundary = Boundary::Periodic;

    double dx() const { return (x_max - x_min) / n; }
    double length() const { return x_max - x_min; }
    double center(int i) const { return x_min + (i + 0.5) * dx(); }

    // Index of an off-grid neighbor: periodic wrap or clamp to the edge
    // cell (ghost values equal the nearest interior value).
    int ghost_index(int i) const {
        if (boundary == Boundary::Periodic) {
            int j = i % n;
            return j < 0 ? j + n : j;
        }
        return std::clamp(i, 0, n - 1);
    }

    bool operator==(const Grid1D&) const = default;
};

Grid1D build_grid(double x_min, double x_max, int n, Boundary boundary);

// Cell-center evaluations of f. Throws ConfigError on a non-finite sample.
std::vector<double> sample_function(const Grid1D& grid,
                                    const std::function<double(double)>& f);

// max_i |a_i - b_i|; lengths must match.
double l_inf_distance(std::span<const double> a, std::span<const double> b);

// Initial metric data u0 > 0 with velocity u1, plus the bounds m, M of u0.
struct InitialData {
    Grid1D grid;
    std::vector<double> u0;
    std::vector<double> u1;
    double m = 0.0; // min of u0
    double M = 0.0; // max of u0
};

// Validates positivity/finiteness of u0 and fills m, M.
InitialData make_initial_data(const Grid1D& grid, std::vector<double> u0,
                              std::vector<double> u1);

// One time slice of the flow in invariant variables (phi = ln u).
struct ConformalState {
    double t = 0.0;
    std::vector<double> phi;
    std::vector<double> p;
    std::vector<double> q;
};

struct DiagnosticRecord {
    double t = 0.0;
    double sup_p = 0.0, inf_p = 0.0;
    double sup_q = 0.0, inf_q = 0.0;
    double sup_abs_r = 0.0, sup_abs_s = 0.0;
    double sup_abs_R = 0.0;
    double volume = 0.0;
};

enum class StopReason { ReachedEnd, Blowup, Degeneracy };

struct FlowTrajectory {
    Grid1D grid;
    std::vector<ConformalState> snapshots;
    std::vector<DiagnosticRecord> diagnostics;
    StopReason stop_reason = StopReason::ReachedEnd;
    double stop_time = 0.0;
    double stop_x = 0.0; // offending location when the run ended by signal
};

// First derivative, second-order centered; one-sided second-order at
// ConstantExtension edges.
std::vector<double> centered_derivative(std::span<const double> f,
                                        const Grid1D& grid);

// First derivative, fourth-order centered on periodic grids; degrades to
// second-order one-sided near ConstantExtension edges.
std::vector<double> derivative4(std::span<const double> f, const Grid1D& grid);

// Second derivative, three-point stencil; one-sided at ConstantExtension
// edges (first-order accurate there).
std::vector<double> second_derivative(std::span<const double> f,
                                      const Grid1D& grid);

} // namespace hgf
