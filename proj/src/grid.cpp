#include "hgf/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hgf {

Grid1D build_grid(double x_min, double x_max, int n, Boundary boundary) {
    if (!(x_max > x_min))
        throw ConfigError("build_grid: degenerate interval [" +
                          std::to_string(x_min) + ", " + std::to_string(x_max) + "]");
    if (n < 8)
        throw ConfigError("build_grid: n must be >= 8, got " + std::to_string(n));
    return Grid1D{x_min, x_max, n, boundary};
}

std::vector<double> sample_function(const Grid1D& grid,
                                    const std::function<double(double)>& f) {
    std::vector<double> out(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        out[i] = f(grid.center(i));
        if (!std::isfinite(out[i]))
            throw ConfigError("sample_function: non-finite value at x = " +
                              std::to_string(grid.center(i)));
    }
    return out;
}

double l_inf_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ContractError("l_inf_distance: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

InitialData make_initial_data(const Grid1D& grid, std::vector<double> u0,
                              std::vector<double> u1) {
    if ((int)u0.size() != grid.n || (int)u1.size() != grid.n)
        throw ContractError("make_initial_data: sample count does not match grid");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : u0) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError("make_initial_data: u0 must be positive and finite");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : u1)
        if (!std::isfinite(v))
            throw ConfigError("make_initial_data: u1 must be finite");
    return InitialData{grid, std::move(u0), std::move(u1), lo, hi};
}

std::vector<double> centered_derivative(std::span<const double> f,
                                        const Grid1D& grid) {
    const int n = grid.n;
    if ((int)f.size() != n)
        throw ContractError("centered_derivative: length mismatch");
    const double dx = grid.dx();
    std::vector<double> d(n);
    if (grid.boundary == Boundary::Periodic) {
        for (int i = 0; i < n; ++i) {
            int l = i == 0 ? n - 1 : i - 1;
            int r = i == n - 1 ? 0 : i + 1;
            d[i] = (f[r] - f[l]) / (2.0 * dx);
        }
    } else {
        for (int i = 1; i < n - 1; ++i)
            d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    }
    return d;
}

std::vector<double> derivative4(std::span<const double> f, const Grid1D& grid) {
    const int n = grid.n;
    if ((int)f.size() != n)
        throw ContractError("derivative4: length mismatch");
    const double dx = grid.dx();
    std::vector<double> d(n);
    auto central4 = [&](int im2, int im1, int ip1, int ip2) {
        return (f[im2] - 8.0 * f[im1] + 8.0 * f[ip1] - f[ip2]) / (12.0 * dx);
    };
    if (grid.boundary == Boundary::Periodic) {
        for (int i = 0; i < n; ++i)
            d[i] = central4(grid.ghost_index(i - 2), grid.ghost_index(i - 1),
                            grid.ghost_index(i + 1), grid.ghost_index(i + 2));
    } else {
        for (int i = 2; i < n - 2; ++i)
            d[i] = central4(i - 2, i - 1, i + 1, i + 2);
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
        d[1] = (f[2] - f[0]) / (2.0 * dx);
        d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * dx);
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    }
    return d;
}

std::vector<double> second_derivative(std::span<const double> f,
                                      const Grid1D& grid) {
    const int n = grid.n;
    if ((int)f.size() != n)
        throw ContractError("second_derivative: length mismatch");
    const double dx2 = grid.dx() * grid.dx();
    std::vector<double> d(n);
    if (grid.boundary == Boundary::Periodic) {
        for (int i = 0; i < n; ++i) {
            int l = i == 0 ? n - 1 : i - 1;
            int r = i == n - 1 ? 0 : i + 1;
            d[i] = (f[l] - 2.0 * f[i] + f[r]) / dx2;
        }
    } else {
        for (int i = 1; i < n - 1; ++i)
            d[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / dx2;
        d[0] = (f[0] - 2.0 * f[1] + f[2]) / dx2;
        d[n - 1] = (f[n - 1] - 2.0 * f[n - 2] + f[n - 3]) / dx2;
    }
    return d;
}

} // namespace hgf
