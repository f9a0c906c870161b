#include "hgf/kernels.hpp"

#include <cmath>

// Compiled with -ffp-contract=off so vector variants can match bit-exactly.

namespace hgf::kernels {
namespace {

void diff_scaled_s(double* out, const double* a, const double* b, double h,
                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] - b[i]) * h;
}

void scaled_sum_s(double* out, const double* a, const double* b, double h,
                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] + b[i]) * h;
}

void axpy_s(double* out, const double* y, const double* k, double dt,
            std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + k[i] * dt;
}

void add_scaled_sum_s(double* out, const double* y, const double* k1,
                      const double* k2, double h, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + (k1[i] + k2[i]) * h;
}

void fmadd_s(double* out, const double* a, const double* b, const double* c,
             std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] + c[i];
}

void fnmadd_s(double* out, const double* a, const double* b, const double* c,
              std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] - a[i] * b[i];
}

void pq_source_s(double* sp, double* sq, const double* p, const double* q,
                 std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double pq3 = 3.0 * (p[i] * q[i]);
        sp[i] = (p[i] * p[i] + pq3) * -0.25;
        sq[i] = (q[i] * q[i] + pq3) * -0.25;
    }
}

void minmod_s(double* out, const double* dl, const double* dr, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double a = dl[i], b = dr[i];
        // zero unless same sign; otherwise the one of smaller magnitude
        out[i] = (a * b > 0.0) ? (std::fabs(a) < std::fabs(b) ? a : b) : 0.0;
    }
}

double reduce_min_s(const double* a, std::size_t n) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i) m = std::fmin(m, a[i]);
    return m;
}

double reduce_max_s(const double* a, std::size_t n) {
    double m = a[0];
    for (std::size_t i = 1; i < n; ++i) m = std::fmax(m, a[i]);
    return m;
}

double reduce_max_abs_s(const double* a, std::size_t n) {
    double m = std::fabs(a[0]);
    for (std::size_t i = 1; i < n; ++i) m = std::fmax(m, std::fabs(a[i]));
    return m;
}

} // namespace

const Backend& scalar() {
    static const Backend b{
        "scalar",   diff_scaled_s, scaled_sum_s, axpy_s,
        add_scaled_sum_s, fmadd_s,  fnmadd_s,     pq_source_s,
        minmod_s,   reduce_min_s,  reduce_max_s, reduce_max_abs_s,
    };
    return b;
}

} // namespace hgf::kernels
