#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the solvers. Every operation has a scalar
// reference implementation and, on x86-64 with AVX2, a vector variant
// selected at runtime. All variants are bit-exact against the scalar
// reference on finite inputs (no FMA contraction, identical operation
// order per element; min/max reductions are order-insensitive).

namespace hgf::kernels {

struct Backend {
    const char* name;

    // out[i] = (a[i] - b[i]) * h        (upwind differences)
    void (*diff_scaled)(double* out, const double* a, const double* b,
                        double h, std::size_t n);
    // out[i] = (a[i] + b[i]) * h        (phi_t = (p+q)/2)
    void (*scaled_sum)(double* out, const double* a, const double* b,
                       double h, std::size_t n);
    // out[i] = y[i] + k[i] * dt         (Euler predictor)
    void (*axpy)(double* out, const double* y, const double* k, double dt,
                 std::size_t n);
    // out[i] = y[i] + (k1[i] + k2[i]) * h   (Heun corrector, h = dt/2)
    void (*add_scaled_sum)(double* out, const double* y, const double* k1,
                           const double* k2, double h, std::size_t n);
    // out[i] = a[i] * b[i] + c[i]
    void (*fmadd)(double* out, const double* a, const double* b,
                  const double* c, std::size_t n);
    // out[i] = c[i] - a[i] * b[i]
    void (*fnmadd)(double* out, const double* a, const double* b,
                   const double* c, std::size_t n);
    // sp[i] = -1/4 (p^2 + 3pq), sq[i] = -1/4 (q^2 + 3pq)
    void (*pq_source)(double* sp, double* sq, const double* p,
                      const double* q, std::size_t n);
    // out[i] = minmod(dl[i], dr[i])
    void (*minmod)(double* out, const double* dl, const double* dr,
                   std::size_t n);

    double (*reduce_min)(const double* a, std::size_t n);
    double (*reduce_max)(const double* a, std::size_t n);
    double (*reduce_max_abs)(const double* a, std::size_t n);
};

const Backend& scalar();
const Backend* avx2(); // nullptr when unsupported at compile or run time

// Active backend; defaults to the best available.
const Backend& active();

// "scalar", "avx2", or "auto". Returns false when unavailable.
bool set_active(std::string_view name);

} // namespace hgf::kernels
