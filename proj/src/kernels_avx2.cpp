#include "hgf/kernels.hpp"

// AVX2 variants. Compiled with -mavx2 -ffp-contract=off; only dispatched
// when the CPU reports AVX2. Arithmetic per element matches the scalar
// reference operation-for-operation (no FMA), so results are bit-exact.

#if defined(__x86_64__) || defined(_M_X64)
#define HGF_HAVE_AVX2_BUILD 1
#include <immintrin.h>

#include <cmath>
#else
#define HGF_HAVE_AVX2_BUILD 0
#endif

namespace hgf::kernels {

#if HGF_HAVE_AVX2_BUILD
namespace {

void diff_scaled_v(double* out, const double* a, const double* b, double h,
                   std::size_t n) {
    const __m256d vh = _mm256_set1_pd(h);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vh));
    }
    for (; i < n; ++i) out[i] = (a[i] - b[i]) * h;
}

void scaled_sum_v(double* out, const double* a, const double* b, double h,
                  std::size_t n) {
    const __m256d vh = _mm256_set1_pd(h);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(s, vh));
    }
    for (; i < n; ++i) out[i] = (a[i] + b[i]) * h;
}

void axpy_v(double* out, const double* y, const double* k, double dt,
            std::size_t n) {
    const __m256d vdt = _mm256_set1_pd(dt);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(_mm256_loadu_pd(k + i), vdt);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
    }
    for (; i < n; ++i) out[i] = y[i] + k[i] * dt;
}

void add_scaled_sum_v(double* out, const double* y, const double* k1,
                      const double* k2, double h, std::size_t n) {
    const __m256d vh = _mm256_set1_pd(h);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_add_pd(_mm256_loadu_pd(k1 + i), _mm256_loadu_pd(k2 + i));
        _mm256_storeu_pd(out + i,
                         _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(s, vh)));
    }
    for (; i < n; ++i) out[i] = y[i] + (k1[i] + k2[i]) * h;
}

void fmadd_v(double* out, const double* a, const double* b, const double* c,
             std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_add_pd(t, _mm256_loadu_pd(c + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i] + c[i];
}

void fnmadd_v(double* out, const double* a, const double* b, const double* c,
              std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(c + i), t));
    }
    for (; i < n; ++i) out[i] = c[i] - a[i] * b[i];
}

void pq_source_v(double* sp, double* sq, const double* p, const double* q,
                 std::size_t n) {
    const __m256d three = _mm256_set1_pd(3.0);
    const __m256d mq = _mm256_set1_pd(-0.25);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vp = _mm256_loadu_pd(p + i);
        __m256d vq = _mm256_loadu_pd(q + i);
        __m256d pq3 = _mm256_mul_pd(three, _mm256_mul_pd(vp, vq));
        __m256d a = _mm256_add_pd(_mm256_mul_pd(vp, vp), pq3);
        __m256d b = _mm256_add_pd(_mm256_mul_pd(vq, vq), pq3);
        _mm256_storeu_pd(sp + i, _mm256_mul_pd(a, mq));
        _mm256_storeu_pd(sq + i, _mm256_mul_pd(b, mq));
    }
    for (; i < n; ++i) {
        double pq3 = 3.0 * (p[i] * q[i]);
        sp[i] = (p[i] * p[i] + pq3) * -0.25;
        sq[i] = (q[i] * q[i] + pq3) * -0.25;
    }
}

void minmod_v(double* out, const double* dl, const double* dr, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d signmask = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(dl + i);
        __m256d b = _mm256_loadu_pd(dr + i);
        __m256d same = _mm256_cmp_pd(_mm256_mul_pd(a, b), zero, _CMP_GT_OQ);
        __m256d aa = _mm256_andnot_pd(signmask, a);
        __m256d ab = _mm256_andnot_pd(signmask, b);
        __m256d lt = _mm256_cmp_pd(aa, ab, _CMP_LT_OQ);
        __m256d pick = _mm256_blendv_pd(b, a, lt);
        _mm256_storeu_pd(out + i, _mm256_and_pd(pick, same));
    }
    for (; i < n; ++i) {
        double a = dl[i], b = dr[i];
        out[i] = (a * b > 0.0) ? (std::fabs(a) < std::fabs(b) ? a : b) : 0.0;
    }
}

double reduce_min_v(const double* a, std::size_t n) {
    std::size_t i = 0;
    double m;
    if (n >= 4) {
        __m256d vm = _mm256_loadu_pd(a);
        for (i = 4; i + 4 <= n; i += 4)
            vm = _mm256_min_pd(vm, _mm256_loadu_pd(a + i));
        alignas(32) double lane[4];
        _mm256_store_pd(lane, vm);
        m = std::fmin(std::fmin(lane[0], lane[1]), std::fmin(lane[2], lane[3]));
    } else {
        m = a[0];
        i = 1;
    }
    for (; i < n; ++i) m = std::fmin(m, a[i]);
    return m;
}

double reduce_max_v(const double* a, std::size_t n) {
    std::size_t i = 0;
    double m;
    if (n >= 4) {
        __m256d vm = _mm256_loadu_pd(a);
        for (i = 4; i + 4 <= n; i += 4)
            vm = _mm256_max_pd(vm, _mm256_loadu_pd(a + i));
        alignas(32) double lane[4];
        _mm256_store_pd(lane, vm);
        m = std::fmax(std::fmax(lane[0], lane[1]), std::fmax(lane[2], lane[3]));
    } else {
        m = a[0];
        i = 1;
    }
    for (; i < n; ++i) m = std::fmax(m, a[i]);
    return m;
}

double reduce_max_abs_v(const double* a, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    double m;
    if (n >= 4) {
        __m256d vm = _mm256_andnot_pd(signmask, _mm256_loadu_pd(a));
        for (i = 4; i + 4 <= n; i += 4)
            vm = _mm256_max_pd(vm, _mm256_andnot_pd(signmask, _mm256_loadu_pd(a + i)));
        alignas(32) double lane[4];
        _mm256_store_pd(lane, vm);
        m = std::fmax(std::fmax(lane[0], lane[1]), std::fmax(lane[2], lane[3]));
    } else {
        m = std::fabs(a[0]);
        i = 1;
    }
    for (; i < n; ++i) m = std::fmax(m, std::fabs(a[i]));
    return m;
}

const Backend avx2_backend{
    "avx2",     diff_scaled_v, scaled_sum_v, axpy_v,
    add_scaled_sum_v, fmadd_v,  fnmadd_v,     pq_source_v,
    minmod_v,   reduce_min_v,  reduce_max_v, reduce_max_abs_v,
};

} // namespace
#endif // HGF_HAVE_AVX2_BUILD

const Backend* avx2() {
#if HGF_HAVE_AVX2_BUILD
    if (__builtin_cpu_supports("avx2")) return &avx2_backend;
#endif
    return nullptr;
}

} // namespace hgf::kernels
