#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "hgf/kernels.hpp"

using namespace hgf::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng,
                               double lo = -10.0, double hi = 10.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("scalar backend reference values") {
    const Backend& k = scalar();
    std::vector<double> a{1.0, 2.0, 3.0}, b{0.5, 0.5, 0.5}, out(3);

    k.diff_scaled(out.data(), a.data(), b.data(), 2.0, 3);
    CHECK(out == std::vector<double>{1.0, 3.0, 5.0});

    k.scaled_sum(out.data(), a.data(), b.data(), 0.5, 3);
    CHECK(out == std::vector<double>{0.75, 1.25, 1.75});

    k.axpy(out.data(), a.data(), b.data(), 4.0, 3);
    CHECK(out == std::vector<double>{3.0, 4.0, 5.0});

    std::vector<double> c{1.0, 1.0, 1.0};
    k.add_scaled_sum(out.data(), a.data(), b.data(), c.data(), 2.0, 3);
    CHECK(out == std::vector<double>{4.0, 5.0, 6.0});

    k.fmadd(out.data(), a.data(), b.data(), c.data(), 3);
    CHECK(out == std::vector<double>{1.5, 2.0, 2.5});

    k.fnmadd(out.data(), a.data(), b.data(), c.data(), 3);
    CHECK(out == std::vector<double>{0.5, 0.0, -0.5});

    CHECK(k.reduce_min(a.data(), 3) == 1.0);
    CHECK(k.reduce_max(a.data(), 3) == 3.0);
    std::vector<double> signed_v{-4.0, 2.0, 3.5};
    CHECK(k.reduce_max_abs(signed_v.data(), 3) == 4.0);
}

TEST_CASE("pq_source matches the quadratic source term") {
    const Backend& k = scalar();
    std::vector<double> p{2.0, -1.0, 0.0}, q{1.0, 1.0, 5.0}, sp(3), sq(3);
    k.pq_source(sp.data(), sq.data(), p.data(), q.data(), 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(sp[i] == doctest::Approx(-0.25 * (p[i] * p[i] + 3 * p[i] * q[i])));
        CHECK(sq[i] == doctest::Approx(-0.25 * (q[i] * q[i] + 3 * p[i] * q[i])));
    }
}

TEST_CASE("minmod slope limiter cases") {
    const Backend& k = scalar();
    std::vector<double> dl{2.0, -2.0, 2.0, 0.0, -3.0},
        dr{3.0, -1.0, -1.0, 5.0, -3.0}, out(5);
    k.minmod(out.data(), dl.data(), dr.data(), 5);
    CHECK(out[0] == 2.0);  // same sign: smaller magnitude
    CHECK(out[1] == -1.0);
    CHECK(out[2] == 0.0);  // opposite signs
    CHECK(out[3] == 0.0);  // zero slope
    CHECK(out[4] == -3.0);
}

TEST_CASE("avx2 backend is bit-exact against scalar") {
    const Backend* v = avx2();
    if (v == nullptr) {
        MESSAGE("avx2 unavailable on this host; skipping equivalence checks");
        return;
    }
    const Backend& s = scalar();
    std::mt19937_64 rng(20260826);
    // Sizes straddling vector-width multiples to exercise remainder loops.
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 13u, 64u, 257u, 1000u}) {
        auto a = random_vec(n, rng), b = random_vec(n, rng),
             c = random_vec(n, rng);
        std::vector<double> so(n), vo(n), so2(n), vo2(n);

        s.diff_scaled(so.data(), a.data(), b.data(), 1.7, n);
        v->diff_scaled(vo.data(), a.data(), b.data(), 1.7, n);
        CHECK(bitwise_equal(so, vo));

        s.scaled_sum(so.data(), a.data(), b.data(), 0.3, n);
        v->scaled_sum(vo.data(), a.data(), b.data(), 0.3, n);
        CHECK(bitwise_equal(so, vo));

        s.axpy(so.data(), a.data(), b.data(), 1e-3, n);
        v->axpy(vo.data(), a.data(), b.data(), 1e-3, n);
        CHECK(bitwise_equal(so, vo));

        s.add_scaled_sum(so.data(), a.data(), b.data(), c.data(), 0.5, n);
        v->add_scaled_sum(vo.data(), a.data(), b.data(), c.data(), 0.5, n);
        CHECK(bitwise_equal(so, vo));

        s.fmadd(so.data(), a.data(), b.data(), c.data(), n);
        v->fmadd(vo.data(), a.data(), b.data(), c.data(), n);
        CHECK(bitwise_equal(so, vo));

        s.fnmadd(so.data(), a.data(), b.data(), c.data(), n);
        v->fnmadd(vo.data(), a.data(), b.data(), c.data(), n);
        CHECK(bitwise_equal(so, vo));

        s.pq_source(so.data(), so2.data(), a.data(), b.data(), n);
        v->pq_source(vo.data(), vo2.data(), a.data(), b.data(), n);
        CHECK(bitwise_equal(so, vo));
        CHECK(bitwise_equal(so2, vo2));

        s.minmod(so.data(), a.data(), b.data(), n);
        v->minmod(vo.data(), a.data(), b.data(), n);
        CHECK(bitwise_equal(so, vo));

        CHECK(s.reduce_min(a.data(), n) == v->reduce_min(a.data(), n));
        CHECK(s.reduce_max(a.data(), n) == v->reduce_max(a.data(), n));
        CHECK(s.reduce_max_abs(a.data(), n) == v->reduce_max_abs(a.data(), n));
    }
}

TEST_CASE("backend selection") {
    CHECK(set_active("scalar"));
    CHECK(std::string_view(active().name) == "scalar");
    CHECK_FALSE(set_active("sse9"));
    CHECK(set_active("auto"));
    if (avx2() != nullptr)
        CHECK(std::string_view(active().name) == "avx2");
    else
        CHECK(std::string_view(active().name) == "scalar");
    set_active("auto");
}
