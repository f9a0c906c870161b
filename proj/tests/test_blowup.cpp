#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hgf/blowup.hpp"
#include "hgf/grid.hpp"
#include "hgf/invariants.hpp"
#include "hgf/solver.hpp"

using namespace hgf;
namespace {
constexpr double kPi = std::numbers::pi;

// Zero-velocity-balance profile u1 = u0' / sqrt(u0) on u0 = 1 + 0.5 sin x.
InitialData blowup_sine(int n) {
    auto grid = build_grid(0.0, 2 * kPi, n, Boundary::Periodic);
    auto u0 = sample_function(grid, [](double x) { return 1.0 + 0.5 * std::sin(x); });
    auto u1 = sample_function(grid, [](double x) {
        const double u = 1.0 + 0.5 * std::sin(x);
        return 0.5 * std::cos(x) / std::sqrt(u);
    });
    return make_initial_data(grid, u0, u1);
}

// Dense-minimization regression constants for the profile above.
constexpr double kInfP0 = -1.37035657676523;
constexpr double kTmax = 2.9189482998959;

} // namespace

TEST_CASE("predict_tmax on flat data is infinity") {
    auto grid = build_grid(0.0, 2 * kPi, 64, Boundary::Periodic);
    auto init = make_initial_data(grid, std::vector<double>(64, 1.0),
                                  std::vector<double>(64, 0.0));
    const auto pred = predict_tmax(init);
    CHECK(std::isinf(pred.tmax));
    CHECK(pred.inf_p0 == doctest::Approx(0.0));
    CHECK_FALSE(pred.heuristic);
}

TEST_CASE("predict_tmax matches the frozen dense-grid oracle") {
    const auto pred = predict_tmax(blowup_sine(8192));
    CHECK_FALSE(pred.heuristic);
    CHECK(pred.inf_p0 == doctest::Approx(kInfP0).epsilon(1e-7));
    CHECK(pred.tmax == doctest::Approx(kTmax).epsilon(1e-7));
    CHECK(pred.foot_x0 == doctest::Approx(3.8436).epsilon(1e-3));
}

TEST_CASE("the two closed-form lifespan expressions coincide") {
    // -4 / inf(2 u0' u0^{-3/2}) equals -2 / inf(u0' u0^{-3/2}).
    const auto init = blowup_sine(4096);
    const auto d = derivative4(init.u0, init.grid);
    double inf_half = 0.0;
    for (int i = 0; i < init.grid.n; ++i)
        inf_half = std::min(inf_half, d[i] * std::pow(init.u0[i], -1.5));
    const auto pred = predict_tmax(init);
    CHECK(pred.tmax == doctest::Approx(-2.0 / inf_half).epsilon(1e-12));
}

TEST_CASE("predict_tmax flags velocity mismatch as heuristic") {
    auto grid = build_grid(0.0, 2 * kPi, 256, Boundary::Periodic);
    auto u0 = sample_function(grid, [](double x) { return 1.0 + 0.5 * std::sin(x); });
    auto init = make_initial_data(grid, u0, std::vector<double>(256, 0.0));
    CHECK(predict_tmax(init).heuristic);
}

TEST_CASE("detect returns none on an admissible run") {
    auto grid = build_grid(0.0, 2 * kPi, 128, Boundary::Periodic);
    auto u0 = sample_function(grid, [](double x) { return 1.0 + 0.5 * std::sin(x); });
    auto u1 = sample_function(grid, [](double x) {
        const double u = 1.0 + 0.5 * std::sin(x);
        return std::abs(0.5 * std::cos(x)) / std::sqrt(u) + 0.5;
    });
    auto init = make_initial_data(grid, u0, u1);
    SolverConfig cfg;
    cfg.t_end = 5.0;
    const auto traj = run(init, cfg);
    CHECK_FALSE(detect(traj, predict_tmax(init)).has_value());
}

TEST_CASE("detection brackets the predicted lifespan under refinement") {
    double prev_gap = 1e9;
    for (int n : {1024, 4096}) {
        const auto init = blowup_sine(n);
        SolverConfig cfg;
        cfg.t_end = 2 * kTmax;
        cfg.limiter = Limiter::Minmod;
        cfg.snapshot_stride = 20;
        cfg.blowup_p_threshold = 0.1 / init.grid.dx();
        const auto traj = run(init, cfg);
        REQUIRE(traj.stop_reason == StopReason::Blowup);

        const auto pred = predict_tmax(init);
        const auto det = detect(traj, pred);
        REQUIRE(det.has_value());
        const double gap = std::abs(det->detected_t - pred.tmax) / pred.tmax;
        CHECK(gap < prev_gap + 1e-12);
        prev_gap = gap;
        if (n == 4096) {
            CHECK(gap < 0.03);
            // Locus close to the traced characteristic's endpoint, which in
            // turn sits near the argmin of p at the final snapshot.
            const auto& fin = traj.snapshots.back();
            int argmin = 0;
            for (int i = 1; i < n; ++i)
                if (fin.p[i] < fin.p[argmin]) argmin = i;
            const double dx = init.grid.dx();
            CHECK(std::abs(det->locus_x - init.grid.center(argmin)) < 60 * dx);
        }
    }
}

TEST_CASE("fit_growth_exponent on a synthetic power law") {
    FlowTrajectory traj;
    traj.grid = build_grid(0.0, 2 * kPi, 64, Boundary::Periodic);
    const double T = 1.0;
    for (int k = 0; k < 60; ++k) {
        const double t = T * k / 64.0;
        ConformalState s;
        s.t = t;
        s.phi.assign(64, 0.0);
        // R = d^2/2 with d = (p-q)/2; plant R = 1/(T-t)^2 exactly.
        const double d = std::sqrt(2.0) / (T - t);
        s.p.assign(64, d);
        s.q.assign(64, -d);
        traj.diagnostics.push_back(diagnostics_of(s, traj.grid));
        traj.snapshots.push_back(std::move(s));
    }
    CHECK(fit_growth_exponent(traj, T) == doctest::Approx(-2.0).epsilon(1e-9));

    FlowTrajectory tiny;
    tiny.grid = traj.grid;
    tiny.snapshots.assign(traj.snapshots.begin(), traj.snapshots.begin() + 4);
    tiny.diagnostics.assign(traj.diagnostics.begin(), traj.diagnostics.begin() + 4);
    CHECK_THROWS_AS(fit_growth_exponent(tiny, T), ContractError);
}

TEST_CASE("min p decreases monotonically toward blowup") {
    const auto init = blowup_sine(1024);
    SolverConfig cfg;
    cfg.t_end = 2 * kTmax;
    cfg.limiter = Limiter::Minmod;
    cfg.snapshot_stride = 50;
    cfg.blowup_p_threshold = 0.1 / init.grid.dx();
    const auto traj = run(init, cfg);
    double prev = 0.0;
    for (const auto& d : traj.diagnostics) {
        CHECK(d.inf_p <= prev + 1e-10);
        prev = d.inf_p;
    }
}

TEST_CASE("analyze assembles a coherent report") {
    const auto init = blowup_sine(2048);
    SolverConfig cfg;
    cfg.t_end = 2 * kTmax;
    cfg.limiter = Limiter::Minmod;
    cfg.snapshot_stride = 20;
    cfg.blowup_p_threshold = 0.1 / init.grid.dx();
    const auto traj = run(init, cfg);
    const auto report = analyze(init, traj);
    CHECK_FALSE(report.prediction.heuristic);
    REQUIRE(report.detection.has_value());
    CHECK(report.detection->detected_t <= report.prediction.tmax * 1.05);
    REQUIRE(report.growth_exponent.has_value());
    CHECK(*report.growth_exponent < -1.0);
    CHECK(*report.growth_exponent > -3.0);
}
