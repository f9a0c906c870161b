#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "hgf/errors.hpp"
#include "hgf/scenario.hpp"

using namespace hgf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    auto p = fs::temp_directory_path() / ("hgf_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("parse_config: minimal torus config") {
    const auto s = parse_config(
        "[domain]\n"
        "kind = Torus\n"
        "n = 128\n"
        "[time]\n"
        "t_end = 2\n"
        "[initial]\n"
        "u0 = 1\n"
        "u1 = 0.2\n");
    CHECK(s.kind == ScenarioKind::Torus);
    CHECK(s.n == 128);
    CHECK(s.solver.t_end == 2.0);
    CHECK(s.u0_text == "1");
    CHECK(s.u1_text == "0.2");
}

TEST_CASE("parse_config: errors name the offending key") {
    // Missing u0.
    try {
        parse_config("[domain]\nkind = Torus\n[time]\nt_end = 1\n[initial]\nu1 = 0\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("u0") != std::string::npos);
    }
    // Unknown key.
    CHECK_THROWS_AS(parse_config("[domain]\nkind = Torus\nfoo = 1\n"
                                 "[time]\nt_end = 1\n[initial]\npreset = flat\n"),
                    ConfigError);
    // Torus domains must stay periodic.
    CHECK_THROWS_AS(
        parse_config("[domain]\nkind = Torus\nboundary = ConstantExtension\n"
                     "[time]\nt_end = 1\n[initial]\npreset = flat\n"),
        ConfigError);
    // Preset and explicit expressions are mutually exclusive.
    CHECK_THROWS_AS(parse_config("[domain]\nkind = Torus\n[time]\nt_end = 1\n"
                                 "[initial]\npreset = flat\nu0 = 1\nu1 = 0\n"),
                    ConfigError);
}

TEST_CASE("non-positive u0 samples are rejected when the grid is built") {
    const auto s = parse_config("[domain]\nkind = Torus\n[time]\nt_end = 1\n"
                                "[initial]\nu0 = sin(x)\nu1 = 0\n");
    CHECK_THROWS_AS(prepare_scenario(s), ConfigError);
    auto failing = s;
    failing.out_dir = temp_dir("badprofile").string();
    CHECK(run_scenario(failing).exit_code == 2);
}

TEST_CASE("preset names are stable") {
    const auto names = preset_names();
    REQUIRE(names.size() == 5);
    CHECK(names[0] == "flat");
    CHECK(names[1] == "sine_admissible");
    CHECK(names[2] == "sine_blowup");
    CHECK(names[3] == "separable");
    CHECK(names[4] == "traveling_wave");
}

TEST_CASE("run_scenario: flat preset writes a constant field CSV") {
    const auto dir = temp_dir("flat");
    Scenario s;
    s.kind = ScenarioKind::Torus;
    s.preset = "flat";
    s.n = 64;
    s.solver.t_end = 1.0;
    s.out_dir = dir.string();
    const auto result = run_scenario(s);
    CHECK(result.exit_code == 0);
    const auto text = slurp(dir / "fields.csv");
    CHECK(text.rfind("t,x,u,p,q,r,s,R\n", 0) == 0);
    // Every u entry in a flat run is exactly 1.
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line); // header
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string cell;
        for (int c = 0; c <= 2; ++c) std::getline(cells, cell, ',');
        CHECK(std::strtod(cell.c_str(), nullptr) == 1.0);
    }
}

TEST_CASE("run_scenario: sine_blowup exits 10 with a coherent report") {
    const auto dir = temp_dir("blowup");
    Scenario s;
    s.kind = ScenarioKind::Torus;
    s.preset = "sine_blowup";
    s.n = 1024;
    s.solver.t_end = 6.0;
    s.solver.snapshot_stride = 50;
    s.out_dir = dir.string();
    const auto result = run_scenario(s);
    CHECK(result.exit_code == 10);
    REQUIRE(result.detected_t.has_value());
    REQUIRE(result.predicted_tmax.has_value());
    CHECK(*result.detected_t <= *result.predicted_tmax * 1.05);

    const auto report = slurp(dir / "blowup.json");
    CHECK(report.find("\"predicted_tmax\"") != std::string::npos);
    CHECK(report.find("\"detected_t\"") != std::string::npos);
}

TEST_CASE("run_scenario: separable preset matches the curvature law") {
    const auto dir = temp_dir("separable");
    Scenario s;
    s.kind = ScenarioKind::Line;
    s.x_min = 0.0;
    s.x_max = 4.0;
    s.n = 1024;
    s.preset = "separable";
    s.liouville_c = 2.0;
    s.solver.t_end = 0.5;
    s.solver.snapshot_stride = 400;
    s.out_dir = dir.string();
    const auto result = run_scenario(s);
    REQUIRE(result.exit_code == 0);

    // R column (last) must match c / ((c/2) t^2 + b), b = 1, at every row
    // inside the user window; padding rows lie outside [0, 4].
    std::istringstream lines(slurp(dir / "fields.csv"));
    std::string line;
    std::getline(lines, line);
    int checked = 0;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string cell;
        double vals[8];
        for (int c = 0; c < 8; ++c) {
            std::getline(cells, cell, ',');
            vals[c] = std::strtod(cell.c_str(), nullptr);
        }
        const double t = vals[0], x = vals[1], R = vals[7];
        if (x < 0.0 || x > 4.0) continue;
        const double expected = 2.0 / (t * t + 1.0);
        CHECK(std::abs(R - expected) / expected <= 1e-3);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("run_scenario: identical configs give byte-identical CSV") {
    const char* cfg =
        "[domain]\nkind = Torus\nn = 256\n"
        "[time]\nt_end = 1.5\nsnapshot_stride = 25\n"
        "[initial]\nu0 = 1 + 0.3*cos(x)\nu1 = 0.2 + 0.1*sin(x)\n"
        "[output]\nemit_volume = true\n";
    const auto d1 = temp_dir("det1"), d2 = temp_dir("det2");
    auto s1 = parse_config(cfg);
    s1.out_dir = d1.string();
    auto s2 = parse_config(cfg);
    s2.out_dir = d2.string();
    REQUIRE(run_scenario(s1).exit_code == 0);
    REQUIRE(run_scenario(s2).exit_code == 0);
    CHECK(slurp(d1 / "fields.csv") == slurp(d2 / "fields.csv"));
    CHECK(slurp(d1 / "volume.csv") == slurp(d2 / "volume.csv"));
    CHECK(slurp(d1 / "volume.csv").rfind("t,V\n", 0) == 0);
}

TEST_CASE("run_scenario maps failures to exit codes") {
    Scenario s;
    s.kind = ScenarioKind::Torus;
    s.preset = "no_such_preset";
    s.out_dir = temp_dir("badpreset").string();
    const auto r = run_scenario(s);
    CHECK(r.exit_code == 2);
    CHECK_FALSE(r.error.empty());
}

TEST_CASE("sweep: empty value list") {
    Scenario s;
    s.kind = ScenarioKind::Torus;
    s.preset = "flat";
    s.out_dir = temp_dir("sweep_empty").string();
    const auto rows = sweep(s, "n", {});
    CHECK(rows.empty());
    CHECK(slurp(fs::path(s.out_dir) / "sweep.csv") ==
          "value,exit_code,detected_t,gamma,max_abs_R,volume_slope\n");
}

TEST_CASE("sweep: refinement drives detected_t toward the prediction") {
    Scenario s;
    s.kind = ScenarioKind::Torus;
    s.preset = "sine_blowup";
    s.solver.t_end = 6.0;
    s.solver.snapshot_stride = 50;
    s.emit_fields = false;
    s.out_dir = temp_dir("sweep_n").string();
    const auto rows = sweep(s, "n", {512.0, 2048.0});
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].result.detected_t.has_value());
    REQUIRE(rows[1].result.detected_t.has_value());
    const double pred = *rows[1].result.predicted_tmax;
    CHECK(std::abs(*rows[1].result.detected_t - pred) <
          std::abs(*rows[0].result.detected_t - pred));
}

TEST_CASE("sweep: admissibility margin keeps the decay exponent above 1/2") {
    Scenario s;
    s.kind = ScenarioKind::Torus;
    s.preset = "sine_admissible";
    s.n = 256;
    s.solver.t_end = 50.0;
    s.solver.snapshot_stride = 100;
    s.emit_fields = false;
    s.out_dir = temp_dir("sweep_eps").string();
    const auto rows = sweep(s, "epsilon", {0.1, 0.5, 1.0});
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.result.exit_code == 0);
        REQUIRE(row.result.gamma.has_value());
        CHECK(*row.result.gamma >= 0.5);
    }
}
