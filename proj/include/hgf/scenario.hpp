#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hgf/grid.hpp"
#include "hgf/solver.hpp"

// Scenario configuration, presets, orchestration, parameter sweeps, and
// CSV emission. Config files are line-oriented `key = value` with
// `[section]` headers; see README for the key list.

namespace hgf {

enum class ScenarioKind { Line, Torus, Radial };

struct Scenario {
    ScenarioKind kind = ScenarioKind::Torus;
    double x_min = 0.0; // r_min for radial domains
    double x_max = 6.283185307179586476925286766559; // 2 pi
    int n = 256;
    std::optional<Boundary> boundary; // default chosen by kind

    std::string u0_text, u1_text; // expressions; empty when preset is set
    std::string preset;           // named preset; empty when expressions set
    double epsilon = 0.5;         // admissibility margin used by presets
    double liouville_c = 2.0;     // separable preset's curvature constant

    // CLI runs default to the slope-limited scheme; the detection
    // threshold is additionally capped at the resolution's saturation
    // scale (see run_scenario).
    SolverConfig solver = [] {
        SolverConfig c;
        c.limiter = Limiter::Minmod;
        return c;
    }();

    std::string out_dir = "out";
    bool emit_fields = true;
    bool emit_volume = false;
    bool emit_blowup_report = true;
};

// Throws ConfigError / ParseError on malformed text, unknown keys,
// missing required keys, or non-positive u0 samples.
Scenario parse_config(const std::string& text);

std::vector<std::string> preset_names();

// Initial profiles (u0, u1) as functions of the space coordinate.
// Padding samples on line domains evaluate the profiles at coordinates
// clamped into [clamp_lo, clamp_hi]; absent bounds clamp at the window
// edge. Presets widen the interval where their profile is analytically
// valid, keeping singularities outside it.
struct InitialProfiles {
    std::function<double(double)> u0;
    std::function<double(double)> u1;
    std::optional<double> clamp_lo;
    std::optional<double> clamp_hi;
};
InitialProfiles scenario_profiles(const Scenario& s);

// The grid actually computed on. Line domains are padded on each side
// until the signal travel time from the grid edge to the window exceeds
// t_end (with margin), so boundary artifacts cannot reach the window.
struct PreparedScenario {
    Grid1D grid;
    InitialData init;
    double pad = 0.0; // widest one-sided padding width (Line only)
};
PreparedScenario prepare_scenario(const Scenario& s);

// Outcome summary of one scenario run (also the sweep row contents).
struct RunResult {
    int exit_code = 0; // 0 ok, 2 config, 3 numeric fault, 10 blowup
    StopReason stop_reason = StopReason::ReachedEnd;
    std::optional<double> detected_t;
    std::optional<double> predicted_tmax;
    std::optional<double> gamma;       // fitted decay exponent
    double max_abs_R = 0.0;
    std::optional<double> volume_slope;
    std::string error; // populated for exit codes 2 and 3
};

// Runs the scenario and writes the enabled outputs under s.out_dir
// (fields.csv, volume.csv, blowup.json). Exceptions are mapped to exit
// codes in the result rather than thrown.
RunResult run_scenario(const Scenario& s);

// Runs one scenario per value of `param` (one of "n", "cfl", "epsilon",
// "c"), concurrently, into per-value subdirectories; writes a summary
// sweep.csv sorted by value. Child failures are recorded in their rows.
struct SweepRow {
    double value;
    RunResult result;
};
std::vector<SweepRow> sweep(const Scenario& base, const std::string& param,
                            const std::vector<double>& values);

// CSV helpers (stable byte-exact formatting: %.11e scientific notation).
std::string format_csv_value(double v);
void write_fields_csv(const std::string& path, const FlowTrajectory& traj);
void write_volume_csv(const std::string& path,
                      const std::vector<double>& times,
                      const std::vector<double>& volumes);

} // namespace hgf
