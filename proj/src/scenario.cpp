#include "hgf/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "hgf/blowup.hpp"
#include "hgf/curvature.hpp"
#include "hgf/errors.hpp"
#include "hgf/exact.hpp"
#include "hgf/expr.hpp"
#include "hgf/invariants.hpp"
#include "hgf/radial.hpp"
#include "hgf/torus.hpp"

namespace hgf {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t read = 0;
        const double v = std::stod(value, &read);
        if (read != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" +
                          value + "'");
    }
}

long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t read = 0;
        const long v = std::stol(value, &read);
        if (read != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" +
                          value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + value +
                      "'");
}

} // namespace

Scenario parse_config(const std::string& text) {
    Scenario s;
    bool saw_kind = false, saw_t_end = false;
    bool saw_u0 = false, saw_u1 = false, saw_preset = false;
    bool saw_boundary = false;

    std::string section;
    std::istringstream stream(text);
    std::string raw;
    while (std::getline(stream, raw)) {
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header: " + raw);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "domain" && section != "time" &&
                section != "initial" && section != "output")
                throw ConfigError("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value, got: " + raw);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' outside any [section]");

        if (section == "domain") {
            if (key == "kind") {
                if (value == "Line") s.kind = ScenarioKind::Line;
                else if (value == "Torus") s.kind = ScenarioKind::Torus;
                else if (value == "Radial") s.kind = ScenarioKind::Radial;
                else
                    throw ConfigError("kind must be Line, Torus or Radial, "
                                      "got '" + value + "'");
                saw_kind = true;
            } else if (key == "x_min" || key == "r_min") {
                s.x_min = parse_real(key, value);
            } else if (key == "x_max" || key == "r_max") {
                s.x_max = parse_real(key, value);
            } else if (key == "n") {
                s.n = static_cast<int>(parse_integer(key, value));
            } else if (key == "boundary") {
                if (value == "Periodic") s.boundary = Boundary::Periodic;
                else if (value == "ConstantExtension")
                    s.boundary = Boundary::ConstantExtension;
                else
                    throw ConfigError("boundary must be Periodic or "
                                      "ConstantExtension, got '" + value +
                                      "'");
                saw_boundary = true;
            } else {
                throw ConfigError("unknown key '" + key + "' in [domain]");
            }
        } else if (section == "time") {
            if (key == "t_end") {
                s.solver.t_end = parse_real(key, value);
                saw_t_end = true;
            } else if (key == "cfl") {
                s.solver.cfl = parse_real(key, value);
            } else if (key == "snapshot_stride") {
                s.solver.snapshot_stride =
                    static_cast<int>(parse_integer(key, value));
            } else if (key == "max_steps") {
                s.solver.max_steps = parse_integer(key, value);
            } else {
                throw ConfigError("unknown key '" + key + "' in [time]");
            }
        } else if (section == "initial") {
            if (key == "u0") {
                s.u0_text = value;
                saw_u0 = true;
            } else if (key == "u1") {
                s.u1_text = value;
                saw_u1 = true;
            } else if (key == "preset") {
                s.preset = value;
                saw_preset = true;
            } else if (key == "epsilon") {
                s.epsilon = parse_real(key, value);
            } else if (key == "c") {
                s.liouville_c = parse_real(key, value);
            } else {
                throw ConfigError("unknown key '" + key + "' in [initial]");
            }
        } else { // output
            if (key == "dir") s.out_dir = value;
            else if (key == "emit_fields")
                s.emit_fields = parse_bool(key, value);
            else if (key == "emit_volume")
                s.emit_volume = parse_bool(key, value);
            else if (key == "emit_blowup_report")
                s.emit_blowup_report = parse_bool(key, value);
            else
                throw ConfigError("unknown key '" + key + "' in [output]");
        }
    }

    if (!saw_kind) throw ConfigError("missing required key 'kind'");
    if (!saw_t_end) throw ConfigError("missing required key 't_end'");
    if (saw_preset) {
        if (saw_u0 || saw_u1)
            throw ConfigError("give either a preset or u0/u1, not both");
        const auto names = preset_names();
        if (std::find(names.begin(), names.end(), s.preset) == names.end())
            throw ConfigError("unknown preset '" + s.preset + "'");
    } else {
        if (!saw_u0) throw ConfigError("missing required key 'u0'");
        if (!saw_u1) throw ConfigError("missing required key 'u1'");
        // Parse now so syntax errors surface as configuration errors.
        parse_expression(s.u0_text);
        parse_expression(s.u1_text);
    }

    if (!saw_boundary) {
        s.boundary = s.kind == ScenarioKind::Torus
                         ? Boundary::Periodic
                         : Boundary::ConstantExtension;
    } else if (s.kind == ScenarioKind::Torus &&
               s.boundary != Boundary::Periodic) {
        throw ConfigError("torus domains must be periodic");
    } else if (s.kind != ScenarioKind::Torus &&
               s.boundary == Boundary::Periodic &&
               s.kind == ScenarioKind::Radial) {
        throw ConfigError("radial domains cannot be periodic");
    }
    if (s.emit_volume && s.kind != ScenarioKind::Torus)
        throw ConfigError("emit_volume applies to torus runs only");
    return s;
}

std::vector<std::string> preset_names() {
    return {"flat", "sine_admissible", "sine_blowup", "separable",
            "traveling_wave"};
}

InitialProfiles scenario_profiles(const Scenario& s) {
    InitialProfiles out;
    if (s.preset.empty()) {
        Expression u0 = parse_expression(s.u0_text);
        Expression u1 = parse_expression(s.u1_text);
        out.u0 = [u0](double x) { return u0.eval(x); };
        out.u1 = [u1](double x) { return u1.eval(x); };
        return out;
    }
    if (s.preset == "flat") {
        out.u0 = [](double) { return 1.0; };
        out.u1 = [](double) { return 0.0; };
    } else if (s.preset == "sine_admissible") {
        const double eps = s.epsilon;
        out.u0 = [](double x) { return 1.0 + 0.5 * std::sin(x); };
        out.u1 = [eps](double x) {
            const double u0 = 1.0 + 0.5 * std::sin(x);
            return std::abs(0.5 * std::cos(x)) / std::sqrt(u0) + eps;
        };
    } else if (s.preset == "sine_blowup") {
        out.u0 = [](double x) { return 1.0 + 0.5 * std::sin(x); };
        out.u1 = [](double x) {
            return 0.5 * std::cos(x) / std::sqrt(1.0 + 0.5 * std::sin(x));
        };
    } else if (s.preset == "separable") {
        SeparableSolution sol;
        sol.c = s.liouville_c;
        sol.a = 0.0;
        sol.b = 1.0;
        sol.C = 10.0;
        out.u0 = [sol](double x) { return separable_eval(sol, 0.0, x); };
        // d/dt of the time factor at t = 0 is `a`, which is zero here.
        out.u1 = [](double) { return 0.0; };
        // The profile is exact for all x below its pole at C / sqrt(c/2);
        // extend it leftward without limit and rightward up to the point
        // whose leftgoing signal needs more than t_end to reach the window
        // (speed u^{-1/2} = pole - x there), so the clamp kink stays causally
        // outside the window while the padding carries the true solution.
        const double pole = sol.C / std::sqrt(0.5 * sol.c);
        out.clamp_lo = -std::numeric_limits<double>::infinity();
        if (pole > s.x_max)
            out.clamp_hi =
                pole - (pole - s.x_max) * std::exp(-1.3 * s.solver.t_end);
    } else if (s.preset == "traveling_wave") {
        TravelingWaveSolution sol;
        sol.a = 1.0;
        sol.c1 = 0.05;
        sol.c2 = 1.2;
        out.u0 = [sol](double x) { return traveling_wave_eval(sol, 0.0, x); };
        // u(t,x) = U(x - at), so u_t = -a U'; U' = c1 e^f / (a^2 e^f - 1).
        out.u1 = [sol](double x) {
            const double f = traveling_wave_f(sol, x);
            const double ef = std::exp(f);
            return -sol.a * sol.c1 * ef / (sol.a * sol.a * ef - 1.0);
        };
    } else {
        throw ConfigError("unknown preset '" + s.preset + "'");
    }
    return out;
}

PreparedScenario prepare_scenario(const Scenario& s) {
    if (s.n < 8) throw ConfigError("n must be at least 8");
    if (!(s.x_max > s.x_min)) throw ConfigError("degenerate domain interval");

    const InitialProfiles profiles = scenario_profiles(s);
    const Boundary boundary = s.boundary.value_or(
        s.kind == ScenarioKind::Torus ? Boundary::Periodic
                                      : Boundary::ConstantExtension);

    PreparedScenario prep;
    if (s.kind == ScenarioKind::Line) {
        // Pad the window so edge effects cannot reach it before t_end.
        const Grid1D window = build_grid(s.x_min, s.x_max, s.n, boundary);
        const double dx = window.dx();
        const double lo = profiles.clamp_lo.value_or(s.x_min + 0.5 * dx);
        const double hi = profiles.clamp_hi.value_or(s.x_max - 0.5 * dx);
        auto clamped = [&](const std::function<double(double)>& f, double x) {
            return f(std::clamp(x, lo, hi));
        };
        // March outward from each window edge, accumulating the signal
        // travel time dt = sqrt(u0) dx, until a wave launched at the grid
        // edge provably cannot reach the window within t_end.
        auto pad_cells_for = [&](int dir) {
            const double budget = 1.3 * s.solver.t_end;
            double tau = 0.0;
            double x = dir < 0 ? s.x_min : s.x_max;
            int cells = 0;
            while (tau < budget) {
                x += dir * dx;
                const double u = clamped(profiles.u0, x);
                if (!(u > 0.0) || !std::isfinite(u))
                    throw ConfigError("u0 must be positive and finite over "
                                      "the padded domain");
                tau += std::sqrt(u) * dx;
                if (++cells > 4'000'000)
                    throw ConfigError("line padding does not converge; "
                                      "u0 decays too fast away from the "
                                      "window");
            }
            return cells + 2;
        };
        const int pad_left = pad_cells_for(-1);
        const int pad_right = pad_cells_for(+1);
        prep.pad = std::max(pad_left, pad_right) * dx;
        prep.grid = build_grid(s.x_min - pad_left * dx, s.x_max + pad_right * dx,
                               s.n + pad_left + pad_right, boundary);
        std::vector<double> u0(prep.grid.n), u1(prep.grid.n);
        for (int i = 0; i < prep.grid.n; ++i) {
            const double x = prep.grid.center(i);
            u0[i] = clamped(profiles.u0, x);
            u1[i] = clamped(profiles.u1, x);
        }
        prep.init = make_initial_data(prep.grid, std::move(u0), std::move(u1));
    } else {
        prep.grid = build_grid(s.x_min, s.x_max, s.n, boundary);
        prep.init = make_initial_data(prep.grid,
                                      sample_function(prep.grid, profiles.u0),
                                      sample_function(prep.grid, profiles.u1));
    }
    return prep;
}

std::string format_csv_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

void write_fields_csv(const std::string& path, const FlowTrajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "t,x,u,p,q,r,s,R\n";
    for (const auto& snap : traj.snapshots) {
        const auto [r, s] = derivative_invariants(snap, traj.grid);
        const auto R = scalar_curvature(snap, r, s);
        for (std::size_t i = 0; i < snap.phi.size(); ++i) {
            out << format_csv_value(snap.t) << ','
                << format_csv_value(traj.grid.center(static_cast<int>(i)))
                << ',' << format_csv_value(std::exp(snap.phi[i])) << ','
                << format_csv_value(snap.p[i]) << ','
                << format_csv_value(snap.q[i]) << ','
                << format_csv_value(r[i]) << ',' << format_csv_value(s[i])
                << ',' << format_csv_value(R[i]) << '\n';
        }
    }
    if (!out) throw ConfigError("write failure on " + path);
}

void write_volume_csv(const std::string& path,
                      const std::vector<double>& times,
                      const std::vector<double>& volumes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "t,V\n";
    for (std::size_t i = 0; i < times.size(); ++i)
        out << format_csv_value(times[i]) << ','
            << format_csv_value(volumes[i]) << '\n';
    if (!out) throw ConfigError("write failure on " + path);
}

namespace {

// Radial fields CSV sharing the planar schema: p,q carry mu,nu; r,s carry
// their radial derivatives; R = e^{-psi} (psi_rr + psi_r / r).
void write_radial_fields_csv(const std::string& path,
                             const RadialTrajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "t,x,u,p,q,r,s,R\n";
    for (const auto& snap : traj.snapshots) {
        const auto eta = centered_derivative(snap.mu, traj.grid);
        const auto gam = centered_derivative(snap.nu, traj.grid);
        const auto psi_r = centered_derivative(snap.psi, traj.grid);
        const auto psi_rr = second_derivative(snap.psi, traj.grid);
        for (std::size_t i = 0; i < snap.psi.size(); ++i) {
            const double rr = traj.grid.center(static_cast<int>(i));
            const double R =
                std::exp(-snap.psi[i]) * (psi_rr[i] + psi_r[i] / rr);
            out << format_csv_value(snap.t) << ',' << format_csv_value(rr)
                << ',' << format_csv_value(std::exp(snap.psi[i])) << ','
                << format_csv_value(snap.mu[i]) << ','
                << format_csv_value(snap.nu[i]) << ','
                << format_csv_value(eta[i]) << ',' << format_csv_value(gam[i])
                << ',' << format_csv_value(R) << '\n';
        }
    }
    if (!out) throw ConfigError("write failure on " + path);
}

void write_blowup_json(const std::string& path, const BlowupReport& report) {
    nlohmann::json j;
    j["predicted_tmax"] = std::isfinite(report.prediction.tmax)
                              ? nlohmann::json(report.prediction.tmax)
                              : nlohmann::json("infinity");
    j["foot_x0"] = report.prediction.foot_x0;
    j["inf_p0"] = report.prediction.inf_p0;
    j["heuristic"] = report.prediction.heuristic;
    if (report.detection) {
        j["detected_t"] = report.detection->detected_t;
        j["locus_x"] = report.detection->locus_x;
    } else {
        j["detected_t"] = nullptr;
        j["locus_x"] = nullptr;
    }
    if (report.growth_exponent)
        j["growth_exponent"] = *report.growth_exponent;
    else
        j["growth_exponent"] = nullptr;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

// Least-squares slope of V against t.
double fitted_slope(const std::vector<double>& t,
                    const std::vector<double>& v) {
    const double n = static_cast<double>(t.size());
    double st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sv += v[i];
        stt += t[i] * t[i];
        stv += t[i] * v[i];
    }
    const double denom = n * stt - st * st;
    return denom == 0.0 ? 0.0 : (n * stv - st * sv) / denom;
}

RunResult run_prepared(const Scenario& scenario_in) {
    namespace fs = std::filesystem;
    RunResult result;

    // A grid scheme cannot represent invariant spikes steeper than O(1/dx):
    // past that scale numerical viscosity freezes their growth, so the
    // configured threshold is capped at the resolution's saturation level.
    // The cap is floored at 4x the initial invariant sup so a coarse grid
    // cannot flag unamplified initial data as a blowup.
    Scenario s = scenario_in;
    const double dx = (s.x_max - s.x_min) / s.n;
    auto capped_threshold = [&](double initial_sup) {
        const double cap = std::max(0.1 / dx, 4.0 * initial_sup);
        return std::min(s.solver.blowup_p_threshold, cap);
    };

    fs::create_directories(s.out_dir);

    if (s.kind == ScenarioKind::Radial) {
        const InitialProfiles profiles = scenario_profiles(s);
        const Grid1D grid =
            build_grid(s.x_min, s.x_max, s.n, Boundary::ConstantExtension);
        const auto u0 = sample_function(grid, profiles.u0);
        const auto u1 = sample_function(grid, profiles.u1);
        const RadialState init0 = radial_initial_invariants(u0, u1, grid);
        double sup0 = 0.0;
        for (double v : init0.mu) sup0 = std::max(sup0, std::abs(v));
        for (double v : init0.nu) sup0 = std::max(sup0, std::abs(v));
        s.solver.blowup_p_threshold = capped_threshold(sup0);
        const RadialTrajectory traj = run_radial(u0, u1, grid, s.solver);
        if (s.emit_fields)
            write_radial_fields_csv(
                (fs::path(s.out_dir) / "fields.csv").string(), traj);
        result.stop_reason = traj.stop_reason;
        if (traj.stop_reason != StopReason::ReachedEnd) {
            result.detected_t = traj.stop_time;
            result.exit_code = 10;
        }
        return result;
    }

    const PreparedScenario prep = prepare_scenario(s);
    {
        const ConformalState init0 = initial_invariants(prep.init);
        double sup0 = 0.0;
        for (double v : init0.p) sup0 = std::max(sup0, std::abs(v));
        for (double v : init0.q) sup0 = std::max(sup0, std::abs(v));
        s.solver.blowup_p_threshold = capped_threshold(sup0);
    }
    const FlowTrajectory traj = run(prep.init, s.solver);

    if (s.emit_fields)
        write_fields_csv((fs::path(s.out_dir) / "fields.csv").string(), traj);
    if (s.emit_volume) {
        const VolumeSeries series = volume(traj);
        write_volume_csv((fs::path(s.out_dir) / "volume.csv").string(),
                         series.times, series.volumes);
        if (series.times.size() >= 2)
            result.volume_slope = fitted_slope(series.times, series.volumes);
    }

    for (const auto& d : traj.diagnostics)
        result.max_abs_R = std::max(result.max_abs_R, d.sup_abs_R);
    result.stop_reason = traj.stop_reason;

    const BlowupReport report = analyze(prep.init, traj);
    if (std::isfinite(report.prediction.tmax))
        result.predicted_tmax = report.prediction.tmax;
    if (report.detection) result.detected_t = report.detection->detected_t;

    if (traj.stop_reason == StopReason::ReachedEnd) {
        // Decay fit over the second half of a completed run.
        try {
            const DecayFit fit =
                fit_decay(traj, 0.5 * s.solver.t_end, s.solver.t_end);
            result.gamma = fit.gamma;
        } catch (const std::exception&) {
            result.gamma = std::nullopt;
        }
    } else {
        if (s.emit_blowup_report)
            write_blowup_json((fs::path(s.out_dir) / "blowup.json").string(),
                              report);
        result.exit_code = 10;
    }
    return result;
}

} // namespace

RunResult run_scenario(const Scenario& s) {
    auto failed = [](int code, const char* what) {
        RunResult r;
        r.exit_code = code;
        r.error = what;
        return r;
    };
    try {
        return run_prepared(s);
    } catch (const ConfigError& e) {
        return failed(2, e.what());
    } catch (const ParseError& e) {
        return failed(2, e.what());
    } catch (const std::exception& e) {
        return failed(3, e.what());
    }
}

std::vector<SweepRow> sweep(const Scenario& base, const std::string& param,
                            const std::vector<double>& values) {
    if (param != "n" && param != "cfl" && param != "epsilon" && param != "c")
        throw ConfigError("unsweepable parameter '" + param +
                          "' (use n, cfl, epsilon or c)");

    namespace fs = std::filesystem;
    std::vector<std::future<RunResult>> futures;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());

    for (double value : sorted) {
        Scenario child = base;
        if (param == "n") {
            child.n = static_cast<int>(value);
        } else if (param == "cfl") {
            child.solver.cfl = value;
        } else if (param == "epsilon") {
            child.epsilon = value;
        } else {
            child.liouville_c = value;
        }
        std::ostringstream dir;
        dir << param << '_' << value;
        child.out_dir = (fs::path(base.out_dir) / dir.str()).string();
        futures.push_back(std::async(std::launch::async, run_scenario,
                                     std::move(child)));
    }

    std::vector<SweepRow> rows;
    rows.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        rows.push_back({sorted[i], futures[i].get()});

    fs::create_directories(base.out_dir);
    std::ofstream out(fs::path(base.out_dir) / "sweep.csv",
                      std::ios::binary);
    if (!out) throw ConfigError("cannot open sweep.csv for writing");
    out << "value,exit_code,detected_t,gamma,max_abs_R,volume_slope\n";
    auto opt = [](const std::optional<double>& v) {
        return v ? format_csv_value(*v) : std::string();
    };
    for (const auto& row : rows) {
        out << format_csv_value(row.value) << ',' << row.result.exit_code
            << ',' << opt(row.result.detected_t) << ','
            << opt(row.result.gamma) << ','
            << format_csv_value(row.result.max_abs_R) << ','
            << opt(row.result.volume_slope) << '\n';
    }
    return rows;
}

} // namespace hgf
