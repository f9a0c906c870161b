// hgf: hyperbolic geometric flow on surfaces, from the command line.
//
//   hgf run <config>                         run one scenario
//   hgf sweep <config> --param k --values v  parameter sweep
//   hgf predict <config>                     print predicted blowup time
//   hgf presets                              list named presets
//
// Exit statuses: 0 success, 2 configuration error, 3 numeric fault,
// 10 blowup detected.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hgf/blowup.hpp"
#include "hgf/errors.hpp"
#include "hgf/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hgf::ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::istringstream stream(list);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw hgf::ConfigError("bad value in --values list: '" + item +
                                   "'");
        }
    }
    return out;
}

int do_run(const std::string& config_path) {
    const hgf::Scenario scenario =
        hgf::parse_config(read_file(config_path));
    if (scenario.kind == hgf::ScenarioKind::Line) {
        const auto prep = hgf::prepare_scenario(scenario);
        if (prep.pad > 0.0)
            std::cerr << "note: window padded by " << prep.pad
                      << " on each side (computational domain ["
                      << prep.grid.x_min << ", " << prep.grid.x_max << "])\n";
    }
    const hgf::RunResult result = hgf::run_scenario(scenario);
    if (!result.error.empty()) std::cerr << "error: " << result.error << '\n';
    if (result.exit_code == 10) {
        std::cout << "blowup/degeneracy signal at t = "
                  << (result.detected_t ? *result.detected_t : 0.0) << '\n';
    }
    return result.exit_code;
}

int do_sweep(const std::string& config_path, const std::string& param,
             const std::string& values) {
    const hgf::Scenario base = hgf::parse_config(read_file(config_path));
    const auto rows = hgf::sweep(base, param, parse_values(values));
    for (const auto& row : rows) {
        std::cout << param << " = " << row.value << ": exit "
                  << row.result.exit_code;
        if (row.result.detected_t)
            std::cout << ", detected_t = " << *row.result.detected_t;
        if (row.result.gamma) std::cout << ", gamma = " << *row.result.gamma;
        std::cout << '\n';
    }
    return 0;
}

int do_predict(const std::string& config_path) {
    const hgf::Scenario scenario =
        hgf::parse_config(read_file(config_path));
    const auto prep = hgf::prepare_scenario(scenario);
    const auto prediction = hgf::predict_tmax(prep.init);
    if (std::isfinite(prediction.tmax))
        std::cout << prediction.tmax << '\n';
    else
        std::cout << "infinity\n";
    if (prediction.heuristic)
        std::cerr << "note: u1 deviates from u0'/sqrt(u0); the prediction "
                     "is heuristic\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic geometric flow on surfaces"};
    app.require_subcommand(1);

    std::string config_path, param, values;

    auto* cmd_run = app.add_subcommand("run", "run one scenario");
    cmd_run->add_option("config", config_path, "config file")->required();

    auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep");
    cmd_sweep->add_option("config", config_path, "config file")->required();
    cmd_sweep->add_option("--param", param, "n, cfl, epsilon or c")
        ->required();
    cmd_sweep->add_option("--values", values, "comma-separated values")
        ->required();

    auto* cmd_predict =
        app.add_subcommand("predict", "print predicted blowup time");
    cmd_predict->add_option("config", config_path, "config file")->required();

    auto* cmd_presets = app.add_subcommand("presets", "list named presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_run->parsed()) return do_run(config_path);
        if (cmd_sweep->parsed()) return do_sweep(config_path, param, values);
        if (cmd_predict->parsed()) return do_predict(config_path);
        if (cmd_presets->parsed()) {
            for (const auto& name : hgf::preset_names())
                std::cout << name << '\n';
            return 0;
        }
    } catch (const hgf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const hgf::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
