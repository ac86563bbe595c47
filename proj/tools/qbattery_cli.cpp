// Copyright 2026 The qbattery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbattery/config.hpp"
#include "qbattery/runner.hpp"

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_warnings(const qbat::RunConfig& cfg) {
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective quantum battery simulator (Redfield dynamics, ergotropy)"};
    app.require_subcommand(1);

    int workers = 1;
    bool strict = false;
    app.add_option("--workers", workers, "Concurrent sweep points")->check(CLI::PositiveNumber);
    app.add_flag("--strict", strict, "Reject unknown config keys instead of warning");

    std::string config_path;
    std::string out;

    auto* simulate = app.add_subcommand("simulate", "Evolve one configuration");
    simulate->add_option("--config", config_path, "Config file")->required();
    simulate->add_option("--out", out, "Output directory")->required();

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Run a named scenario");
    preset->add_option("--name", preset_name, "fig2, fig3a..fig3d, fig4a..fig4d")->required();
    preset->add_option("--out", out, "Output directory")->required();

    std::string param;
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "Vary one scalar parameter");
    sweep->add_option("--config", config_path, "Config file")->required();
    sweep->add_option("--param", param, "Dotted key, e.g. system.Omega")->required();
    sweep->add_option("--values", values, "Comma-separated values, e.g. 0.7pi,1.0pi")->required();
    sweep->add_option("--out", out, "Output directory")->required();

    double omega_min = 0.0;
    double omega_max = 0.0;
    int points = 201;
    auto* spectrum = app.add_subcommand("spectrum", "Tabulate J(omega) and R(omega)");
    spectrum->add_option("--config", config_path, "Config file")->required();
    auto* min_opt = spectrum->add_option("--omega-min", omega_min, "Grid start (default 0)");
    auto* max_opt = spectrum->add_option("--omega-max", omega_max, "Grid end (default max(10 omega0, 2 omega))");
    spectrum->add_option("--points", points, "Grid size")->check(CLI::NonNegativeNumber);
    spectrum->add_option("--out", out, "Output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const qbat::ParseOptions parse{strict};
    try {
        if (*simulate) {
            const auto cfg = qbat::parse_config(read_text(config_path), parse);
            print_warnings(cfg);
            const auto traj = qbat::simulate(cfg, out);
            const auto s = qbat::summarize(traj);
            std::printf("records=%zu peak_ergotropy=%.9g t_stable=%.9g warnings=%zu\n", traj.records.size(),
                        s.peak_ergotropy, s.t_stable, traj.warnings.size());
        } else if (*preset) {
            qbat::run_preset(preset_name, out, workers);
            std::printf("preset %s written to %s\n", preset_name.c_str(), out.c_str());
        } else if (*sweep) {
            const auto doc = qbat::parse_document(read_text(config_path));
            qbat::SweepSpec spec{param, {}};
            std::stringstream ss(values);
            for (std::string v; std::getline(ss, v, ',');) spec.values.push_back(v);
            qbat::SweepOptions opts;
            opts.workers = workers;
            opts.parse = parse;
            const auto result = qbat::run_sweep(doc, spec, out, opts);
            int failed = 0;
            for (const auto& p : result.points) {
                if (!p.ok) {
                    ++failed;
                    std::cerr << "value " << p.value << " failed: " << p.error << '\n';
                }
            }
            std::printf("sweep %s: %zu values, %d failed\n", param.c_str(), result.points.size(), failed);
            return failed == 0 ? 0 : 3;
        } else if (*spectrum) {
            const auto cfg = qbat::parse_config(read_text(config_path), parse);
            print_warnings(cfg);
            if (!*min_opt) omega_min = 0.0;
            if (!*max_opt) omega_max = std::max(10.0 * cfg.bath.omega0, 2.0 * cfg.omega_eval);
            const auto grid = qbat::linear_grid(omega_min, omega_max, points);
            qbat::write_spectrum_csv(qbat::rate_surface(cfg.bath, grid), out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
