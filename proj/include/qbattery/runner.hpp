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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbattery/bath.hpp"
#include "qbattery/config.hpp"
#include "qbattery/dynamics.hpp"

namespace qbat {

/// Scalar figures of merit for one ergotropy curve.
struct TrajectorySummary {
    double peak_ergotropy = 0.0;
    double t_peak = 0.0;
    /// First recorded t after which the ergotropy never leaves the band
    /// |E(t') - E(t_end)| <= 0.05 max_t E.
    double t_stable = 0.0;
    double final_ergotropy = 0.0;
    /// Over the last quarter of the run.
    double late_mean_ergotropy = 0.0;
    double late_amplitude = 0.0;
    double max_trace_error = 0.0;
};

TrajectorySummary summarize(const Trajectory& traj);

/// Header `t,E,ergotropy,trace_err,purity,min_eig,coh_l1,p1..pn`, 12
/// significant digits, followed by a trailing `#` diagnostics line.
void emit_trajectory(const Trajectory& traj, const std::filesystem::path& path);
std::string trajectory_csv(const Trajectory& traj);

/// Reads the records back from an emitted trajectory; comment lines are
/// skipped. Only the EnergyRecord fields are restored.
std::vector<EnergyRecord> read_trajectory_csv(const std::filesystem::path& path);

/// Header `omega,J,R`.
std::string spectrum_csv(const std::vector<RateRow>& rows);
void write_spectrum_csv(const std::vector<RateRow>& rows, const std::filesystem::path& path);

std::vector<double> linear_grid(double lo, double hi, int points);

Trajectory run_simulation(const RunConfig& cfg);

/// Writes trajectory.csv and provenance.txt into `out_dir`.
Trajectory simulate(const RunConfig& cfg, const std::filesystem::path& out_dir);

struct SweepSpec {
    std::string parameter;  // dotted key, e.g. "system.Omega"
    /// Values as written (`0.7pi`); they name the output files.
    std::vector<std::string> values;
};

void validate(const SweepSpec& sweep);

struct SweepPoint {
    std::string value;
    bool ok = false;
    std::string error;
    TrajectorySummary summary;
    double max_raw_trace_drift = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<std::string> warnings;
    double omega_eval = 0.0;
    double j_eval = 0.0;
    double r_eval = 0.0;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepPoint> points;
};

struct SweepOptions {
    int workers = 1;
    ParseOptions parse;
    /// Extra lines for metadata.txt.
    std::vector<std::string> metadata;
};

/// One run per value, executed on up to `workers` threads. Writes
/// `<param>=<value>.csv` per value, summary.csv, metadata.txt and plot.gp.
/// A failing value is recorded in its SweepPoint and the sweep continues.
SweepResult run_sweep(const ConfigDocument& base, const SweepSpec& sweep, const std::filesystem::path& out_dir,
                      const SweepOptions& opts = {});

std::string summary_csv(const SweepResult& result);

/// A named scenario: a config, an optional swept parameter, and a note on
/// where the swept values come from.
struct Preset {
    std::string name;
    std::string config_text;
    std::optional<SweepSpec> sweep;
    std::string values_source;
};

const std::vector<Preset>& presets();
const Preset& find_preset(std::string_view name);

/// Runs a preset into `out_dir`. fig2 writes spectrum.csv and
/// surface.csv; every other preset writes a sweep.
void run_preset(std::string_view name, const std::filesystem::path& out_dir, int workers = 1);

}  // namespace qbat
