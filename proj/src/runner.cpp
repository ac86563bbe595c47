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

#include "qbattery/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qbat {

namespace fs = std::filesystem;

namespace {

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
}

std::string number_text(double v) {
    std::string s;
    append_number(s, v);
    return s;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

}  // namespace

TrajectorySummary summarize(const Trajectory& traj) {
    TrajectorySummary s;
    const auto& recs = traj.records;
    if (recs.empty()) return s;

    for (const auto& r : recs) {
        if (r.ergotropy > s.peak_ergotropy) {
            s.peak_ergotropy = r.ergotropy;
            s.t_peak = r.t;
        }
        s.max_trace_error = std::max(s.max_trace_error, r.trace_error);
    }
    s.final_ergotropy = recs.back().ergotropy;

    const double band = 0.05 * s.peak_ergotropy;
    s.t_stable = recs.back().t;
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) {
        if (std::abs(it->ergotropy - s.final_ergotropy) > band) break;
        s.t_stable = it->t;
    }

    const double t_end = recs.back().t;
    double lo = recs.back().ergotropy;
    double hi = lo;
    double sum = 0.0;
    int count = 0;
    for (const auto& r : recs) {
        if (r.t < 0.75 * t_end) continue;
        lo = std::min(lo, r.ergotropy);
        hi = std::max(hi, r.ergotropy);
        sum += r.ergotropy;
        ++count;
    }
    s.late_mean_ergotropy = sum / count;
    s.late_amplitude = hi - lo;
    return s;
}

std::string trajectory_csv(const Trajectory& traj) {
    const std::size_t n = traj.records.empty() ? 0 : traj.records.front().populations.size();
    std::string out = "t,E,ergotropy,trace_err,purity,min_eig,coh_l1";
    for (std::size_t i = 1; i <= n; ++i) out += ",p" + std::to_string(i);
    out += '\n';
    for (const auto& r : traj.records) {
        for (double v : {r.t, r.energy, r.ergotropy, r.trace_error, r.purity, r.min_eigenvalue, r.coherence_l1}) {
            append_number(out, v);
            out += ',';
        }
        for (std::size_t i = 0; i < r.populations.size(); ++i) {
            append_number(out, r.populations[i]);
            out += i + 1 < r.populations.size() ? ',' : '\n';
        }
    }
    out += "# diagnostics steps=" + std::to_string(traj.steps);
    out += " max_raw_trace_drift=" + number_text(traj.max_raw_trace_drift);
    out += " max_hermiticity_correction=" + number_text(traj.max_hermiticity_correction);
    out += " max_trace_correction=" + number_text(traj.max_trace_correction);
    out += " min_eigenvalue=" + number_text(traj.min_eigenvalue);
    out += " positivity_violations=" + std::to_string(traj.positivity_violations);
    out += " max_ergotropy_clamp=" + number_text(traj.max_ergotropy_clamp);
    out += " warnings=" + (traj.warnings.empty() ? std::string("none") : join(traj.warnings, ","));
    out += '\n';
    return out;
}

void emit_trajectory(const Trajectory& traj, const fs::path& path) {
    write_file(path, trajectory_csv(traj));
}

std::vector<EnergyRecord> read_trajectory_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::vector<EnergyRecord> records;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
        if (cols.size() < 8) throw std::runtime_error("malformed trajectory row: " + line);
        EnergyRecord r;
        r.t = cols[0];
        r.energy = cols[1];
        r.ergotropy = cols[2];
        r.trace_error = cols[3];
        r.purity = cols[4];
        r.min_eigenvalue = cols[5];
        r.coherence_l1 = cols[6];
        r.populations.assign(cols.begin() + 7, cols.end());
        records.push_back(std::move(r));
    }
    return records;
}

std::string spectrum_csv(const std::vector<RateRow>& rows) {
    std::string out = "omega,J,R\n";
    for (const auto& row : rows) {
        append_number(out, row.omega);
        out += ',';
        append_number(out, row.j);
        out += ',';
        append_number(out, row.r);
        out += '\n';
    }
    return out;
}

void write_spectrum_csv(const std::vector<RateRow>& rows, const fs::path& path) {
    write_file(path, spectrum_csv(rows));
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 0) throw std::invalid_argument("linear_grid: negative point count");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        grid.push_back(points == 1 ? lo : lo + (hi - lo) * k / (points - 1));
    }
    return grid;
}

Trajectory run_simulation(const RunConfig& cfg) {
    const DensityMatrix rho0 = initial_state(cfg.system, cfg.initial);
    return evolve(rho0, cfg.system, cfg.bath, cfg.integrator);
}

Trajectory simulate(const RunConfig& cfg, const fs::path& out_dir) {
    ensure_directory(out_dir);
    Trajectory traj = run_simulation(cfg);
    emit_trajectory(traj, out_dir / "trajectory.csv");
    std::string prov;
    for (const auto& line : cfg.provenance) prov += line + '\n';
    for (const auto& line : cfg.warnings) prov += "warning: " + line + '\n';
    write_file(out_dir / "provenance.txt", prov);
    return traj;
}

void validate(const SweepSpec& sweep) {
    if (!is_scalar_key(sweep.parameter)) {
        throw std::invalid_argument("sweep: '" + sweep.parameter + "' is not a scalar config key");
    }
    if (sweep.values.empty()) throw std::invalid_argument("sweep: at least one value is required");
    for (const auto& v : sweep.values) {
        (void)parse_number(v);
        if (v.find('/') != std::string::npos) throw std::invalid_argument("sweep: value '" + v + "' contains '/'");
    }
}

std::string summary_csv(const SweepResult& result) {
    std::string out =
        "parameter,value,status,peak_ergotropy,t_peak,t_stable,final_ergotropy,late_mean_ergotropy,"
        "late_amplitude,max_raw_trace_drift,max_trace_error,min_eig,omega_eval,J_eval,R_eval,warnings\n";
    std::string errors;
    for (const auto& p : result.points) {
        out += result.parameter + ',' + p.value + ',' + (p.ok ? "ok" : "failed");
        const auto& s = p.summary;
        for (double v : {s.peak_ergotropy, s.t_peak, s.t_stable, s.final_ergotropy, s.late_mean_ergotropy,
                         s.late_amplitude, p.max_raw_trace_drift, s.max_trace_error, p.min_eigenvalue, p.omega_eval,
                         p.j_eval, p.r_eval}) {
            out += ',';
            append_number(out, v);
        }
        out += ',' + (p.warnings.empty() ? std::string("none") : join(p.warnings, ";")) + '\n';
        if (!p.ok) errors += "# error " + p.value + ": " + p.error + '\n';
    }
    return out + errors;
}

namespace {

std::string trajectory_file_name(const std::string& parameter, const std::string& value) {
    return parameter + "=" + value + ".csv";
}

std::string plot_script(const SweepResult& result) {
    std::string out =
        "set datafile separator ','\n"
        "set key outside\n"
        "set xlabel 't'\n"
        "set ylabel 'ergotropy'\n"
        "plot \\\n";
    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto& v = result.points[i].value;
        out += "  '" + trajectory_file_name(result.parameter, v) + "' every ::1 using 1:3 with lines title '" +
               result.parameter + " = " + v + "'";
        out += i + 1 < result.points.size() ? ", \\\n" : "\n";
    }
    return out;
}

SweepPoint run_point(const ConfigDocument& base, const SweepSpec& sweep, const std::string& value,
                     const fs::path& out_dir, const ParseOptions& parse) {
    SweepPoint point;
    point.value = value;
    try {
        ConfigDocument doc = base;
        doc.set(sweep.parameter, value);
        const RunConfig cfg = build_config(doc, parse);
        const Trajectory traj = run_simulation(cfg);
        emit_trajectory(traj, out_dir / trajectory_file_name(sweep.parameter, value));
        point.summary = summarize(traj);
        point.max_raw_trace_drift = traj.max_raw_trace_drift;
        point.min_eigenvalue = traj.min_eigenvalue;
        point.warnings = traj.warnings;
        point.omega_eval = cfg.omega_eval;
        point.j_eval = spectral_density(cfg.bath, cfg.omega_eval);
        point.r_eval = redfield_rate(cfg.bath, cfg.omega_eval);
        point.ok = true;
    } catch (const std::exception& e) {
        point.ok = false;
        point.error = e.what();
    }
    return point;
}

}  // namespace

SweepResult run_sweep(const ConfigDocument& base, const SweepSpec& sweep, const fs::path& out_dir,
                      const SweepOptions& opts) {
    validate(sweep);
    // Fail early on a broken base config rather than once per value.
    {
        ConfigDocument probe = base;
        probe.set(sweep.parameter, sweep.values.front());
        (void)build_config(probe, opts.parse);
    }
    ensure_directory(out_dir);

    SweepResult result;
    result.parameter = sweep.parameter;
    result.points.resize(sweep.values.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < sweep.values.size(); i = next++) {
            result.points[i] = run_point(base, sweep, sweep.values[i], out_dir, opts.parse);
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, opts.workers));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, sweep.values.size()); ++w) pool.emplace_back(worker);
    }

    write_file(out_dir / "summary.csv", summary_csv(result));
    write_file(out_dir / "plot.gp", plot_script(result));
    std::string meta = "parameter = " + sweep.parameter + "\nvalues = " + join(sweep.values, ",") + "\n";
    for (const auto& line : opts.metadata) meta += line + '\n';
    write_file(out_dir / "metadata.txt", meta);
    return result;
}

namespace {

struct TableRow {
    const char* omega_mult;
    const char* delta_e;
    const char* omega;
    const char* gamma;
    const char* omega0;
    const char* tunneling;
    const char* temperature;
    const char* amplitude;
};

// Presets run in eV / fs / K with a 1000 fs charging window.
std::string preset_config(const TableRow& row) {
    std::string s;
    s += "[system]\nn = 4\nepsilon_base = 0.25\n";
    s += std::string("delta_e = ") + row.delta_e + "\n";
    s += std::string("tunneling = ") + row.tunneling + "\n";
    s += std::string("V = ") + row.amplitude + "\n";
    s += std::string("Omega = ") + row.omega_mult + "\n";
    s += "tau = 1000\n\n";
    s += "[bath]\nkind = debye-lorentzian\n";
    s += std::string("gamma = ") + row.gamma + "\n";
    s += std::string("omega0 = ") + row.omega0 + "\n";
    s += std::string("T = ") + row.temperature + "\n";
    s += std::string("omega = ") + row.omega + "\n\n";
    s += "[integrator]\nrecord_every = 10\n\n";
    s += "[run]\nunits = physical\ninitial_state = uniform-ground\nenergy_reference = bare\n";
    return s;
}

std::vector<std::string> split_values(std::string_view csv) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss{std::string(csv)};
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

Preset make_sweep_preset(const char* name, const TableRow& row, const char* parameter, const char* values,
                         const char* source) {
    return Preset{name, preset_config(row), SweepSpec{parameter, split_values(values)}, source};
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = [] {
        // The swept cell of each row carries the fixed value of the other
        // rows so the config stays complete; the sweep overrides it.
        const char* text = "swept values as quoted for this scenario";
        const char* guess = "swept values are an interpolated guess";
        std::vector<Preset> p;
        p.push_back(make_sweep_preset("fig3a", {"1.0pi", "1.5", "0.085", "2.6e-7", "0.10", "0", "300", "1.5"},
                                      "system.Omega", "0.7pi,0.8pi,0.9pi,1.0pi,1.1pi,1.2pi", text));
        p.push_back(make_sweep_preset("fig3b", {"1.0pi", "2.75", "0.085", "2.6e-7", "0.12", "0", "300", "1.5"},
                                      "system.V", "1.0,1.5,2.0,2.5,3.0,3.5", guess));
        p.push_back(make_sweep_preset("fig3c", {"1.0pi", "1.5", "0.085", "2.6e-7", "0.12", "0", "300", "1.5"},
                                      "system.delta_e", "1.5,1.75,2.0,2.25,2.5,2.75", guess));
        p.push_back(make_sweep_preset("fig3d", {"1.0pi", "2.75", "0.085", "2.6e-7", "0.12", "0", "300", "1.5"},
                                      "system.tunneling", "0.03,0.04,0.05,0.06,0.07,0.08", text));
        p.push_back(make_sweep_preset("fig4a", {"1.0pi", "1.5", "0.085", "2.6e-7", "0.10", "0", "300", "1.5"},
                                      "bath.omega0", "0.02,0.04,0.06,0.08,0.10,0.12", guess));
        p.push_back(make_sweep_preset("fig4b", {"1.0pi", "1.5", "0.085", "9.0e-7", "0.12", "0", "300", "1.5"},
                                      "bath.omega", "0.035,0.06,0.085,0.11,0.135,0.16", guess));
        p.push_back(make_sweep_preset("fig4c", {"1.0pi", "1.5", "0.085", "2.6e-7", "0.03", "0", "300", "1.5"},
                                      "bath.gamma", "1.0e-7,2.6e-7,4.2e-7,5.8e-7,7.4e-7,9.0e-7", guess));
        p.push_back(make_sweep_preset("fig4d", {"1.0pi", "1.5", "0.143", "9.0e-7", "0.08", "0", "300", "1.5"},
                                      "bath.T", "1,10,50,100,200,300", guess));
        p.push_back(Preset{"fig2", preset_config({"1.0pi", "1.5", "0.085", "2.6e-4", "0.05", "0", "300", "1.5"}),
                           std::nullopt, "bath parameters from the spectral-density figure"});
        return p;
    }();
    return all;
}

const Preset& find_preset(std::string_view name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    std::string known;
    for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

void run_preset(std::string_view name, const fs::path& out_dir, int workers) {
    const Preset& preset = find_preset(name);
    ensure_directory(out_dir);
    write_file(out_dir / "config.ini", preset.config_text);
    const ConfigDocument doc = parse_document(preset.config_text);

    if (!preset.sweep) {
        const RunConfig cfg = build_config(doc);
        const double w_max = 10.0 * cfg.bath.omega0;
        const std::vector<double> grid = linear_grid(0.0, w_max, 501);
        write_spectrum_csv(rate_surface(cfg.bath, grid), out_dir / "spectrum.csv");

        // R over (omega, J): the coupling is scaled so J sweeps a band at
        // every frequency.
        std::vector<RateRow> surface;
        for (double scale : linear_grid(0.25, 2.0, 8)) {
            BathSpec scaled = cfg.bath;
            scaled.gamma *= scale;
            for (const auto& row : rate_surface(scaled, linear_grid(0.0, w_max, 101))) surface.push_back(row);
        }
        write_spectrum_csv(surface, out_dir / "surface.csv");
        write_file(out_dir / "metadata.txt", "preset = " + preset.name + "\nsource = " + preset.values_source + "\n");
        return;
    }

    SweepOptions opts;
    opts.workers = workers;
    opts.metadata = {"preset = " + preset.name, "values_source = " + preset.values_source};
    (void)run_sweep(doc, *preset.sweep, out_dir, opts);
}

}  // namespace qbat
