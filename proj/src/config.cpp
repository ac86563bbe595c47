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

#include "qbattery/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace qbat {

namespace {

enum class ValueType { Number, Integer, Boolean, Keyword, List };

struct KeyInfo {
    ValueType type;
    const char* fallback;  // nullptr: required or derived
};

// Fallbacks follow the Fig. 3(a) row of the parameter table.
const std::map<std::string, KeyInfo, std::less<>>& known_keys() {
    static const std::map<std::string, KeyInfo, std::less<>> keys = {
        {"system.n", {ValueType::Integer, nullptr}},
        {"system.epsilon_base", {ValueType::Number, "0.25"}},
        {"system.delta_e", {ValueType::Number, nullptr}},
        {"system.tunneling", {ValueType::Number, "0"}},
        {"system.V", {ValueType::Number, "1.5"}},
        {"system.Omega", {ValueType::Number, "1.0pi"}},
        {"system.tau", {ValueType::Number, "1000"}},
        {"bath.kind", {ValueType::Keyword, "debye-lorentzian"}},
        {"bath.gamma", {ValueType::Number, nullptr}},
        {"bath.omega0", {ValueType::Number, nullptr}},
        {"bath.T", {ValueType::Number, nullptr}},
        {"bath.omega", {ValueType::Number, "0.085"}},
        {"bath.hbar", {ValueType::Number, nullptr}},
        {"bath.kB", {ValueType::Number, nullptr}},
        {"bath.rate_floor", {ValueType::Number, "1e-18"}},
        {"integrator.dt", {ValueType::Number, nullptr}},
        {"integrator.t_end", {ValueType::Number, nullptr}},
        {"integrator.hermitize", {ValueType::Boolean, "true"}},
        {"integrator.renormalize_trace", {ValueType::Boolean, "true"}},
        {"integrator.positivity_tol", {ValueType::Number, "1e-7"}},
        {"integrator.record_every", {ValueType::Integer, "10"}},
        {"integrator.lindblad_convention", {ValueType::Keyword, "printed"}},
        {"run.units", {ValueType::Keyword, "internal"}},
        {"run.initial_state", {ValueType::Keyword, "uniform-ground"}},
        {"run.initial_level", {ValueType::Integer, "1"}},
        {"run.initial_temperature", {ValueType::Number, nullptr}},
        {"run.rho_real", {ValueType::List, nullptr}},
        {"run.rho_imag", {ValueType::List, nullptr}},
        {"run.energy_reference", {ValueType::Keyword, "bare"}},
    };
    return keys;
}

const std::set<std::string, std::less<>> kDriveFields = {"kind", "amplitude", "frequency", "tau", "samples"};

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string at_line(int line) {
    return line > 0 ? "line " + std::to_string(line) + ": " : "";
}

/// "drive.<j>.<field>" -> j, or nullopt when the key is not a drive key.
std::optional<int> drive_index(std::string_view key) {
    if (!key.starts_with("drive.")) return std::nullopt;
    const auto rest = key.substr(6);
    const auto dot = rest.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    int j = 0;
    const auto idx = rest.substr(0, dot);
    auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), j);
    if (ec != std::errc{} || p != idx.data() + idx.size()) return std::nullopt;
    if (!kDriveFields.contains(rest.substr(dot + 1))) return std::nullopt;
    return j;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
    return out;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Builder {
  public:
    Builder(const ConfigDocument& doc, RunConfig& cfg) : doc_(doc), cfg_(cfg) {}

    const ConfigEntry* find(const std::string& key) {
        auto it = doc_.entries.find(key);
        return it == doc_.entries.end() ? nullptr : &it->second;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) {
        const ConfigEntry* e = find(key);
        throw ConfigError(at_line(e ? e->line : 0) + key + ": " + msg);
    }

    std::string text(const std::string& key, const std::string& fallback, const char* why = "default") {
        if (const ConfigEntry* e = find(key)) return e->value;
        cfg_.provenance.push_back(key + " = " + fallback + " (" + why + ")");
        return fallback;
    }

    double number(const std::string& key, const std::string& fallback, const char* why = "default") {
        const std::string t = text(key, fallback, why);
        try {
            return parse_number(t);
        } catch (const ConfigError& e) {
            fail(key, e.what());
        }
    }

    double required_number(const std::string& key) {
        const ConfigEntry* e = find(key);
        if (!e) fail(key, "required key missing");
        try {
            return parse_number(e->value);
        } catch (const ConfigError& err) {
            fail(key, err.what());
        }
    }

    int integer(const std::string& key, const std::string& fallback) {
        const double v = number(key, fallback);
        if (v != std::floor(v) || std::abs(v) > 1e9) fail(key, "expected an integer");
        return static_cast<int>(v);
    }

    bool boolean(const std::string& key, const std::string& fallback) {
        const std::string t = text(key, fallback);
        if (t == "true" || t == "on" || t == "1") return true;
        if (t == "false" || t == "off" || t == "0") return false;
        fail(key, "expected true or false, got '" + t + "'");
    }

    template <typename T>
    T keyword(const std::string& key, const std::string& fallback, std::optional<T> (*parse)(std::string_view),
              const char* choices) {
        const std::string t = text(key, fallback);
        if (auto v = parse(t)) return *v;
        fail(key, "unknown value '" + t + "' (expected one of: " + choices + ")");
    }

    void positive(const std::string& key, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) fail(key, "must be positive and finite");
    }
    void non_negative(const std::string& key, double v) {
        if (!(v >= 0.0) || !std::isfinite(v)) fail(key, "must be non-negative and finite");
    }

  private:
    const ConfigDocument& doc_;
    RunConfig& cfg_;
};

std::optional<std::string> parse_units(std::string_view t) {
    if (t == "internal" || t == "physical") return std::string(t);
    return std::nullopt;
}

}  // namespace

double parse_number(std::string_view raw) {
    std::string text = trim(raw);
    double factor = 1.0;
    if (text.size() >= 2 && text.ends_with("pi")) {
        factor = std::numbers::pi;
        text.resize(text.size() - 2);
        text = trim(text);
        if (text.empty()) return factor;
    }
    if (text.empty()) throw ConfigError("expected a number, got an empty value");
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last) {
        throw ConfigError("expected a number, got '" + std::string(raw) + "'");
    }
    if (!std::isfinite(v)) throw ConfigError("expected a finite number, got '" + std::string(raw) + "'");
    return v * factor;
}

bool is_scalar_key(std::string_view key) {
    auto it = known_keys().find(key);
    if (it != known_keys().end()) {
        return it->second.type == ValueType::Number || it->second.type == ValueType::Integer;
    }
    if (drive_index(key)) {
        return key.ends_with(".amplitude") || key.ends_with(".frequency") || key.ends_with(".tau");
    }
    return false;
}

const std::vector<std::string>& required_keys() {
    static const std::vector<std::string> keys = {"system.n", "system.delta_e", "bath.gamma", "bath.omega0",
                                                  "bath.T"};
    return keys;
}

ConfigDocument parse_document(std::string_view text) {
    ConfigDocument doc;
    std::string section;
    std::stringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(at_line(line) + "malformed section header '" + s + "'");
            section = trim(std::string_view(s).substr(1, s.size() - 2));
            if (section.empty()) throw ConfigError(at_line(line) + "empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError(at_line(line) + "expected 'key = value', got '" + s + "'");
        const std::string key = trim(std::string_view(s).substr(0, eq));
        const std::string value = trim(std::string_view(s).substr(eq + 1));
        if (key.empty()) throw ConfigError(at_line(line) + "missing key before '='");
        if (section.empty()) throw ConfigError(at_line(line) + "key '" + key + "' appears before any [section]");
        const std::string full = section + "." + key;
        if (auto it = doc.entries.find(full); it != doc.entries.end()) {
            throw ConfigError(at_line(line) + "duplicate key '" + full + "' (first set on line " +
                              std::to_string(it->second.line) + ")");
        }
        doc.entries.emplace(full, ConfigEntry{value, line});
    }
    return doc;
}

RunConfig build_config(const ConfigDocument& doc, const ParseOptions& opts) {
    RunConfig cfg;

    std::vector<std::string> missing;
    for (const auto& key : required_keys()) {
        if (!doc.contains(key)) missing.push_back(key);
    }
    if (!missing.empty()) {
        std::string msg = "missing required keys:";
        for (const auto& k : missing) msg += " " + k;
        throw ConfigError(msg);
    }

    for (const auto& [key, entry] : doc.entries) {
        if (known_keys().contains(key)) continue;
        if (auto j = drive_index(key)) continue;
        if (opts.strict) throw ConfigError(at_line(entry.line) + "unknown key '" + key + "'");
        cfg.warnings.push_back(at_line(entry.line) + "ignoring unknown key '" + key + "'");
    }

    Builder b(doc, cfg);

    // [run] units first: it decides the hbar / kB defaults.
    cfg.units = b.keyword<std::string>("run.units", "internal", parse_units, "internal, physical");
    const bool physical = cfg.units == "physical";

    SystemSpec& sys = cfg.system;
    sys.n = b.integer("system.n", "4");
    if (sys.n < 3) b.fail("system.n", "must be at least 3");
    if (sys.n > 64) b.fail("system.n", "must be at most 64");
    sys.epsilon_base = b.number("system.epsilon_base", "0.25");
    sys.delta_e = b.required_number("system.delta_e");
    sys.tunneling = b.number("system.tunneling", "0");
    const double v = b.number("system.V", "1.5");
    b.non_negative("system.V", v);
    const double omega_mult = b.number("system.Omega", "1.0pi");
    const double tau = b.number("system.tau", "1000");
    b.positive("system.tau", tau);

    sys.drives = default_drives(sys.n, v, omega_mult, tau);
    for (const auto& [key, entry] : doc.entries) {
        const auto j = drive_index(key);
        if (!j) continue;
        if (*j < 2 || *j > sys.n) b.fail(key, "drive index must lie in 2.." + std::to_string(sys.n));
    }
    for (int j = 2; j <= sys.n; ++j) {
        const std::string prefix = "drive." + std::to_string(j) + ".";
        const bool any = std::any_of(kDriveFields.begin(), kDriveFields.end(),
                                     [&](const std::string& f) { return doc.contains(prefix + f); });
        if (!any) continue;
        DriveWaveform& w = sys.drives[j];
        auto field = [&](const char* f) { return prefix + f; };
        if (doc.contains(field("kind"))) {
            w.kind = b.keyword<DriveKind>(field("kind"), "", parse_drive_kind,
                                          "sine, one-minus-cosine, constant, tabulated");
        }
        if (doc.contains(field("amplitude"))) w.amplitude = b.number(field("amplitude"), "");
        if (doc.contains(field("frequency"))) w.frequency = b.number(field("frequency"), "");
        if (doc.contains(field("tau"))) w.tau = b.number(field("tau"), "");
        if (doc.contains(field("samples"))) {
            try {
                w.samples = parse_list(b.text(field("samples"), ""));
            } catch (const ConfigError& e) {
                b.fail(field("samples"), e.what());
            }
        }
        b.non_negative(field("amplitude"), w.amplitude);
        b.positive(field("tau"), w.tau);
        if (w.kind == DriveKind::Tabulated && w.samples.size() < 2) {
            b.fail(field("samples"), "tabulated drive needs at least two comma-separated samples");
        }
        if (w.kind == DriveKind::Tabulated) {
            double peak = 0.0;
            for (double s : w.samples) peak = std::max(peak, std::abs(s));
            w.amplitude = peak;
        }
    }

    BathSpec& bath = cfg.bath;
    bath.kind = b.keyword<SpectralKind>("bath.kind", "debye-lorentzian", parse_spectral_kind,
                                        "debye-lorentzian, debye-exponential");
    bath.gamma = b.required_number("bath.gamma");
    b.non_negative("bath.gamma", bath.gamma);
    bath.omega0 = b.required_number("bath.omega0");
    b.positive("bath.omega0", bath.omega0);
    bath.temperature = b.required_number("bath.T");
    b.positive("bath.T", bath.temperature);
    cfg.omega_eval = b.number("bath.omega", "0.085");
    const char* unit_note = physical ? "physical units" : "internal units";
    bath.hbar = b.number("bath.hbar", physical ? format_number(kHbarEvFs) : "1", unit_note);
    b.positive("bath.hbar", bath.hbar);
    bath.k_b = b.number("bath.kB", physical ? format_number(kBoltzmannEvPerK) : "1", unit_note);
    b.positive("bath.kB", bath.k_b);
    bath.rate_floor = b.number("bath.rate_floor", "1e-18");
    b.non_negative("bath.rate_floor", bath.rate_floor);

    IntegratorConfig& in = cfg.integrator;
    const double charge_time = sys.charge_time();
    in.dt = b.number("integrator.dt", format_number(charge_time / 20000.0), "tau / 20000");
    b.positive("integrator.dt", in.dt);
    in.t_end = b.number("integrator.t_end", format_number(charge_time), "tau");
    if (!(in.t_end >= in.dt) || !std::isfinite(in.t_end)) b.fail("integrator.t_end", "must be finite and >= dt");
    in.hermitize = b.boolean("integrator.hermitize", "true");
    in.renormalize_trace = b.boolean("integrator.renormalize_trace", "true");
    in.positivity_tol = b.number("integrator.positivity_tol", "1e-7");
    b.non_negative("integrator.positivity_tol", in.positivity_tol);
    in.record_every = b.integer("integrator.record_every", "10");
    if (in.record_every < 1) b.fail("integrator.record_every", "must be at least 1");
    in.convention = b.keyword<LindbladConvention>("integrator.lindblad_convention", "printed",
                                                  parse_lindblad_convention, "printed, half");
    in.energy_reference = b.keyword<EnergyReference>("run.energy_reference", "bare", parse_energy_reference,
                                                     "bare, instantaneous");

    InitialStateSpec& init = cfg.initial;
    init.kind = b.keyword<InitialStateKind>("run.initial_state", "uniform-ground", parse_initial_state_kind,
                                            "uniform-ground, pure-level, gibbs, custom");
    init.k_b = bath.k_b;
    if (init.kind == InitialStateKind::PureLevel) {
        init.level = b.integer("run.initial_level", "1");
        if (init.level < 1 || init.level > sys.n) b.fail("run.initial_level", "must lie in 1..n");
    }
    if (init.kind == InitialStateKind::Gibbs) {
        init.temperature = b.number("run.initial_temperature", format_number(bath.temperature), "bath.T");
        b.positive("run.initial_temperature", init.temperature);
    }
    if (init.kind == InitialStateKind::Custom) {
        const std::size_t count = static_cast<std::size_t>(sys.n) * static_cast<std::size_t>(sys.n);
        std::vector<double> re;
        std::vector<double> im(count, 0.0);
        try {
            if (!doc.contains("run.rho_real")) b.fail("run.rho_real", "required when initial_state = custom");
            re = parse_list(b.text("run.rho_real", ""));
            if (doc.contains("run.rho_imag")) im = parse_list(b.text("run.rho_imag", ""));
        } catch (const ConfigError& e) {
            b.fail("run.rho_real", e.what());
        }
        if (re.size() != count) b.fail("run.rho_real", "expected n*n = " + std::to_string(count) + " values");
        if (im.size() != count) b.fail("run.rho_imag", "expected n*n = " + std::to_string(count) + " values");
        init.custom = ComplexMatrix(sys.n, sys.n);
        for (int a = 0; a < sys.n; ++a) {
            for (int c = 0; c < sys.n; ++c) {
                const auto k = static_cast<std::size_t>(a * sys.n + c);
                init.custom(a, c) = Complex(re[k], im[k]);
            }
        }
    }

    try {
        validate(sys);
        validate(bath);
        validate(in);
        (void)initial_state(sys, init);
    } catch (const InvalidStateError& e) {
        b.fail("run.initial_state", e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

}  // namespace qbat
