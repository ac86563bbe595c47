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

#include "qbattery/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qbat {

std::string_view to_string(DriveKind kind) {
    switch (kind) {
        case DriveKind::Sine: return "sine";
        case DriveKind::OneMinusCosine: return "one-minus-cosine";
        case DriveKind::Constant: return "constant";
        case DriveKind::Tabulated: return "tabulated";
    }
    return "?";
}

std::optional<DriveKind> parse_drive_kind(std::string_view text) {
    if (text == "sine") return DriveKind::Sine;
    if (text == "one-minus-cosine") return DriveKind::OneMinusCosine;
    if (text == "constant") return DriveKind::Constant;
    if (text == "tabulated") return DriveKind::Tabulated;
    return std::nullopt;
}

DriveWaveform DriveWaveform::zero(double tau) {
    return {DriveKind::Constant, 0.0, 0.0, tau, {}};
}

void validate(const DriveWaveform& w) {
    if (!(w.tau > 0.0) || !std::isfinite(w.tau)) {
        throw std::invalid_argument("drive: tau must be positive and finite");
    }
    if (!(w.amplitude >= 0.0) || !std::isfinite(w.amplitude)) {
        throw std::invalid_argument("drive: amplitude V must be non-negative and finite");
    }
    if (!std::isfinite(w.frequency)) {
        throw std::invalid_argument("drive: frequency multiplier must be finite");
    }
    if (w.kind == DriveKind::Tabulated) {
        if (w.samples.size() < 2) {
            throw std::invalid_argument("drive: tabulated waveform needs at least two samples");
        }
        if (!std::all_of(w.samples.begin(), w.samples.end(), [](double v) { return std::isfinite(v); })) {
            throw std::invalid_argument("drive: tabulated samples must be finite");
        }
    }
}

double drive_value(const DriveWaveform& w, double t) {
    if (!(t >= 0.0 && t <= w.tau)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "drive_value: t = %.9g outside [0, %.9g]", t, w.tau);
        throw std::out_of_range(buf);
    }
    const double phase = w.frequency * t / w.tau;
    switch (w.kind) {
        case DriveKind::Sine: return w.amplitude * std::sin(phase);
        case DriveKind::OneMinusCosine: return w.amplitude * (1.0 - std::cos(phase));
        case DriveKind::Constant: return w.amplitude;
        case DriveKind::Tabulated: {
            const auto intervals = static_cast<double>(w.samples.size() - 1);
            const double x = t / w.tau * intervals;
            const auto k = std::min(static_cast<std::size_t>(x), w.samples.size() - 2);
            const double frac = x - static_cast<double>(k);
            return w.samples[k] + frac * (w.samples[k + 1] - w.samples[k]);
        }
    }
    return 0.0;
}

double SystemSpec::charge_time() const {
    double t = 0.0;
    for (const auto& [j, w] : drives) t = std::max(t, w.tau);
    return t;
}

void validate(const SystemSpec& spec) {
    if (spec.n < 3) {
        throw std::invalid_argument("system: n must be at least 3");
    }
    if (!std::isfinite(spec.epsilon_base) || !std::isfinite(spec.delta_e) || !std::isfinite(spec.tunneling)) {
        throw std::invalid_argument("system: energies must be finite");
    }
    for (int j = 2; j <= spec.n; ++j) {
        if (!spec.drives.contains(j)) {
            throw std::invalid_argument("system: missing drive for ground level " + std::to_string(j));
        }
    }
    for (const auto& [j, w] : spec.drives) {
        if (j < 2 || j > spec.n) {
            throw std::invalid_argument("system: drive index " + std::to_string(j) + " outside 2..n");
        }
        validate(w);
    }
}

std::map<int, DriveWaveform> default_drives(int n, double amplitude, double frequency, double tau) {
    std::map<int, DriveWaveform> drives;
    for (int j = 2; j <= n; ++j) {
        const DriveKind kind = j % 2 == 0 ? DriveKind::Sine : DriveKind::OneMinusCosine;
        drives[j] = DriveWaveform{kind, amplitude, frequency, tau, {}};
    }
    return drives;
}

ComplexMatrix bare_hamiltonian(const SystemSpec& spec) {
    ComplexMatrix h = ComplexMatrix::Zero(spec.n, spec.n);
    for (int i = 1; i <= spec.n; ++i) h(i - 1, i - 1) = spec.level_energy(i);
    return h;
}

ComplexMatrix build_hamiltonian(const SystemSpec& spec, double t) {
    if (!(t >= 0.0)) {
        throw std::out_of_range("build_hamiltonian: negative time");
    }
    ComplexMatrix h = bare_hamiltonian(spec);
    for (const auto& [j, w] : spec.drives) {
        if (t > w.tau) continue;  // charger disconnected
        const double v = drive_value(w, t);
        h(0, j - 1) = v;
        h(j - 1, 0) = v;
    }
    for (int j = 2; j < spec.n; ++j) {
        h(j - 1, j) = spec.tunneling;
        h(j, j - 1) = spec.tunneling;
    }
    return h;
}

std::string_view to_string(InitialStateKind kind) {
    switch (kind) {
        case InitialStateKind::UniformGround: return "uniform-ground";
        case InitialStateKind::PureLevel: return "pure-level";
        case InitialStateKind::Gibbs: return "gibbs";
        case InitialStateKind::Custom: return "custom";
    }
    return "?";
}

std::optional<InitialStateKind> parse_initial_state_kind(std::string_view text) {
    if (text == "uniform-ground") return InitialStateKind::UniformGround;
    if (text == "pure-level") return InitialStateKind::PureLevel;
    if (text == "gibbs") return InitialStateKind::Gibbs;
    if (text == "custom") return InitialStateKind::Custom;
    return std::nullopt;
}

DensityMatrix initial_state(const SystemSpec& spec, const InitialStateSpec& init) {
    const int n = spec.n;
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    switch (init.kind) {
        case InitialStateKind::UniformGround:
            for (int j = 1; j < n; ++j) rho(j, j) = 1.0 / (n - 1);
            break;
        case InitialStateKind::PureLevel:
            if (init.level < 1 || init.level > n) {
                throw std::invalid_argument("initial_state: level " + std::to_string(init.level) +
                                            " outside 1.." + std::to_string(n));
            }
            rho(init.level - 1, init.level - 1) = 1.0;
            break;
        case InitialStateKind::Gibbs: {
            if (!(init.temperature > 0.0) || !(init.k_b > 0.0)) {
                throw std::invalid_argument("initial_state: Gibbs state needs T > 0 and k_B > 0");
            }
            const double kt = init.k_b * init.temperature;
            const double e_min = std::min(spec.excited_energy(), spec.epsilon_base);
            double z = 0.0;
            for (int i = 1; i <= n; ++i) {
                const double w = std::exp(-(spec.level_energy(i) - e_min) / kt);
                rho(i - 1, i - 1) = w;
                z += w;
            }
            rho /= z;
            break;
        }
        case InitialStateKind::Custom:
            if (init.custom.rows() != n || init.custom.cols() != n) {
                throw InvalidStateError("square", "custom state must be " + std::to_string(n) + "x" +
                                                      std::to_string(n));
            }
            return DensityMatrix::validated(init.custom);
    }
    return DensityMatrix::validated(std::move(rho));
}

}  // namespace qbat
