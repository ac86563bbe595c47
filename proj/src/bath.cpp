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

#include "qbattery/bath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbat {

std::string_view to_string(SpectralKind kind) {
    switch (kind) {
        case SpectralKind::DebyeLorentzian: return "debye-lorentzian";
        case SpectralKind::DebyeExponential: return "debye-exponential";
    }
    return "?";
}

std::optional<SpectralKind> parse_spectral_kind(std::string_view text) {
    if (text == "debye-lorentzian") return SpectralKind::DebyeLorentzian;
    if (text == "debye-exponential") return SpectralKind::DebyeExponential;
    return std::nullopt;
}

double BathSpec::small_frequency() const {
    return 1e-8 * std::max(omega0, thermal_frequency());
}

void validate(const BathSpec& bath) {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!(bath.gamma >= 0.0) || !std::isfinite(bath.gamma)) {
        throw std::invalid_argument("bath: gamma must be non-negative and finite");
    }
    if (!positive(bath.omega0)) throw std::invalid_argument("bath: omega0 must be positive");
    if (!positive(bath.temperature)) throw std::invalid_argument("bath: T must be positive");
    if (!positive(bath.hbar)) throw std::invalid_argument("bath: hbar must be positive");
    if (!positive(bath.k_b)) throw std::invalid_argument("bath: kB must be positive");
    if (!(bath.rate_floor >= 0.0)) throw std::invalid_argument("bath: rate_floor must be non-negative");
}

double spectral_density(const BathSpec& bath, double omega) {
    if (omega == 0.0) return 0.0;
    const double w = std::abs(omega);
    double j = 0.0;
    switch (bath.kind) {
        case SpectralKind::DebyeLorentzian:
            j = bath.gamma * w / (bath.omega0 * bath.omega0 + w * w);
            break;
        case SpectralKind::DebyeExponential:
            j = bath.gamma * (w / bath.omega0) * std::exp(-w / bath.omega0);
            break;
    }
    return std::copysign(j, omega);
}

namespace {

/// dJ/domega at zero.
double spectral_slope_at_zero(const BathSpec& bath) {
    switch (bath.kind) {
        case SpectralKind::DebyeLorentzian: return bath.gamma / (bath.omega0 * bath.omega0);
        case SpectralKind::DebyeExponential: return bath.gamma / bath.omega0;
    }
    return 0.0;
}

/// Coefficient b of J(omega) = a omega + b omega^2 + ... for omega > 0.
double spectral_curvature_at_zero(const BathSpec& bath) {
    switch (bath.kind) {
        case SpectralKind::DebyeLorentzian: return 0.0;
        case SpectralKind::DebyeExponential: return -bath.gamma / (bath.omega0 * bath.omega0);
    }
    return 0.0;
}

}  // namespace

double redfield_rate(const BathSpec& bath, double omega) {
    const double w = std::abs(omega);
    if (w < bath.small_frequency()) {
        // First-order expansion about the omega -> 0 limit.
        const double thermal = bath.thermal_frequency();
        const double a = spectral_slope_at_zero(bath);
        return 2.0 * thermal * a + a * omega + 2.0 * thermal * spectral_curvature_at_zero(bath) * w;
    }
    const double j = spectral_density(bath, w);
    // x = hbar |omega| / k_B T, nbar = 1 / (e^x - 1)
    const double x = bath.hbar * w / (bath.k_b * bath.temperature);
    if (omega > 0.0) {
        return 2.0 * j / -std::expm1(-x);  // 2 J (nbar + 1)
    }
    return 2.0 * j / std::expm1(x);  // 2 J nbar
}

std::vector<JumpChannel> enumerate_channels(const SystemSpec& spec, const BathSpec& bath) {
    std::vector<JumpChannel> channels;
    channels.reserve(static_cast<std::size_t>(spec.n * (spec.n - 1)));
    for (int to = 0; to < spec.n; ++to) {
        for (int from = 0; from < spec.n; ++from) {
            if (to == from) continue;
            const double omega = (spec.level_energy(from + 1) - spec.level_energy(to + 1)) / bath.hbar;
            const double rate = redfield_rate(bath, omega);
            if (rate < bath.rate_floor) continue;
            channels.push_back({from, to, omega, rate});
        }
    }
    return channels;
}

std::vector<RateRow> rate_surface(const BathSpec& bath, std::span<const double> omega_grid) {
    std::vector<RateRow> rows;
    rows.reserve(omega_grid.size());
    for (double omega : omega_grid) {
        if (!std::isfinite(omega)) {
            throw std::invalid_argument("rate_surface: grid contains a non-finite frequency");
        }
        rows.push_back({omega, spectral_density(bath, omega), redfield_rate(bath, omega)});
    }
    return rows;
}

}  // namespace qbat
