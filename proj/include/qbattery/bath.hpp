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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qbattery/model.hpp"

namespace qbat {

enum class SpectralKind {
    DebyeLorentzian,   // gamma w / (w0^2 + w^2)
    DebyeExponential,  // gamma (w / w0) exp(-w / w0)
};

std::string_view to_string(SpectralKind kind);
std::optional<SpectralKind> parse_spectral_kind(std::string_view text);

struct BathSpec {
    SpectralKind kind = SpectralKind::DebyeLorentzian;
    double gamma = 2.6e-7;
    double omega0 = 0.10;
    double temperature = 300.0;
    double hbar = 1.0;
    double k_b = 1.0;
    /// Channels whose rate falls below this are dropped.
    double rate_floor = 1e-18;

    double thermal_frequency() const { return k_b * temperature / hbar; }
    /// Below this |omega| the rate is replaced by its analytic omega -> 0 limit.
    double small_frequency() const;
};

void validate(const BathSpec& bath);

/// J(omega), extended as an odd function to negative frequencies.
double spectral_density(const BathSpec& bath, double omega);

/// R(omega) = J(omega) [coth(hbar omega / 2 k_B T) + 1].
///
/// Written as 2 J (nbar + 1) for omega > 0 and 2 |J| nbar for omega < 0 so
/// that no cancellation happens; near omega = 0 the limit
/// 2 k_B T J'(0) / hbar is returned. Never negative.
double redfield_rate(const BathSpec& bath, double omega);

/// Jump |to><from| with its Bohr frequency (eps_from - eps_to) / hbar.
/// Indices are 0-based.
struct JumpChannel {
    int from = 0;
    int to = 0;
    double bohr_frequency = 0.0;
    double rate = 0.0;
};

/// One channel per ordered pair of distinct levels, rates evaluated at the
/// bare Bohr frequencies; channels below bath.rate_floor are pruned.
std::vector<JumpChannel> enumerate_channels(const SystemSpec& spec, const BathSpec& bath);

struct RateRow {
    double omega;
    double j;
    double r;
};

std::vector<RateRow> rate_surface(const BathSpec& bath, std::span<const double> omega_grid);

}  // namespace qbat
