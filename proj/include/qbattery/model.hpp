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

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbattery/density_matrix.hpp"
#include "qbattery/linalg.hpp"

namespace qbat {

enum class DriveKind { Sine, OneMinusCosine, Constant, Tabulated };

std::string_view to_string(DriveKind kind);
std::optional<DriveKind> parse_drive_kind(std::string_view text);

/// Charging field on one ground-to-excited transition.
///
///   Sine:            V sin(Omega t / tau)
///   OneMinusCosine:  V [1 - cos(Omega t / tau)]
///   Constant:        V
///   Tabulated:       linear interpolation of `samples`, spaced evenly on [0, tau]
///
/// For tabulated drives `amplitude` is ignored by the waveform itself and
/// `samples` carry absolute energies.
struct DriveWaveform {
    DriveKind kind = DriveKind::Sine;
    double amplitude = 0.0;
    double frequency = std::numbers::pi;
    double tau = 1.0;
    std::vector<double> samples;

    static DriveWaveform zero(double tau);
};

/// Throws std::invalid_argument on tau <= 0, V < 0, non-finite fields or a
/// tabulated drive with fewer than two samples.
void validate(const DriveWaveform& w);

/// Value of the drive at t in [0, tau]; rejects t outside the window.
double drive_value(const DriveWaveform& w, double t);

/// Levels are 1-based in the public surface: level 1 is the shared
/// excited state, levels 2..n are the ground states of the n-1 units.
struct SystemSpec {
    int n = 4;
    double epsilon_base = 0.25;
    double delta_e = 1.5;
    double tunneling = 0.0;
    std::map<int, DriveWaveform> drives;

    double excited_energy() const { return epsilon_base + delta_e; }
    /// Bare energy of 1-based level `i`.
    double level_energy(int i) const { return i == 1 ? excited_energy() : epsilon_base; }
    /// Latest time at which any drive is still on.
    double charge_time() const;
};

void validate(const SystemSpec& spec);

/// Default drive assignment: even j get sine, odd j get one-minus-cosine,
/// all sharing V, Omega and tau.
std::map<int, DriveWaveform> default_drives(int n, double amplitude, double frequency, double tau);

/// H_S(t) of the Lambda system. Each drive is switched off once t passes its
/// own tau; t < 0 is rejected.
ComplexMatrix build_hamiltonian(const SystemSpec& spec, double t);

/// diag(eps_base + dE, eps_base, ..., eps_base)
ComplexMatrix bare_hamiltonian(const SystemSpec& spec);

enum class InitialStateKind { UniformGround, PureLevel, Gibbs, Custom };

std::string_view to_string(InitialStateKind kind);
std::optional<InitialStateKind> parse_initial_state_kind(std::string_view text);

struct InitialStateSpec {
    InitialStateKind kind = InitialStateKind::UniformGround;
    int level = 1;              // PureLevel, 1-based
    double temperature = 1.0;   // Gibbs
    double k_b = 1.0;           // Gibbs
    ComplexMatrix custom;       // Custom
};

DensityMatrix initial_state(const SystemSpec& spec, const InitialStateSpec& init);

}  // namespace qbat
