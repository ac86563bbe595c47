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

#include <vector>

#include "qbattery/density_matrix.hpp"
#include "qbattery/linalg.hpp"

namespace qbat {

/// Eigenvalues of a state below this are treated as positivity violations
/// and clamped before the passive state is built.
inline constexpr double kClampThreshold = 1e-7;

/// Tr[H rho] - Tr[H rho0].
double internal_energy(const DensityMatrix& rho, const DensityMatrix& rho0, const ComplexMatrix& h_ref);

struct PassiveState {
    DensityMatrix state;
    /// Sum of |r_k| over eigenvalues clamped to zero (0 for a valid state).
    double clamped = 0.0;
};

/// Spectrum of rho sorted descending, placed on the eigenvectors of h_ref
/// sorted by ascending energy. Ties keep their solver order.
PassiveState passive_state(const DensityMatrix& rho, const ComplexMatrix& h_ref);

struct ErgotropyBreakdown {
    double value = 0.0;
    double active_energy = 0.0;   // Tr[H rho]
    double passive_energy = 0.0;  // Tr[H rho_pass]
    double clamped = 0.0;
};

ErgotropyBreakdown ergotropy_breakdown(const DensityMatrix& rho, const ComplexMatrix& h_ref);

inline double ergotropy(const DensityMatrix& rho, const ComplexMatrix& h_ref) {
    return ergotropy_breakdown(rho, h_ref).value;
}

struct Diagnostics {
    double purity = 0.0;
    std::vector<double> populations;
    double coherence_l1 = 0.0;
    double min_eigenvalue = 0.0;
};

Diagnostics diagnostics(const DensityMatrix& rho);

struct EnergyRecord {
    double t = 0.0;
    double energy = 0.0;
    double ergotropy = 0.0;
    double trace_error = 0.0;
    double purity = 0.0;
    double min_eigenvalue = 0.0;
    double coherence_l1 = 0.0;
    std::vector<double> populations;
};

}  // namespace qbat
