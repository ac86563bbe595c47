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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbattery/bath.hpp"
#include "qbattery/density_matrix.hpp"
#include "qbattery/energetics.hpp"
#include "qbattery/model.hpp"

namespace qbat {

/// Printed:  R (2 L rho L^dag - {L^dag L, rho})    populations decay at 2R
/// Half:     R (L rho L^dag - 1/2 {L^dag L, rho})  populations decay at R
enum class LindbladConvention { Printed, Half };

enum class EnergyReference { Bare, Instantaneous };

std::string_view to_string(LindbladConvention c);
std::optional<LindbladConvention> parse_lindblad_convention(std::string_view text);
std::string_view to_string(EnergyReference r);
std::optional<EnergyReference> parse_energy_reference(std::string_view text);

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    bool hermitize = true;
    bool renormalize_trace = true;
    double positivity_tol = 1e-7;
    int record_every = 1;
    LindbladConvention convention = LindbladConvention::Printed;
    EnergyReference energy_reference = EnergyReference::Bare;
};

void validate(const IntegratorConfig& cfg);

/// Everything the right-hand side needs, independent of how the
/// Hamiltonian was produced.
struct MasterEquation {
    std::function<ComplexMatrix(double)> hamiltonian;
    std::vector<JumpChannel> channels;
    double hbar = 1.0;
    LindbladConvention convention = LindbladConvention::Printed;
    /// Reference for energy and ergotropy when EnergyReference::Bare is
    /// selected; falls back to hamiltonian(0) when empty.
    ComplexMatrix bare;
};

MasterEquation make_master_equation(const SystemSpec& spec, const BathSpec& bath,
                                    LindbladConvention convention = LindbladConvention::Printed);

ComplexMatrix dissipator(const ComplexMatrix& rho, const std::vector<JumpChannel>& channels,
                         LindbladConvention convention = LindbladConvention::Printed);

/// -(i/hbar)[H(t), rho] + dissipator
ComplexMatrix rhs(const ComplexMatrix& rho, double t, const MasterEquation& eq);

/// rhs with H_S(t) built from `spec`.
ComplexMatrix rhs(const ComplexMatrix& rho, double t, const SystemSpec& spec,
                  const std::vector<JumpChannel>& channels, double hbar = 1.0,
                  LindbladConvention convention = LindbladConvention::Printed);

class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(long long step, const std::string& what);
    long long step() const { return step_; }

  private:
    long long step_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<EnergyRecord> records;

    std::vector<std::string> warnings;
    /// |Tr rho_after - Tr rho_before| of a raw RK4 step, before enforcement.
    double max_raw_trace_drift = 0.0;
    double max_hermiticity_correction = 0.0;
    double max_trace_correction = 0.0;
    double min_eigenvalue = 0.0;
    long long positivity_violations = 0;
    double max_ergotropy_clamp = 0.0;
    long long steps = 0;

    bool has_warning(std::string_view flag) const;
};

/// Fixed-step RK4 with H sampled at t, t + dt/2 and t + dt. After every
/// step rho is optionally made Hermitian and renormalised to unit trace.
/// Positivity is only monitored (at record points); a minimum eigenvalue
/// below -1e3 * positivity_tol sets the "positivity" warning. The
/// dissipator convention is the one stored in `eq`; cfg.convention is read
/// by the overload that builds the equation from a spec.
Trajectory evolve(const DensityMatrix& rho0, const MasterEquation& eq, const IntegratorConfig& cfg);

Trajectory evolve(const DensityMatrix& rho0, const SystemSpec& spec, const BathSpec& bath,
                  const IntegratorConfig& cfg);

}  // namespace qbat
