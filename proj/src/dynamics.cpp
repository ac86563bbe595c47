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

#include "qbattery/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qbat {

std::string_view to_string(LindbladConvention c) {
    return c == LindbladConvention::Printed ? "printed" : "half";
}

std::optional<LindbladConvention> parse_lindblad_convention(std::string_view text) {
    if (text == "printed") return LindbladConvention::Printed;
    if (text == "half") return LindbladConvention::Half;
    return std::nullopt;
}

std::string_view to_string(EnergyReference r) {
    return r == EnergyReference::Bare ? "bare" : "instantaneous";
}

std::optional<EnergyReference> parse_energy_reference(std::string_view text) {
    if (text == "bare") return EnergyReference::Bare;
    if (text == "instantaneous") return EnergyReference::Instantaneous;
    return std::nullopt;
}

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        throw std::invalid_argument("integrator: dt must be positive and finite");
    }
    if (!(cfg.t_end >= cfg.dt) || !std::isfinite(cfg.t_end)) {
        throw std::invalid_argument("integrator: t_end must be finite and at least dt");
    }
    if (cfg.record_every < 1) {
        throw std::invalid_argument("integrator: record_every must be at least 1");
    }
    if (!(cfg.positivity_tol >= 0.0)) {
        throw std::invalid_argument("integrator: positivity_tol must be non-negative");
    }
}

MasterEquation make_master_equation(const SystemSpec& spec, const BathSpec& bath, LindbladConvention convention) {
    validate(spec);
    validate(bath);
    MasterEquation eq;
    eq.hamiltonian = [spec](double t) { return build_hamiltonian(spec, t); };
    eq.channels = enumerate_channels(spec, bath);
    eq.hbar = bath.hbar;
    eq.convention = convention;
    eq.bare = bare_hamiltonian(spec);
    return eq;
}

ComplexMatrix dissipator(const ComplexMatrix& rho, const std::vector<JumpChannel>& channels,
                         LindbladConvention convention) {
    const Eigen::Index n = rho.rows();
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    const double gain = convention == LindbladConvention::Printed ? 2.0 : 1.0;
    const double loss = convention == LindbladConvention::Printed ? 1.0 : 0.5;
    for (const JumpChannel& c : channels) {
        if (c.from < 0 || c.from >= n || c.to < 0 || c.to >= n) {
            throw DimensionError("dissipator: channel index outside dimension");
        }
        // L = |to><from|:  L rho L^dag = rho_ff |to><to|,  L^dag L = |from><from|
        out(c.to, c.to) += gain * c.rate * rho(c.from, c.from);
        out.row(c.from) -= loss * c.rate * rho.row(c.from);
        out.col(c.from) -= loss * c.rate * rho.col(c.from);
    }
    return out;
}

ComplexMatrix rhs(const ComplexMatrix& rho, double t, const MasterEquation& eq) {
    const ComplexMatrix h = eq.hamiltonian(t);
    ComplexMatrix out = Complex(0.0, -1.0 / eq.hbar) * (h * rho - rho * h);
    out += dissipator(rho, eq.channels, eq.convention);
    return out;
}

ComplexMatrix rhs(const ComplexMatrix& rho, double t, const SystemSpec& spec,
                  const std::vector<JumpChannel>& channels, double hbar, LindbladConvention convention) {
    const ComplexMatrix h = build_hamiltonian(spec, t);
    ComplexMatrix out = Complex(0.0, -1.0 / hbar) * (h * rho - rho * h);
    out += dissipator(rho, channels, convention);
    return out;
}

namespace {

std::string step_message(long long step, const std::string& what) {
    return "integration failed at step " + std::to_string(step) + ": " + what;
}

}  // namespace

IntegrationError::IntegrationError(long long step, const std::string& what)
    : std::runtime_error(step_message(step, what)), step_(step) {}

bool Trajectory::has_warning(std::string_view flag) const {
    return std::find(warnings.begin(), warnings.end(), flag) != warnings.end();
}

Trajectory evolve(const DensityMatrix& rho0, const MasterEquation& eq, const IntegratorConfig& cfg) {
    validate(cfg);
    const ComplexMatrix bare = eq.bare.size() > 0 ? eq.bare : eq.hamiltonian(0.0);
    auto reference = [&](double t) -> ComplexMatrix {
        return cfg.energy_reference == EnergyReference::Bare ? bare : eq.hamiltonian(t);
    };

    Trajectory traj;
    traj.min_eigenvalue = 1.0;

    auto record = [&](double t, const ComplexMatrix& m) {
        const DensityMatrix state = DensityMatrix::unchecked(m);
        // Spectral diagnostics need an exactly Hermitian matrix even when
        // hermitize is off.
        const DensityMatrix herm = DensityMatrix::unchecked(0.5 * (m + m.adjoint()));
        const ComplexMatrix h_ref = reference(t);
        const Diagnostics d = diagnostics(herm);
        const ErgotropyBreakdown erg = ergotropy_breakdown(herm, h_ref);

        EnergyRecord rec;
        rec.t = t;
        rec.energy = trace_product(h_ref, m).real() - trace_product(h_ref, rho0.matrix()).real();
        rec.ergotropy = erg.value;
        rec.trace_error = std::abs(m.trace() - 1.0);
        rec.purity = d.purity;
        rec.min_eigenvalue = d.min_eigenvalue;
        rec.coherence_l1 = d.coherence_l1;
        rec.populations = d.populations;

        traj.min_eigenvalue = std::min(traj.min_eigenvalue, d.min_eigenvalue);
        traj.max_ergotropy_clamp = std::max(traj.max_ergotropy_clamp, erg.clamped);
        if (d.min_eigenvalue < -cfg.positivity_tol) ++traj.positivity_violations;

        traj.times.push_back(t);
        traj.states.push_back(state);
        traj.records.push_back(std::move(rec));
    };

    const double ratio = cfg.t_end / cfg.dt;
    const auto total_steps = static_cast<long long>(std::ceil(ratio - 1e-9));
    traj.steps = total_steps;

    ComplexMatrix rho = rho0.matrix();
    record(0.0, rho);

    for (long long k = 0; k < total_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        const double h = std::min(cfg.dt, cfg.t_end - t);
        const ComplexMatrix k1 = rhs(rho, t, eq);
        const ComplexMatrix k2 = rhs(rho + 0.5 * h * k1, t + 0.5 * h, eq);
        const ComplexMatrix k3 = rhs(rho + 0.5 * h * k2, t + 0.5 * h, eq);
        const ComplexMatrix k4 = rhs(rho + h * k3, t + h, eq);
        const Complex trace_before = rho.trace();
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!rho.allFinite()) {
            throw IntegrationError(k + 1, "state has non-finite entries");
        }
        traj.max_raw_trace_drift = std::max(traj.max_raw_trace_drift, std::abs(rho.trace() - trace_before));

        if (cfg.hermitize) {
            traj.max_hermiticity_correction = std::max(traj.max_hermiticity_correction, 0.5 * max_asymmetry(rho));
            rho = (0.5 * (rho + rho.adjoint())).eval();
        }
        if (cfg.renormalize_trace) {
            const Complex tr = rho.trace();
            traj.max_trace_correction = std::max(traj.max_trace_correction, std::abs(tr - 1.0));
            rho /= tr.real();
        }

        const bool last = k + 1 == total_steps;
        if ((k + 1) % cfg.record_every == 0 || last) {
            const double t_next = last ? cfg.t_end : t + h;
            record(t_next, rho);
        }
    }

    if (traj.min_eigenvalue < -1e3 * cfg.positivity_tol) {
        traj.warnings.emplace_back("positivity");
    }
    if (traj.max_ergotropy_clamp > 0.0) {
        traj.warnings.emplace_back("ergotropy-clamped");
    }
    return traj;
}

Trajectory evolve(const DensityMatrix& rho0, const SystemSpec& spec, const BathSpec& bath,
                  const IntegratorConfig& cfg) {
    if (rho0.dim() != spec.n) {
        throw DimensionError("evolve: initial state dimension does not match system");
    }
    return evolve(rho0, make_master_equation(spec, bath, cfg.convention), cfg);
}

}  // namespace qbat
