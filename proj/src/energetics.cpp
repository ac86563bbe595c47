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

#include "qbattery/energetics.hpp"

#include <algorithm>
#include <numeric>

namespace qbat {

double internal_energy(const DensityMatrix& rho, const DensityMatrix& rho0, const ComplexMatrix& h_ref) {
    return trace_product(h_ref, rho.matrix()).real() - trace_product(h_ref, rho0.matrix()).real();
}

namespace {

struct SortedSpectrum {
    std::vector<double> populations;  // descending
    ComplexMatrix repaired;           // state rebuilt from the clamped spectrum
    double clamped = 0.0;
};

SortedSpectrum sorted_spectrum(const DensityMatrix& rho) {
    const EigenDecomposition eig = eig_hermitian(rho.matrix());
    std::vector<double> r(eig.values.data(), eig.values.data() + eig.values.size());

    SortedSpectrum out;
    for (double& v : r) {
        if (v < -kClampThreshold) {
            out.clamped += -v;
            v = 0.0;
        }
    }
    if (out.clamped > 0.0) {
        const double total = std::accumulate(r.begin(), r.end(), 0.0);
        for (double& v : r) v /= total;
        Eigen::VectorXd rv = Eigen::Map<Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
        out.repaired = eig.vectors * rv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    } else {
        out.repaired = rho.matrix();
    }
    std::stable_sort(r.begin(), r.end(), std::greater<>{});
    out.populations = std::move(r);
    return out;
}

}  // namespace

PassiveState passive_state(const DensityMatrix& rho, const ComplexMatrix& h_ref) {
    if (h_ref.rows() != rho.dim()) {
        throw DimensionError("passive_state: dimension mismatch");
    }
    const SortedSpectrum spec = sorted_spectrum(rho);
    const EigenDecomposition levels = eig_hermitian(h_ref);
    ComplexMatrix pass = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
        const auto& v = levels.vectors.col(k);
        pass += spec.populations[static_cast<std::size_t>(k)] * (v * v.adjoint());
    }
    return {DensityMatrix::unchecked(std::move(pass)), spec.clamped};
}

ErgotropyBreakdown ergotropy_breakdown(const DensityMatrix& rho, const ComplexMatrix& h_ref) {
    if (h_ref.rows() != rho.dim()) {
        throw DimensionError("ergotropy: dimension mismatch");
    }
    const SortedSpectrum spec = sorted_spectrum(rho);
    const EigenDecomposition levels = eig_hermitian(h_ref);

    ErgotropyBreakdown out;
    out.clamped = spec.clamped;
    out.active_energy = trace_product(h_ref, spec.repaired).real();
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
        out.passive_energy += spec.populations[static_cast<std::size_t>(k)] * levels.values[k];
    }
    // The identity is an admissible unitary, so rounding must not push W below 0.
    out.value = std::max(0.0, out.active_energy - out.passive_energy);
    return out;
}

Diagnostics diagnostics(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    Diagnostics d;
    d.purity = trace_product(m, m).real();
    d.populations.resize(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        d.populations[static_cast<std::size_t>(a)] = m(a, a).real();
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
            if (a != b) d.coherence_l1 += std::abs(m(a, b));
        }
    }
    d.min_eigenvalue = eig_hermitian(m).values.minCoeff();
    return d;
}

}  // namespace qbat
