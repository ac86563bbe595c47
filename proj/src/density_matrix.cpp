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

#include "qbattery/density_matrix.hpp"

#include <cmath>
#include <cstdio>

namespace qbat {

InvalidStateError::InvalidStateError(std::string invariant, const std::string& detail)
    : std::invalid_argument("invalid density matrix (" + invariant + "): " + detail),
      invariant_(std::move(invariant)) {}

DensityMatrix DensityMatrix::validated(ComplexMatrix m, const StateTolerances& tol) {
    char buf[160];
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidStateError("square", "matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw InvalidStateError("hermitian", "matrix has non-finite entries");
    }
    const double asym = max_asymmetry(m);
    if (asym > tol.hermitian) {
        std::snprintf(buf, sizeof buf, "max |rho_ab - conj(rho_ba)| = %.3e", asym);
        throw InvalidStateError("hermitian", buf);
    }
    const Complex tr = m.trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::snprintf(buf, sizeof buf, "trace = %.12g%+.3ei", tr.real(), tr.imag());
        throw InvalidStateError("trace", buf);
    }
    const double min_eig = eig_hermitian(m, tol.hermitian).values.minCoeff();
    if (min_eig < -tol.positivity) {
        std::snprintf(buf, sizeof buf, "minimum eigenvalue %.3e", min_eig);
        throw InvalidStateError("positivity", buf);
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
    if (m.rows() != m.cols()) {
        throw InvalidStateError("square", "matrix must be square");
    }
    return DensityMatrix(std::move(m));
}

}  // namespace qbat
