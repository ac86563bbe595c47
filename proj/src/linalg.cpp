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

#include "qbattery/linalg.hpp"

#include <cmath>
#include <cstdio>

namespace qbat {

namespace {

std::string asymmetry_message(double asymmetry) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "matrix is not Hermitian: max |M_ab - conj(M_ba)| = %.3e", asymmetry);
    return buf;
}

}  // namespace

NotHermitianError::NotHermitianError(double asymmetry)
    : std::invalid_argument(asymmetry_message(asymmetry)), asymmetry_(asymmetry) {}

double max_asymmetry(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("max_asymmetry: matrix is not square");
    }
    double worst = 0.0;
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        for (Eigen::Index b = a; b < m.cols(); ++b) {
            worst = std::max(worst, std::abs(m(a, b) - std::conj(m(b, a))));
        }
    }
    return worst;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix EigenDecomposition::reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol) {
    const double asym = max_asymmetry(m);
    if (asym > tol) {
        throw NotHermitianError(asym);
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix propagator(const ComplexMatrix& h, double dt, double hbar) {
    if (!std::isfinite(dt)) {
        throw std::invalid_argument("propagator: time step must be finite");
    }
    const EigenDecomposition eig = eig_hermitian(h);
    Eigen::VectorXcd phases(eig.values.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases[k] = std::exp(Complex(0.0, -eig.values[k] * dt / hbar));
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("trace_product: dimension mismatch");
    }
    // Tr(AB) = sum_ab A_ab B_ba
    return (a.array() * b.transpose().array()).sum();
}

ComplexMatrix projector(Eigen::Index dim, Eigen::Index level) {
    if (level < 0 || level >= dim) {
        throw std::out_of_range("projector: level outside dimension");
    }
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(level, level) = 1.0;
    return p;
}

}  // namespace qbat
