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

// Test-only reference implementations. Nothing here calls into the code
// paths it is used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "qbattery/linalg.hpp"

namespace qbat::testing {

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

/// Haar-ish unitary from Gram-Schmidt on a complex Gaussian matrix.
inline ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const Complex proj = a.col(j).dot(a.col(k));
            a.col(k) -= proj * a.col(j);
        }
        a.col(k) /= a.col(k).norm();
    }
    return a;
}

/// Random full-rank state: normalised A A^dag.
inline ComplexMatrix random_state(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    ComplexMatrix rho = a * a.adjoint();
    ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
    return herm / herm.trace().real();
}

/// Ergotropy by exhaustive search: the passive energy is the minimum of
/// sum_k r_k E_sigma(k) over every permutation sigma.
inline double brute_force_ergotropy(const ComplexMatrix& rho, const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> rs(rho);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> hs(h);
    const Eigen::Index n = rho.rows();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double e = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) e += rs.eigenvalues()[k] * hs.eigenvalues()[perm[static_cast<std::size_t>(k)]];
        best = std::min(best, e);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return (h * rho).trace().real() - best;
}

/// Dissipator assembled from explicit jump matrices, for comparison with
/// the index-based implementation.
inline ComplexMatrix dense_dissipator(const ComplexMatrix& rho, int from, int to, double rate, double sandwich) {
    const Eigen::Index n = rho.rows();
    ComplexMatrix l = ComplexMatrix::Zero(n, n);
    l(to, from) = 1.0;
    const ComplexMatrix ldl = l.adjoint() * l;
    const double anti = sandwich / 2.0;
    return rate * (sandwich * l * rho * l.adjoint() - anti * (ldl * rho + rho * ldl));
}

}  // namespace qbat::testing
