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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qbat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Entry-wise tolerance under which a matrix is treated as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
  public:
    NotHermitianError(double asymmetry);
    double asymmetry() const { return asymmetry_; }

  private:
    double asymmetry_;
};

/// max_{a,b} |M[a][b] - conj(M[b][a])|
double max_asymmetry(const ComplexMatrix& m);

/// Largest entry magnitude of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
    return m.rows() == m.cols() && max_asymmetry(m) <= tol;
}

/// Eigenpairs of a Hermitian matrix. Column k of `vectors` belongs to
/// `values[k]`; values are ascending.
struct EigenDecomposition {
    RealVector values;
    ComplexMatrix vectors;

    ComplexMatrix reconstruct() const;
};

/// Throws NotHermitianError if the input deviates from Hermiticity by more
/// than `tol` in any entry. Inside a degenerate eigenspace the basis is
/// arbitrary.
EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// exp(-i H dt / hbar) assembled from the spectral decomposition of H.
ComplexMatrix propagator(const ComplexMatrix& h, double dt, double hbar = 1.0);

/// Tr(AB) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix projector(Eigen::Index dim, Eigen::Index level);

}  // namespace qbat
