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

#include <stdexcept>
#include <string>

#include "qbattery/linalg.hpp"

namespace qbat {

/// Raised when a candidate state breaks one of the density-matrix
/// invariants. `invariant()` names the broken one: "square", "hermitian",
/// "trace" or "positivity".
class InvalidStateError : public std::invalid_argument {
  public:
    InvalidStateError(std::string invariant, const std::string& detail);
    const std::string& invariant() const { return invariant_; }

  private:
    std::string invariant_;
};

struct StateTolerances {
    double hermitian = 1e-12;
    double trace = 1e-9;
    double positivity = 1e-7;
};

/// Hermitian, unit-trace, positive semidefinite n x n matrix.
///
/// `validated` enforces all three invariants. `unchecked` is for
/// integrator internals where positivity is monitored rather than
/// enforced (Redfield dynamics may leave the state cone slightly).
class DensityMatrix {
  public:
    static DensityMatrix validated(ComplexMatrix m, const StateTolerances& tol = {});
    static DensityMatrix unchecked(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    double trace() const { return m_.trace().real(); }

    Complex operator()(Eigen::Index a, Eigen::Index b) const { return m_(a, b); }

  private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

}  // namespace qbat
