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

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qbattery/energetics.hpp"
#include "qbattery/model.hpp"

using namespace qbat;

namespace {

ComplexMatrix table_h() {
    SystemSpec s;
    return bare_hamiltonian(s);
}

DensityMatrix uniform_ground() { return initial_state(SystemSpec{}, {}); }

}  // namespace

TEST_CASE("internal energy") {
    const ComplexMatrix h = table_h();
    const auto excited = DensityMatrix::validated(projector(4, 0));
    CHECK(internal_energy(excited, uniform_ground(), h) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(internal_energy(uniform_ground(), uniform_ground(), h) == 0.0);
}

TEST_CASE("passive state") {
    const ComplexMatrix h = table_h();
    SUBCASE("maximally mixed state is its own passive state") {
        const auto mixed = DensityMatrix::validated(0.25 * ComplexMatrix::Identity(4, 4));
        CHECK(max_abs_diff(passive_state(mixed, h).state.matrix(), mixed.matrix()) <= 1e-12);
        CHECK(ergotropy(mixed, h) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("excited projector moves to the ground manifold") {
        const auto ps = passive_state(DensityMatrix::validated(projector(4, 0)), h);
        CHECK(trace_product(h, ps.state.matrix()).real() == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(ps.clamped == 0.0);
    }
    SUBCASE("Gibbs state is passive") {
        InitialStateSpec init;
        init.kind = InitialStateKind::Gibbs;
        init.temperature = 0.7;
        SystemSpec s;
        s.epsilon_base = 0.0;
        s.delta_e = 1.0;
        const auto gibbs = initial_state(s, init);
        CHECK(std::abs(ergotropy(gibbs, bare_hamiltonian(s))) <= 1e-12);
    }
    SUBCASE("spectrum is preserved") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            const ComplexMatrix hh = testing::random_hermitian(5, rng);
            const auto rho = DensityMatrix::validated(testing::random_state(5, rng));
            const auto ps = passive_state(rho, hh);
            const RealVector a = eig_hermitian(rho.matrix()).values;
            const RealVector b = eig_hermitian(ps.state.matrix()).values;
            CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK(std::abs(ps.state.trace() - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("ergotropy examples") {
    const ComplexMatrix h = table_h();
    CHECK(ergotropy(DensityMatrix::validated(projector(4, 0)), h) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(ergotropy(uniform_ground(), h) == doctest::Approx(0.0).epsilon(1e-12));

    const auto b = ergotropy_breakdown(DensityMatrix::validated(projector(4, 0)), h);
    CHECK(b.active_energy == doctest::Approx(1.75));
    CHECK(b.passive_energy == doctest::Approx(0.25));
    CHECK(b.value == doctest::Approx(b.active_energy - b.passive_energy));
}

TEST_CASE("ergotropy matches a brute-force minimum over level permutations") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 4;
        const ComplexMatrix h = testing::random_hermitian(n, rng);
        const auto rho = DensityMatrix::validated(testing::random_state(n, rng));
        const double w = ergotropy(rho, h);
        CHECK(w >= -1e-12);
        CHECK(std::abs(w - testing::brute_force_ergotropy(rho.matrix(), h)) <= 1e-10);
    }
}

TEST_CASE("ergotropy invariances") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix h = testing::random_hermitian(4, rng);
        const ComplexMatrix m = testing::random_state(4, rng);
        const auto rho = DensityMatrix::validated(m);
        const double w = ergotropy(rho, h);

        const ComplexMatrix shifted = h + 3.7 * ComplexMatrix::Identity(4, 4);
        CHECK(std::abs(ergotropy(rho, shifted) - w) <= 1e-12);

        const ComplexMatrix u = testing::random_unitary(4, rng);
        const auto rotated = DensityMatrix::validated(u * m * u.adjoint());
        CHECK(std::abs(ergotropy(rotated, u * h * u.adjoint()) - w) <= 1e-10);

        const auto ps = passive_state(rho, h);
        const auto charged = DensityMatrix::validated(u * ps.state.matrix() * u.adjoint());
        const double expected = trace_product(h, charged.matrix()).real() - trace_product(h, ps.state.matrix()).real();
        CHECK(std::abs(ergotropy(charged, h) - expected) <= 1e-10);
    }
}

TEST_CASE("ergotropy does not depend on the eigenbasis chosen inside a degenerate level") {
    const ComplexMatrix h = table_h();
    std::mt19937_64 rng(5);
    const auto rho = DensityMatrix::validated(testing::random_state(4, rng));
    const double w = ergotropy(rho, h);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix u = ComplexMatrix::Identity(4, 4);
        u.bottomRightCorner(3, 3) = testing::random_unitary(3, rng);
        CHECK(max_abs_diff(u * h * u.adjoint(), h) <= 1e-12);
        CHECK(std::abs(ergotropy(rho, u * h * u.adjoint()) - w) <= 1e-12);
    }
}

TEST_CASE("clamping of slightly negative spectra") {
    const ComplexMatrix h = table_h();
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m.diagonal() << 0.5, 0.5 + 1e-9, 0.0, -1e-9;
    const auto tiny = ergotropy_breakdown(DensityMatrix::unchecked(m), h);
    CHECK(tiny.clamped == 0.0);

    m.diagonal() << 0.6, 0.4 + 1e-3, 0.0, -1e-3;
    const auto big = ergotropy_breakdown(DensityMatrix::unchecked(m), h);
    CHECK(big.clamped == doctest::Approx(1e-3));
    CHECK(big.value >= 0.0);
    const auto ps = passive_state(DensityMatrix::unchecked(m), h);
    CHECK(eig_hermitian(ps.state.matrix()).values.minCoeff() >= 0.0);
    CHECK(std::abs(ps.state.trace() - 1.0) <= 1e-12);
}

TEST_CASE("diagnostics") {
    const auto pure = diagnostics(DensityMatrix::validated(projector(4, 0)));
    CHECK(pure.purity == doctest::Approx(1.0));
    CHECK(pure.coherence_l1 == 0.0);
    CHECK(pure.populations == std::vector<double>{1, 0, 0, 0});

    const auto mixed = diagnostics(DensityMatrix::validated(0.25 * ComplexMatrix::Identity(4, 4)));
    CHECK(mixed.purity == doctest::Approx(0.25));
    CHECK(mixed.min_eigenvalue == doctest::Approx(0.25));

    ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
    const auto coh = diagnostics(DensityMatrix::validated(plus));
    CHECK(coh.coherence_l1 == doctest::Approx(1.0));
    CHECK(coh.purity == doctest::Approx(1.0));
    CHECK(coh.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
}
