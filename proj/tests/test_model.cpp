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
#include <numbers>
#include <random>

#include "qbattery/model.hpp"

using namespace qbat;
constexpr double kPi = std::numbers::pi;

namespace {

SystemSpec table_spec(double delta_e, double tunneling, double v, double omega, double tau) {
    SystemSpec s;
    s.n = 4;
    s.epsilon_base = 0.25;
    s.delta_e = delta_e;
    s.tunneling = tunneling;
    s.drives = default_drives(4, v, omega, tau);
    return s;
}

}  // namespace

TEST_CASE("drive_value") {
    const DriveWaveform sine{DriveKind::Sine, 1.5, kPi, 1.0, {}};
    const DriveWaveform omc{DriveKind::OneMinusCosine, 1.5, kPi, 1.0, {}};
    CHECK(drive_value(sine, 0.0) == 0.0);
    CHECK(drive_value(DriveWaveform{DriveKind::Sine, 7.0, 0.3 * kPi, 4.0, {}}, 0.0) == 0.0);
    CHECK(drive_value(omc, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(drive_value(sine, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(drive_value(DriveWaveform{DriveKind::Constant, 0.7, kPi, 2.0, {}}, 1.3) == 0.7);

    const DriveWaveform table{DriveKind::Tabulated, 0.0, 0.0, 2.0, {0.0, 1.0, -1.0}};
    CHECK(drive_value(table, 0.5) == doctest::Approx(0.5));
    CHECK(drive_value(table, 1.5) == doctest::Approx(0.0));
    CHECK(drive_value(table, 2.0) == doctest::Approx(-1.0));

    CHECK_THROWS_AS(drive_value(sine, -1e-9), std::out_of_range);
    CHECK_THROWS_AS(drive_value(sine, 1.0 + 1e-9), std::out_of_range);
}

TEST_CASE("drive waveforms stay within 2V and sine is antisymmetric about its zero") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double v = 3.0 * u(rng);
        const double omega = (0.5 + 2.0 * u(rng)) * kPi;
        const double tau = 0.5 + 10.0 * u(rng);
        const DriveWaveform s{DriveKind::Sine, v, omega, tau, {}};
        const DriveWaveform c{DriveKind::OneMinusCosine, v, omega, tau, {}};
        const double t = tau * u(rng);
        CHECK(std::abs(drive_value(s, t)) <= v + 1e-12);
        CHECK(std::abs(drive_value(c, t)) <= 2 * v + 1e-12);
        // Omega_j(t) = -Omega_j(2 tau pi / Omega - t)
        const double mirror = 2.0 * tau * kPi / omega - t;
        if (mirror >= 0.0 && mirror <= tau) {
            CHECK(drive_value(s, t) == doctest::Approx(-drive_value(s, mirror)).epsilon(1e-9).scale(v));
        }
    }
}

TEST_CASE("validate rejects malformed drives and systems") {
    CHECK_THROWS(validate(DriveWaveform{DriveKind::Sine, 1.0, kPi, 0.0, {}}));
    CHECK_THROWS(validate(DriveWaveform{DriveKind::Sine, -1.0, kPi, 1.0, {}}));
    CHECK_THROWS(validate(DriveWaveform{DriveKind::Tabulated, 0.0, 0.0, 1.0, {1.0}}));
    SystemSpec s = table_spec(1.5, 0.0, 1.5, kPi, 1.0);
    CHECK_NOTHROW(validate(s));
    s.drives.erase(3);
    CHECK_THROWS(validate(s));
    s = table_spec(1.5, 0.0, 1.5, kPi, 1.0);
    s.n = 2;
    CHECK_THROWS(validate(s));
}

TEST_CASE("default drive assignment alternates sine and one-minus-cosine") {
    const auto drives = default_drives(6, 1.0, kPi, 1.0);
    CHECK(drives.size() == 5);
    CHECK(drives.at(2).kind == DriveKind::Sine);
    CHECK(drives.at(3).kind == DriveKind::OneMinusCosine);
    CHECK(drives.at(4).kind == DriveKind::Sine);
    CHECK(drives.at(5).kind == DriveKind::OneMinusCosine);
    CHECK(drives.at(6).kind == DriveKind::Sine);
}

TEST_CASE("build_hamiltonian") {
    SUBCASE("drives vanish at t = 0") {
        const SystemSpec s = table_spec(1.5, 0.0, 1.5, kPi, 1.0);
        const ComplexMatrix h = build_hamiltonian(s, 0.0);
        CHECK(max_abs_diff(h, bare_hamiltonian(s)) == 0.0);
        CHECK(h(0, 0).real() == doctest::Approx(1.75));
    }
    SUBCASE("all three couplings equal V at a quarter period") {
        const SystemSpec s = table_spec(1.5, 0.0, 1.5, kPi, 2.0);
        const ComplexMatrix h = build_hamiltonian(s, 1.0);
        for (int j = 1; j < 4; ++j) {
            CHECK(h(0, j).real() == doctest::Approx(1.5).epsilon(1e-14));
            CHECK(h(j, 0).real() == doctest::Approx(1.5).epsilon(1e-14));
        }
    }
    SUBCASE("matches the explicit three-unit matrix at random times") {
        const double v = 1.5, omega = 0.9 * kPi, tau = 3.0, te = 0.05, de = 2.75;
        const SystemSpec s = table_spec(de, te, v, omega, tau);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(0.0, tau);
        for (int k = 0; k < 100; ++k) {
            const double t = u(rng);
            const double o12 = v * std::sin(omega * t / tau);
            const double o13 = v * (1.0 - std::cos(omega * t / tau));
            const double o14 = v * std::sin(omega * t / tau);
            ComplexMatrix expected(4, 4);
            expected << 0.25 + de, o12, o13, o14,
                        o12, 0.25, te, 0,
                        o13, te, 0.25, te,
                        o14, 0, te, 0.25;
            const ComplexMatrix h = build_hamiltonian(s, t);
            CHECK(max_abs_diff(h, expected) <= 1e-15);
            CHECK(max_asymmetry(h) <= 1e-15);
        }
    }
    SUBCASE("zero drives and no tunneling reduce to the bare Hamiltonian") {
        SystemSpec s = table_spec(1.0, 0.0, 0.0, kPi, 1.0);
        for (double t : {0.0, 0.3, 0.99}) CHECK(max_abs_diff(build_hamiltonian(s, t), bare_hamiltonian(s)) == 0.0);
    }
    SUBCASE("drives switch off after tau") {
        const SystemSpec s = table_spec(1.5, 0.04, 1.5, 0.7 * kPi, 1.0);
        const ComplexMatrix h = build_hamiltonian(s, 1.5);
        CHECK(h(0, 1) == Complex(0.0));
        CHECK(h(0, 2) == Complex(0.0));
        CHECK(h(1, 2).real() == doctest::Approx(0.04));
        CHECK_THROWS(build_hamiltonian(s, -0.1));
    }
}

TEST_CASE("bare_hamiltonian") {
    const SystemSpec s = table_spec(1.5, 0.0, 1.5, kPi, 1.0);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected.diagonal() << 1.75, 0.25, 0.25, 0.25;
    CHECK(max_abs_diff(bare_hamiltonian(s), expected) == 0.0);

    SystemSpec flat = table_spec(0.0, 0.0, 1.5, kPi, 1.0);
    CHECK(max_abs_diff(bare_hamiltonian(flat), 0.25 * ComplexMatrix::Identity(4, 4)) == 0.0);

    SystemSpec five;
    five.n = 5;
    five.delta_e = 1.0;
    five.drives = default_drives(5, 1.0, kPi, 1.0);
    ComplexMatrix e5 = ComplexMatrix::Zero(5, 5);
    e5.diagonal() << 1.25, 0.25, 0.25, 0.25, 0.25;
    CHECK(max_abs_diff(bare_hamiltonian(five), e5) == 0.0);
}

TEST_CASE("initial_state") {
    const SystemSpec s = table_spec(1.5, 0.0, 1.5, kPi, 1.0);
    SUBCASE("uniform ground") {
        const auto rho = initial_state(s, {});
        ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
        expected.diagonal() << 0, 1.0 / 3, 1.0 / 3, 1.0 / 3;
        CHECK(max_abs_diff(rho.matrix(), expected) < 1e-15);
    }
    SUBCASE("pure level") {
        InitialStateSpec init;
        init.kind = InitialStateKind::PureLevel;
        init.level = 1;
        CHECK(max_abs_diff(initial_state(s, init).matrix(), projector(4, 0)) == 0.0);
        init.level = 5;
        CHECK_THROWS(initial_state(s, init));
    }
    SUBCASE("gibbs at very high temperature is maximally mixed") {
        InitialStateSpec init;
        init.kind = InitialStateKind::Gibbs;
        init.temperature = 1e6 * s.delta_e;
        const auto rho = initial_state(s, init);
        CHECK(max_abs_diff(rho.matrix(), 0.25 * ComplexMatrix::Identity(4, 4)) <= 1e-5);
        // direct Boltzmann factors
        const double w1 = std::exp(-1.75 / init.temperature);
        const double w0 = std::exp(-0.25 / init.temperature);
        CHECK(rho(0, 0).real() == doctest::Approx(w1 / (w1 + 3 * w0)).epsilon(1e-12));
    }
    SUBCASE("custom states are validated with the broken invariant named") {
        InitialStateSpec init;
        init.kind = InitialStateKind::Custom;
        init.custom = 0.5 * ComplexMatrix::Identity(4, 4);
        try {
            (void)initial_state(s, init);
            FAIL("expected InvalidStateError");
        } catch (const InvalidStateError& e) {
            CHECK(e.invariant() == "trace");
        }
        init.custom = 0.25 * ComplexMatrix::Identity(4, 4);
        init.custom(0, 1) = 0.1;
        try {
            (void)initial_state(s, init);
            FAIL("expected InvalidStateError");
        } catch (const InvalidStateError& e) {
            CHECK(e.invariant() == "hermitian");
        }
        init.custom = ComplexMatrix::Zero(4, 4);
        init.custom.diagonal() << 1.2, -0.2, 0, 0;
        try {
            (void)initial_state(s, init);
            FAIL("expected InvalidStateError");
        } catch (const InvalidStateError& e) {
            CHECK(e.invariant() == "positivity");
        }
        init.custom = 0.25 * ComplexMatrix::Identity(4, 4);
        CHECK_NOTHROW(initial_state(s, init));
    }
}
