// Copyright 2026 The qdc authors.
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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qdc/experiment.hpp"
#include "qdc/gates.hpp"
#include "test_util.hpp"

using namespace qdc;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::vector<Gate> sample_gates() {
    return {Gate::hadamard(0),
            Gate::phase_shift(0.37, 0),
            Gate::phase_shift(std::numbers::pi, 1),
            Gate::rot_y(1.2, 1),
            Gate::controlled_hadamard(1, 0),
            Gate::controlled_hadamard(0, 1)};
}

} // namespace

TEST_CASE("gate matrices are unitary") {
    for (const auto& gate : sample_gates()) {
        CHECK(gate.local_matrix().is_unitary(1e-12));
    }
    // Spot-check the defining entries.
    const Matrix2 h = Matrix2::hadamard();
    CHECK(std::abs(h(1, 1) - Complex(-kInvSqrt2, 0)) <= 1e-15);
    const Matrix2 p = Matrix2::phase_shift(std::numbers::pi);
    CHECK(std::abs(p(1, 1) - Complex(-1, 0)) <= 1e-12);
    const Matrix2 r = Matrix2::rot_y(2.0 * 0.3);
    CHECK(r(0, 0).real() == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
    CHECK(r(1, 0).real() == doctest::Approx(std::sin(0.3)).epsilon(1e-15));
}

TEST_CASE("hadamard on |0> gives |+>") {
    const PureState out = apply_gate(PureState::zero(1), Gate::hadamard(0));
    CHECK(std::abs(out.amplitude(0) - Complex(kInvSqrt2, 0)) <= 1e-15);
    CHECK(std::abs(out.amplitude(1) - Complex(kInvSqrt2, 0)) <= 1e-15);
}

TEST_CASE("phase pi flips |+> to |->") {
    const Complex plus[2] = {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)};
    const PureState out =
        apply_gate(PureState::from_amplitudes(1, plus),
                   Gate::phase_shift(std::numbers::pi, 0));
    CHECK(std::abs(out.amplitude(0) - Complex(kInvSqrt2, 0)) <= 1e-12);
    CHECK(std::abs(out.amplitude(1) - Complex(-kInvSqrt2, 0)) <= 1e-12);
}

TEST_CASE("controlled-Hadamard is identity when the control is 0") {
    // |particle>|0>: the ancilla bit is 0, so the photon is untouched.
    const PureState in = kron(particle_state(0.8), PureState::basis(1, 0));
    const PureState out =
        apply_gate(in, Gate::controlled_hadamard(kAncillaQubit, kPhotonQubit));
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(out.amplitude(i) - in.amplitude(i)) <= 1e-15);
    }
    // With the ancilla at 1 it acts as a Hadamard on the photon.
    const PureState in1 = kron(particle_state(0.8), PureState::basis(1, 1));
    const PureState out1 =
        apply_gate(in1,
                   Gate::controlled_hadamard(kAncillaQubit, kPhotonQubit));
    const PureState expected = kron(wave_state(0.8), PureState::basis(1, 1));
    CHECK(test::phase_free_distance(out1, expected) <= 1e-12);
}

TEST_CASE("index validation") {
    CHECK_THROWS_AS(apply_gate(PureState::zero(1), Gate::hadamard(1)),
                    ConfigError);
    CHECK_THROWS_AS(apply_gate(PureState::zero(2),
                               Gate::controlled_hadamard(2, 0)),
                    ConfigError);
    CHECK_THROWS_AS(apply_gate(PureState::zero(2),
                               Gate::controlled_hadamard(0, 0)),
                    ConfigError);
    CHECK_THROWS_AS(Gate::phase_shift(std::nan(""), 0), ConfigError);
}

TEST_CASE("unitarity: gate then adjoint is the identity") {
    RandomStream rng(42);
    const auto gates = sample_gates();
    for (int trial = 0; trial < 1000; ++trial) {
        const PureState state = test::random_state(2, rng);
        const Gate& gate = gates[trial % gates.size()];
        const PureState round_trip =
            apply_gate_adjoint(apply_gate(state, gate), gate);
        for (int i = 0; i < state.size(); ++i) {
            CHECK(std::abs(round_trip.amplitude(i) - state.amplitude(i)) <=
                  1e-12);
        }
    }
}

TEST_CASE("norm preservation on random states") {
    RandomStream rng(43);
    const auto gates = sample_gates();
    for (int trial = 0; trial < 1000; ++trial) {
        const PureState state = test::random_state(2, rng);
        const PureState out =
            apply_gate(state, gates[trial % gates.size()]);
        CHECK(std::abs(out.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("apply_gate is linear in the input amplitudes") {
    // a*U|s1> + b*U|s2> == U(a|s1> + b|s2>), checked through raw
    // amplitude arithmetic on a superposed input.
    RandomStream rng(44);
    for (const auto& gate : sample_gates()) {
        const PureState s1 = test::random_state(2, rng);
        const PureState s2 = test::random_state(2, rng);
        const Complex a(0.6, 0.1);
        const Complex b = std::sqrt(Complex(1.0, 0.0) - a * std::conj(a));

        std::vector<Complex> combo(4);
        double norm2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            combo[i] = a * s1.amplitude(i) + b * s2.amplitude(i);
            norm2 += std::norm(combo[i]);
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& amp : combo) amp *= inv;

        const PureState lhs =
            apply_gate(PureState::from_amplitudes(2, combo), gate);
        const PureState u1 = apply_gate(s1, gate);
        const PureState u2 = apply_gate(s2, gate);
        for (int i = 0; i < 4; ++i) {
            const Complex rhs =
                inv * (a * u1.amplitude(i) + b * u2.amplitude(i));
            CHECK(std::abs(lhs.amplitude(i) - rhs) <= 1e-12);
        }
    }
}
