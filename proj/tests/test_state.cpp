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

#include "doctest.h"
#include "qdc/experiment.hpp"
#include "qdc/state.hpp"
#include "test_util.hpp"

using namespace qdc;

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

TEST_CASE("basis states and validation") {
    const PureState zero = PureState::zero(2);
    CHECK(zero.amplitude(0) == Complex(1.0, 0.0));
    CHECK(zero.norm() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(PureState::zero(3), ConfigError);
    CHECK_THROWS_AS(PureState::basis(1, 2), ConfigError);

    // Non-finite and non-normalized amplitudes are rejected.
    const Complex bad[2] = {Complex(std::nan(""), 0.0), Complex(0.0, 0.0)};
    CHECK_THROWS_AS(PureState::from_amplitudes(1, bad), ConfigError);
    const Complex unnormalized[2] = {Complex(1.0, 0.0), Complex(1.0, 0.0)};
    CHECK_THROWS_AS(PureState::from_amplitudes(1, unnormalized), ConfigError);
    const Complex wrong_count[2] = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    CHECK_THROWS_AS(PureState::from_amplitudes(2, wrong_count), ConfigError);
}

TEST_CASE("probabilities are Born weights") {
    const Complex plus[2] = {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)};
    const auto probs = probabilities(PureState::from_amplitudes(1, plus));
    CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-14));

    const auto p11 = probabilities(PureState::basis(2, 3));
    CHECK(p11 == std::vector<double>{0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("probabilities of the entangled network state") {
    // Closed-form oracle: p(a,b) = (cos^2(a)/2, sin^2(a) cos^2(phi/2),
    // cos^2(a)/2, sin^2(a) sin^2(phi/2)) evaluated at alpha=pi/4, phi=0.
    const double alpha = std::numbers::pi / 4.0;
    const auto probs = probabilities(final_state(alpha, 0.0));
    CHECK(probs[0] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(probs[2] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(probs[3] == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("overlap") {
    SUBCASE("particle/wave overlap has modulus |cos(phi)|/sqrt2") {
        CHECK(std::abs(overlap(particle_state(0.0), wave_state(0.0))) ==
              doctest::Approx(kInvSqrt2).epsilon(1e-13));
        // Orthogonal exactly at phi = +-pi/2.
        CHECK(std::abs(overlap(particle_state(std::numbers::pi / 2),
                               wave_state(std::numbers::pi / 2))) <= 1e-12);
        CHECK(std::abs(overlap(particle_state(-std::numbers::pi / 2),
                               wave_state(-std::numbers::pi / 2))) <= 1e-12);
    }
    SUBCASE("self-overlap is 1, dimension mismatch throws") {
        RandomStream rng(11);
        const PureState s = test::random_state(2, rng);
        CHECK(std::abs(overlap(s, s) - Complex(1.0, 0.0)) <= 1e-12);
        CHECK_THROWS_AS(overlap(s, PureState::zero(1)), ConfigError);
    }
    SUBCASE("|overlap| <= 1 on random pairs") {
        RandomStream rng(12);
        for (int trial = 0; trial < 200; ++trial) {
            const PureState a = test::random_state(2, rng);
            const PureState b = test::random_state(2, rng);
            CHECK(std::abs(overlap(a, b)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("projective measurement basics") {
    RandomStream rng(21);

    SUBCASE("|0> measured computationally always yields 0") {
        for (int trial = 0; trial < 50; ++trial) {
            auto result =
                measure(PureState::zero(1), 0, MeasureBasis::Computational,
                        rng);
            CHECK(result.outcome == 0);
            CHECK(std::abs(result.collapsed.amplitude(0) - Complex(1, 0)) <=
                  1e-12);
        }
    }
    SUBCASE("|+> measured diagonally always yields + (bit 0)") {
        const Complex plus[2] = {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)};
        const PureState state = PureState::from_amplitudes(1, plus);
        for (int trial = 0; trial < 50; ++trial) {
            auto result = measure(state, 0, MeasureBasis::Diagonal, rng);
            CHECK(result.outcome == 0);
            CHECK(test::phase_free_distance(result.collapsed, state) <= 1e-12);
        }
    }
    SUBCASE("repeated measurement reproduces the outcome") {
        for (int trial = 0; trial < 100; ++trial) {
            const PureState state = test::random_state(2, rng);
            for (MeasureBasis basis :
                 {MeasureBasis::Computational, MeasureBasis::Diagonal}) {
                auto first = measure(state, 0, basis, rng);
                const auto probs =
                    outcome_probabilities(first.collapsed, 0, basis);
                CHECK(probs[first.outcome] ==
                      doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
    SUBCASE("qubit index must exist") {
        CHECK_THROWS_AS(measure(PureState::zero(1), 1,
                                MeasureBasis::Computational, rng),
                        ConfigError);
    }
}

TEST_CASE("ancilla statistics of the biased network state") {
    // Measuring the ancilla of cos(a)|particle>|0> + sin(a)|wave>|1>
    // computationally yields 1 with probability sin^2(alpha).
    const double alpha = 0.7;
    const auto probs = outcome_probabilities(final_state(alpha, 1.3),
                                             kAncillaQubit,
                                             MeasureBasis::Computational);
    CHECK(probs[1] ==
          doctest::Approx(std::sin(alpha) * std::sin(alpha)).epsilon(1e-13));
}

TEST_CASE("measurement statistics match Born probabilities within 5 sigma") {
    const double alpha = 0.6;
    const PureState state = final_state(alpha, 0.9);
    const double p1 = std::sin(alpha) * std::sin(alpha);
    const int trials = 100000;
    RandomStream rng(31415);
    int ones = 0;
    for (int t = 0; t < trials; ++t) {
        ones += measure(state, kAncillaQubit, MeasureBasis::Computational, rng)
                    .outcome;
    }
    const double sigma = std::sqrt(p1 * (1.0 - p1) / trials);
    CHECK(std::abs(static_cast<double>(ones) / trials - p1) <= 5.0 * sigma);
}

TEST_CASE("reduced density matrix") {
    SUBCASE("product state") {
        const PureState product =
            kron(PureState::basis(1, 0), PureState::basis(1, 1));
        const DensityMatrix rho = reduced_density_matrix(product, 0);
        CHECK(std::abs(rho.entry(0, 0) - Complex(1, 0)) <= 1e-12);
        CHECK(std::abs(rho.entry(1, 1)) <= 1e-12);
    }
    SUBCASE("entangled network state gives the particle/wave mixture") {
        const double phi = 1.1;
        const DensityMatrix rho = reduced_density_matrix(
            final_state(std::numbers::pi / 4.0, phi), kPhotonQubit);
        // Oracle: 1/2 (|particle><particle| + |wave><wave|).
        const DensityMatrix p = pure_density(particle_state(phi));
        const DensityMatrix w = pure_density(wave_state(phi));
        double worst = 0.0;
        for (int r = 0; r < 2; ++r) {
            for (int col = 0; col < 2; ++col) {
                worst = std::max(
                    worst,
                    std::abs(rho.entry(r, col) -
                             0.5 * (p.entry(r, col) + w.entry(r, col))));
            }
        }
        CHECK(worst <= 1e-12);
    }
    SUBCASE("Bell state is maximally mixed on both sides") {
        const Complex bell[4] = {Complex(kInvSqrt2, 0), Complex(0, 0),
                                 Complex(0, 0), Complex(kInvSqrt2, 0)};
        const PureState state = PureState::from_amplitudes(2, bell);
        for (int keep = 0; keep < 2; ++keep) {
            const DensityMatrix rho = reduced_density_matrix(state, keep);
            CHECK(std::abs(rho.entry(0, 0) - Complex(0.5, 0)) <= 1e-12);
            CHECK(std::abs(rho.entry(1, 1) - Complex(0.5, 0)) <= 1e-12);
            CHECK(std::abs(rho.entry(0, 1)) <= 1e-12);
        }
    }
    SUBCASE("partial trace is Hermitian, trace-1, PSD on random states") {
        RandomStream rng(77);
        for (int trial = 0; trial < 1000; ++trial) {
            const PureState state = test::random_state(2, rng);
            const DensityMatrix rho =
                reduced_density_matrix(state, trial % 2);
            CHECK(rho.is_hermitian(1e-12));
            CHECK(std::abs(rho.trace() - Complex(1, 0)) <= 1e-12);
            CHECK(rho.eigenvalues()[0] >= -1e-12);
        }
    }
    SUBCASE("requires two qubits") {
        CHECK_THROWS_AS(reduced_density_matrix(PureState::zero(1), 0),
                        ConfigError);
    }
}
