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

#include "qdc/state.hpp"

#include <cmath>
#include <string>

#include "qdc/detail/state_access.hpp"

namespace qdc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_qubit_count(int qubit_count) {
    if (qubit_count != 1 && qubit_count != 2) {
        throw ConfigError("qubit_count must be 1 or 2, got " +
                          std::to_string(qubit_count));
    }
}

void check_qubit_index(const PureState& state, int qubit) {
    if (qubit < 0 || qubit >= state.qubit_count()) {
        throw ConfigError("qubit index " + std::to_string(qubit) +
                          " out of range for a " +
                          std::to_string(state.qubit_count()) +
                          "-qubit state");
    }
}

// Amplitude pair (index with qubit bit = 0, index with qubit bit = 1) for
// every assignment of the remaining qubits.
struct QubitPair {
    int i0;
    int i1;
};

// At most two pairs for a 2-qubit state.
int qubit_pairs(const PureState& state, int qubit, QubitPair out[2]) {
    const int bit = PureState::bit_of(qubit, state.qubit_count());
    const int stride = 1 << bit;
    int count = 0;
    for (int base = 0; base < state.size(); ++base) {
        if ((base & stride) == 0) {
            out[count++] = {base, base | stride};
        }
    }
    return count;
}

} // namespace

PureState PureState::zero(int qubit_count) {
    return basis(qubit_count, 0);
}

PureState PureState::basis(int qubit_count, int index) {
    check_qubit_count(qubit_count);
    if (index < 0 || index >= (1 << qubit_count)) {
        throw ConfigError("basis index " + std::to_string(index) +
                          " out of range");
    }
    std::array<Complex, 4> amps{};
    amps[index] = Complex(1.0, 0.0);
    return PureState(qubit_count, amps);
}

PureState PureState::from_amplitudes(int qubit_count,
                                     std::span<const Complex> amplitudes) {
    check_qubit_count(qubit_count);
    const std::size_t expected = std::size_t{1} << qubit_count;
    if (amplitudes.size() != expected) {
        throw ConfigError("expected " + std::to_string(expected) +
                          " amplitudes, got " +
                          std::to_string(amplitudes.size()));
    }
    std::array<Complex, 4> amps{};
    double norm2 = 0.0;
    for (std::size_t i = 0; i < expected; ++i) {
        const Complex a = amplitudes[i];
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ConfigError("non-finite amplitude at index " +
                              std::to_string(i));
        }
        amps[i] = a;
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > kTol) {
        throw ConfigError("state is not normalized: |psi|^2 = " +
                          std::to_string(norm2));
    }
    // Scrub residual normalization error so downstream identities hold
    // to kTol.
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return PureState(qubit_count, amps);
}

double PureState::norm() const {
    double norm2 = 0.0;
    for (int i = 0; i < size(); ++i) norm2 += std::norm(amps_[i]);
    return std::sqrt(norm2);
}

PureState kron(const PureState& high, const PureState& low) {
    if (high.qubit_count() + low.qubit_count() > 2) {
        throw ConfigError("kron result would exceed 2 qubits");
    }
    std::array<Complex, 4> amps{};
    for (int i = 0; i < high.size(); ++i) {
        for (int j = 0; j < low.size(); ++j) {
            amps[i * low.size() + j] = high.amplitude(i) * low.amplitude(j);
        }
    }
    return detail::StateAccess::make(high.qubit_count() + low.qubit_count(),
                                     amps);
}

std::vector<double> probabilities(const PureState& state) {
    std::vector<double> probs(static_cast<std::size_t>(state.size()));
    for (int i = 0; i < state.size(); ++i) {
        probs[i] = std::norm(state.amplitude(i));
    }
    return probs;
}

Complex overlap(const PureState& s1, const PureState& s2) {
    if (s1.qubit_count() != s2.qubit_count()) {
        throw ConfigError("overlap requires equal qubit counts");
    }
    Complex acc(0.0, 0.0);
    for (int i = 0; i < s1.size(); ++i) {
        acc += std::conj(s1.amplitude(i)) * s2.amplitude(i);
    }
    return acc;
}

std::array<double, 2> outcome_probabilities(const PureState& state, int qubit,
                                            MeasureBasis basis) {
    check_qubit_index(state, qubit);
    QubitPair pairs[2];
    const int n = qubit_pairs(state, qubit, pairs);
    double p0 = 0.0;
    double p1 = 0.0;
    for (int k = 0; k < n; ++k) {
        const Complex a0 = state.amplitude(pairs[k].i0);
        const Complex a1 = state.amplitude(pairs[k].i1);
        if (basis == MeasureBasis::Computational) {
            p0 += std::norm(a0);
            p1 += std::norm(a1);
        } else {
            p0 += std::norm((a0 + a1) * kInvSqrt2);
            p1 += std::norm((a0 - a1) * kInvSqrt2);
        }
    }
    return {p0, p1};
}

ProjectionResult project(const PureState& state, int qubit, MeasureBasis basis,
                         int outcome) {
    check_qubit_index(state, qubit);
    if (outcome != 0 && outcome != 1) {
        throw ConfigError("measurement outcome must be 0 or 1");
    }
    QubitPair pairs[2];
    const int n = qubit_pairs(state, qubit, pairs);

    std::array<Complex, 4> amps{};
    for (int i = 0; i < state.size(); ++i) amps[i] = state.amplitude(i);

    double weight = 0.0;
    for (int k = 0; k < n; ++k) {
        const Complex a0 = amps[pairs[k].i0];
        const Complex a1 = amps[pairs[k].i1];
        if (basis == MeasureBasis::Computational) {
            if (outcome == 0) {
                amps[pairs[k].i1] = Complex(0.0, 0.0);
                weight += std::norm(a0);
            } else {
                amps[pairs[k].i0] = Complex(0.0, 0.0);
                weight += std::norm(a1);
            }
        } else {
            // |+><+| or |-><-| applied to the (a0, a1) pair.
            const double sign = outcome == 0 ? 1.0 : -1.0;
            const Complex c = 0.5 * (a0 + sign * a1);
            amps[pairs[k].i0] = c;
            amps[pairs[k].i1] = sign * c;
            weight += 2.0 * std::norm(c);
        }
    }

    if (weight <= kTol) {
        throw DegenerateError("conditioning on a zero-probability outcome");
    }
    const double inv = 1.0 / std::sqrt(weight);
    for (auto& a : amps) a *= inv;
    return {weight, detail::StateAccess::make(state.qubit_count(), amps)};
}

MeasureResult measure(const PureState& state, int qubit, MeasureBasis basis,
                      RandomStream& rng) {
    const auto probs = outcome_probabilities(state, qubit, basis);
    const int outcome = rng.uniform01() < probs[0] ? 0 : 1;
    auto projected = project(state, qubit, basis, outcome);
    return {outcome, projected.collapsed};
}

bool DensityMatrix::is_hermitian(double tol) const {
    return std::abs(entry(0, 0).imag()) <= tol &&
           std::abs(entry(1, 1).imag()) <= tol &&
           std::abs(entry(0, 1) - std::conj(entry(1, 0))) <= tol;
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
    const double a = entry(0, 0).real();
    const double d = entry(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double radius =
        std::sqrt(0.25 * (a - d) * (a - d) + std::norm(entry(0, 1)));
    return {mean - radius, mean + radius};
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
    double worst = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            worst = std::max(worst, std::abs(entry(r, c) - other.entry(r, c)));
        }
    }
    return worst;
}

DensityMatrix reduced_density_matrix(const PureState& state, int keep) {
    if (state.qubit_count() != 2) {
        throw ConfigError("partial trace requires a 2-qubit state");
    }
    check_qubit_index(state, keep);
    const int keep_bit = PureState::bit_of(keep, 2);
    const int other_bit = 1 - keep_bit;

    std::array<Complex, 4> m{};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Complex acc(0.0, 0.0);
            for (int t = 0; t < 2; ++t) {
                const int row_index = (r << keep_bit) | (t << other_bit);
                const int col_index = (c << keep_bit) | (t << other_bit);
                acc += state.amplitude(row_index) *
                       std::conj(state.amplitude(col_index));
            }
            m[2 * r + c] = acc;
        }
    }
    return DensityMatrix(m);
}

DensityMatrix pure_density(const PureState& state) {
    if (state.qubit_count() != 1) {
        throw ConfigError("pure_density expects a single-qubit state");
    }
    std::array<Complex, 4> m{};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            m[2 * r + c] =
                state.amplitude(r) * std::conj(state.amplitude(c));
        }
    }
    return DensityMatrix(m);
}

} // namespace qdc
