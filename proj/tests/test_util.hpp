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

#pragma once

#include <cmath>
#include <vector>

#include "qdc/rng.hpp"
#include "qdc/state.hpp"

namespace qdc::test {

/// Haar-ish random normalized state: complex gaussian amplitudes,
/// normalized (Box-Muller from the deterministic stream).
inline PureState random_state(int qubit_count, RandomStream& rng) {
    const int dim = 1 << qubit_count;
    std::vector<Complex> amps(dim);
    double norm2 = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double u1 = 1.0 - rng.uniform01(); // (0, 1]
        const double u2 = rng.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        amps[i] = Complex(r * std::cos(6.283185307179586 * u2),
                          r * std::sin(6.283185307179586 * u2));
        norm2 += std::norm(amps[i]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return PureState::from_amplitudes(qubit_count, amps);
}

/// 1 - |<s1|s2>|: zero iff the states agree up to global phase.
inline double phase_free_distance(const PureState& s1, const PureState& s2) {
    return std::abs(1.0 - std::abs(overlap(s1, s2)));
}

} // namespace qdc::test
