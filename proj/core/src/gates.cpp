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

#include "qdc/gates.hpp"

#include <cmath>
#include <string>

#include "qdc/detail/state_access.hpp"

namespace qdc {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

Matrix2 Matrix2::adjoint() const {
    return Matrix2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]),
                    std::conj(m[3])}};
}

Matrix2 Matrix2::times(const Matrix2& rhs) const {
    Matrix2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.m[2 * r + c] = (*this)(r, 0) * rhs(0, c) +
                               (*this)(r, 1) * rhs(1, c);
        }
    }
    return out;
}

bool Matrix2::is_unitary(double tol) const {
    const Matrix2 prod = times(adjoint());
    const Matrix2 id = identity();
    for (int i = 0; i < 4; ++i) {
        if (std::abs(prod.m[i] - id.m[i]) > tol) return false;
    }
    return true;
}

Matrix2 Matrix2::hadamard() {
    return Matrix2{{Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0),
                    Complex(kInvSqrt2, 0), Complex(-kInvSqrt2, 0)}};
}

Matrix2 Matrix2::phase_shift(double phi) {
    return Matrix2{{Complex(1, 0), Complex(0, 0), Complex(0, 0),
                    std::polar(1.0, phi)}};
}

Matrix2 Matrix2::rot_y(double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return Matrix2{{Complex(c, 0), Complex(-s, 0), Complex(s, 0),
                    Complex(c, 0)}};
}

Matrix2 Matrix2::identity() {
    return Matrix2{{Complex(1, 0), Complex(0, 0), Complex(0, 0),
                    Complex(1, 0)}};
}

Gate::Gate(Kind kind, double angle, int target, std::optional<int> control)
    : kind_(kind), angle_(angle), target_(target), control_(control) {
    if (!std::isfinite(angle_)) {
        throw ConfigError("gate angle must be finite");
    }
}

Gate Gate::hadamard(int target) {
    return Gate(Kind::Hadamard, 0.0, target, std::nullopt);
}

Gate Gate::phase_shift(double phi, int target) {
    return Gate(Kind::PhaseShift, phi, target, std::nullopt);
}

Gate Gate::rot_y(double theta, int target) {
    return Gate(Kind::RotY, theta, target, std::nullopt);
}

Gate Gate::controlled_hadamard(int control, int target) {
    return Gate(Kind::ControlledHadamard, 0.0, target, control);
}

Matrix2 Gate::local_matrix() const {
    switch (kind_) {
        case Kind::Hadamard:
        case Kind::ControlledHadamard:
            return Matrix2::hadamard();
        case Kind::PhaseShift:
            return Matrix2::phase_shift(angle_);
        case Kind::RotY:
            return Matrix2::rot_y(angle_);
    }
    throw ConfigError("unknown gate kind");
}

PureState apply_local_matrix(const PureState& state, const Matrix2& matrix,
                             int target, std::optional<int> control) {
    const int qubit_count = state.qubit_count();
    if (target < 0 || target >= qubit_count) {
        throw ConfigError("gate target " + std::to_string(target) +
                          " out of range");
    }
    if (control) {
        if (*control < 0 || *control >= qubit_count) {
            throw ConfigError("gate control " + std::to_string(*control) +
                              " out of range");
        }
        if (*control == target) {
            throw ConfigError("gate control and target must differ");
        }
    }

    const int target_stride = 1 << PureState::bit_of(target, qubit_count);
    const int control_mask =
        control ? (1 << PureState::bit_of(*control, qubit_count)) : 0;

    std::array<Complex, 4> amps{};
    for (int i = 0; i < state.size(); ++i) amps[i] = state.amplitude(i);

    for (int i0 = 0; i0 < state.size(); ++i0) {
        if ((i0 & target_stride) != 0) continue;
        if (control_mask != 0 && (i0 & control_mask) == 0) continue;
        const int i1 = i0 | target_stride;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = matrix(0, 0) * a0 + matrix(0, 1) * a1;
        amps[i1] = matrix(1, 0) * a0 + matrix(1, 1) * a1;
    }
    return detail::StateAccess::make(qubit_count, amps);
}

PureState apply_gate(const PureState& state, const Gate& gate) {
    return apply_local_matrix(state, gate.local_matrix(), gate.target(),
                              gate.control());
}

PureState apply_gate_adjoint(const PureState& state, const Gate& gate) {
    return apply_local_matrix(state, gate.local_matrix().adjoint(),
                              gate.target(), gate.control());
}

} // namespace qdc
