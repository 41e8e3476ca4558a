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

#include <array>
#include <optional>

#include "qdc/state.hpp"

namespace qdc {

/// Dense 2x2 complex matrix, row-major.
struct Matrix2 {
    std::array<Complex, 4> m{};

    Complex operator()(int row, int col) const { return m[2 * row + col]; }

    Matrix2 adjoint() const;
    Matrix2 times(const Matrix2& rhs) const;

    /// U * Udagger == I within tol.
    bool is_unitary(double tol = kTol) const;

    /// (1/sqrt2) [[1, 1], [1, -1]]
    static Matrix2 hadamard();
    /// diag(1, e^{i phi})
    static Matrix2 phase_shift(double phi);
    /// [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]
    static Matrix2 rot_y(double theta);
    static Matrix2 identity();
};

/// Gate in the interferometer networks: Hadamard plays the beamsplitter,
/// PhaseShift the tunable phase, RotY the ancilla preparation, and
/// ControlledHadamard the beamsplitter that is present or absent
/// depending on the control qubit.
class Gate {
  public:
    enum class Kind { Hadamard, PhaseShift, RotY, ControlledHadamard };

    static Gate hadamard(int target);
    static Gate phase_shift(double phi, int target);
    static Gate rot_y(double theta, int target);
    static Gate controlled_hadamard(int control, int target);

    Kind kind() const { return kind_; }
    int target() const { return target_; }
    std::optional<int> control() const { return control_; }
    double angle() const { return angle_; }

    /// The 2x2 acting on the target (the controlled variant applies this
    /// when the control bit is 1).
    Matrix2 local_matrix() const;

  private:
    Gate(Kind kind, double angle, int target, std::optional<int> control);

    Kind kind_;
    double angle_;
    int target_;
    std::optional<int> control_;
};

/// Applies `matrix` to `target`, restricted to the control bit being 1
/// when `control` is set. Validates indices against the state.
PureState apply_local_matrix(const PureState& state, const Matrix2& matrix,
                             int target, std::optional<int> control = {});

/// Applies a gate; linear in the input amplitudes and norm-preserving.
PureState apply_gate(const PureState& state, const Gate& gate);

/// Applies the inverse (adjoint) of a gate.
PureState apply_gate_adjoint(const PureState& state, const Gate& gate);

} // namespace qdc
