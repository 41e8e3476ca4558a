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

#include <cstdint>
#include <span>
#include <vector>

#include "qdc/gates.hpp"
#include "qdc/state.hpp"

namespace qdc {

/// Wire assignment in the interferometer networks.
inline constexpr int kPhotonQubit = 0;  // high bit of the amplitude index
inline constexpr int kAncillaQubit = 1; // low bit

/// How the second beamsplitter is decided: by a quantum control (a
/// controlled-Hadamard, ancilla measured after the photon) or by a
/// classical control (ancilla measured first, Hadamard applied iff the
/// outcome is 1).
enum class ControlMode { QuantumControl, ClassicalControl };

/// Full description of one experiment run.
struct ExperimentConfig {
    double alpha = 0.0; ///< ancilla bias, radians in [0, pi/2]
    double phi = 0.0;   ///< interferometer phase, radians in [0, 2*pi)
    ControlMode control_mode = ControlMode::QuantumControl;
    MeasureBasis ancilla_basis = MeasureBasis::Computational;
    std::uint64_t shots = 1;
    std::uint64_t seed = 1;

    /// Checks alpha/phi finite and shots >= 1; the angle ranges above are
    /// conventions, not hard limits.
    void validate() const;
};

/// The four joint probabilities p(a,b) of photon outcome a and ancilla
/// outcome b, in basis order (00, 01, 10, 11).
struct JointDistribution {
    double p00 = 0.0;
    double p01 = 0.0;
    double p10 = 0.0;
    double p11 = 0.0;

    std::array<double, 4> as_array() const { return {p00, p01, p10, p11}; }
    double sum() const { return p00 + p01 + p10 + p11; }

    /// Each entry >= -tol and sum == 1 within tol.
    bool is_valid(double tol = kTol) const;

    /// Max entrywise |difference|.
    double max_abs_diff(const JointDistribution& other) const;

    /// Marginal probability of photon outcome 0 (detector D0) and of
    /// ancilla outcome 0.
    double photon_zero_marginal() const { return p00 + p01; }
    double ancilla_zero_marginal() const { return p00 + p10; }
};

struct PatternRow {
    double phi = 0.0;
    double intensity = 0.0;
};

/// Interference pattern over a phase grid plus its visibility
/// (Imax - Imin) / (Imax + Imin).
struct InterferencePattern {
    std::vector<PatternRow> rows;
    double visibility = 0.0;

    static double visibility_from_rows(std::span<const PatternRow> rows);
};

// ---------------------------------------------------------------------
// Closed-form states and statistics
// ---------------------------------------------------------------------

/// (|0> + e^{i phi} |1>) / sqrt2 : no interference, flat intensity 1/2.
PureState particle_state(double phi);

/// e^{i phi/2} (cos(phi/2) |0> - i sin(phi/2) |1>) : full interference.
/// Equals Hadamard . PhaseShift(phi) . Hadamard |0>, global phase kept
/// explicit.
PureState wave_state(double phi);

/// cos(alpha) |particle>|0> + sin(alpha) |wave>|1>.
PureState final_state(double alpha, double phi);

/// Unitary part of the quantum-control network applied to |00>:
/// RotY(2 alpha) on the ancilla, Hadamard and PhaseShift(phi) on the
/// photon, then the controlled-Hadamard. Agrees with final_state up to
/// floating error; exposed so the closed form can be cross-checked
/// against gate-by-gate evolution.
PureState evolve_network(double alpha, double phi);

/// p(a,b) = (cos^2(a)/2, sin^2(a) cos^2(phi/2), cos^2(a)/2,
///           sin^2(a) sin^2(phi/2)).
JointDistribution joint_distribution(double alpha, double phi);

/// Detector-D0 intensity cos^2(alpha)/2 + sin^2(alpha) cos^2(phi/2);
/// equals p00 + p01 of the joint distribution.
double intensity(double alpha, double phi);

/// Analytic visibility of the morphing pattern, sin^2(alpha).
double exact_visibility(double alpha);

/// Exact intensity pattern over `phi_grid`. The grid must be non-empty;
/// phi = 0 and phi = pi (the true extrema) are injected when absent so
/// grid visibility matches the analytic value.
InterferencePattern sweep(double alpha, std::span<const double> phi_grid);

// ---------------------------------------------------------------------
// Post-selection
// ---------------------------------------------------------------------

struct PostselectResult {
    std::array<double, 2> photon_distribution{}; ///< (P(a=0), P(a=1))
    double probability = 0.0;                    ///< weight of the branch
};

/// Photon statistics conditioned on the ancilla outcome in the
/// computational basis: outcome 0 gives (1/2, 1/2) with weight
/// cos^2(alpha), outcome 1 gives (cos^2(phi/2), sin^2(phi/2)) with weight
/// sin^2(alpha). Throws DegenerateError on a zero-probability branch.
PostselectResult postselect(double alpha, double phi, int ancilla_outcome);

enum class DiagonalSign { Plus, Minus };

struct DiagonalPostselectResult {
    PureState photon; ///< normalized cos(a)|particle> +- sin(a)|wave>
    double probability = 0.0;
};

/// Photon state conditioned on measuring the ancilla in the |+->
/// basis; yields the superpositions cos(a)|particle> +- sin(a)|wave>
/// that have no classical analog.
DiagonalPostselectResult diagonal_postselect(double alpha, double phi,
                                             DiagonalSign sign);

// ---------------------------------------------------------------------
// Circuit programs
// ---------------------------------------------------------------------

/// One step of a measurement-capable program.
struct CircuitInstruction {
    enum class Op { ApplyGate, Measure, ConditionalGate };

    Op op = Op::ApplyGate;
    Gate gate = Gate::hadamard(0); ///< for ApplyGate / ConditionalGate
    int qubit = 0;                 ///< for Measure
    MeasureBasis basis = MeasureBasis::Computational;
    int condition_measurement = -1; ///< index into the outcome record
    int condition_value = 1;        ///< apply gate iff outcome equals this
};

/// Ordered gate/measurement program realizing one control mode.
struct CircuitProgram {
    std::vector<CircuitInstruction> instructions;
    int qubit_count = 2;
    int photon_measurement = -1;  ///< outcome-record index of the photon
    int ancilla_measurement = -1; ///< outcome-record index of the ancilla
};

/// Builds the network for `config`:
///  - QuantumControl: RotY(2 alpha) on the ancilla; Hadamard and
///    PhaseShift(phi) on the photon; controlled-Hadamard; measure the
///    photon, then the ancilla (in config.ancilla_basis).
///  - ClassicalControl: RotY(2 alpha); Hadamard and PhaseShift(phi) on
///    the photon; measure the ancilla first; apply Hadamard to the
///    photon iff the outcome was 1; measure the photon. The ancilla
///    basis must be Computational in this mode.
CircuitProgram build_circuit(const ExperimentConfig& config);

struct ShotRecord {
    int photon = 0;
    int ancilla = 0;
};

/// Executes one shot of a program, sampling measurements from `rng`.
ShotRecord run_single_shot(const CircuitProgram& program, RandomStream& rng);

/// Exact outcome distribution of a program, averaging over all
/// measurement branches analytically. For the quantum-control program
/// this reproduces the closed-form joint distribution; for the
/// classical-control program it realizes the deferred-measurement
/// equivalence check.
JointDistribution exact_program_distribution(const CircuitProgram& program);

/// Single shot of the classical-control experiment: measure the ancilla,
/// conditionally insert the second beamsplitter, measure the photon.
/// Requires config.control_mode == ClassicalControl.
ShotRecord classical_control_run(const ExperimentConfig& config,
                                 RandomStream& rng);

} // namespace qdc
