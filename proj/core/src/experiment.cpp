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

#include "qdc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdc/detail/state_access.hpp"

namespace qdc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kPi = std::numbers::pi;

// Branch weights below this are treated as exactly zero when enumerating
// measurement outcomes analytically.
constexpr double kBranchCutoff = 1e-15;

} // namespace

void ExperimentConfig::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(phi)) {
        throw ConfigError("alpha and phi must be finite");
    }
    if (shots < 1) {
        throw ConfigError("shots must be >= 1");
    }
}

bool JointDistribution::is_valid(double tol) const {
    for (double p : as_array()) {
        if (!(p >= -tol)) return false;
    }
    return std::abs(sum() - 1.0) <= tol;
}

double JointDistribution::max_abs_diff(const JointDistribution& other) const {
    const auto a = as_array();
    const auto b = other.as_array();
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

double InterferencePattern::visibility_from_rows(
    std::span<const PatternRow> rows) {
    double lo = rows.front().intensity;
    double hi = lo;
    for (const auto& row : rows) {
        lo = std::min(lo, row.intensity);
        hi = std::max(hi, row.intensity);
    }
    return (hi - lo) / (hi + lo);
}

PureState particle_state(double phi) {
    const std::array<Complex, 4> amps = {Complex(kInvSqrt2, 0.0),
                                         std::polar(kInvSqrt2, phi),
                                         Complex(0, 0), Complex(0, 0)};
    return detail::StateAccess::make(1, amps);
}

PureState wave_state(double phi) {
    const Complex global = std::polar(1.0, 0.5 * phi);
    const double half = 0.5 * phi;
    const std::array<Complex, 4> amps = {
        global * std::cos(half), global * Complex(0.0, -std::sin(half)),
        Complex(0, 0), Complex(0, 0)};
    return detail::StateAccess::make(1, amps);
}

PureState final_state(double alpha, double phi) {
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const PureState particle = particle_state(phi);
    const PureState wave = wave_state(phi);
    // index = 2*a + b with b the ancilla bit
    const std::array<Complex, 4> amps = {
        ca * particle.amplitude(0), sa * wave.amplitude(0),
        ca * particle.amplitude(1), sa * wave.amplitude(1)};
    return detail::StateAccess::make(2, amps);
}

PureState evolve_network(double alpha, double phi) {
    PureState state = PureState::zero(2);
    state = apply_gate(state, Gate::rot_y(2.0 * alpha, kAncillaQubit));
    state = apply_gate(state, Gate::hadamard(kPhotonQubit));
    state = apply_gate(state, Gate::phase_shift(phi, kPhotonQubit));
    state = apply_gate(state,
                       Gate::controlled_hadamard(kAncillaQubit, kPhotonQubit));
    return state;
}

JointDistribution joint_distribution(double alpha, double phi) {
    const double ca2 = std::cos(alpha) * std::cos(alpha);
    const double sa2 = std::sin(alpha) * std::sin(alpha);
    const double c = std::cos(0.5 * phi) * std::cos(0.5 * phi);
    const double s = std::sin(0.5 * phi) * std::sin(0.5 * phi);
    return {0.5 * ca2, sa2 * c, 0.5 * ca2, sa2 * s};
}

double intensity(double alpha, double phi) {
    const double ca2 = std::cos(alpha) * std::cos(alpha);
    const double sa2 = std::sin(alpha) * std::sin(alpha);
    const double c = std::cos(0.5 * phi) * std::cos(0.5 * phi);
    return 0.5 * ca2 + sa2 * c;
}

double exact_visibility(double alpha) {
    return std::sin(alpha) * std::sin(alpha);
}

InterferencePattern sweep(double alpha, std::span<const double> phi_grid) {
    if (phi_grid.empty()) {
        throw ConfigError("sweep requires a non-empty phi grid");
    }
    std::vector<double> grid(phi_grid.begin(), phi_grid.end());
    // The pattern's extrema sit at phi = 0 and phi = pi; inject them so
    // grid visibility is exact regardless of the caller's grid.
    for (double extremum : {0.0, kPi}) {
        const bool present =
            std::any_of(grid.begin(), grid.end(), [&](double p) {
                return std::abs(p - extremum) <= kTol;
            });
        if (!present) grid.push_back(extremum);
    }
    std::sort(grid.begin(), grid.end());

    InterferencePattern pattern;
    pattern.rows.reserve(grid.size());
    for (double phi : grid) {
        pattern.rows.push_back({phi, intensity(alpha, phi)});
    }
    pattern.visibility =
        InterferencePattern::visibility_from_rows(pattern.rows);
    return pattern;
}

PostselectResult postselect(double alpha, double phi, int ancilla_outcome) {
    if (ancilla_outcome != 0 && ancilla_outcome != 1) {
        throw ConfigError("ancilla outcome must be 0 or 1");
    }
    const auto projected = project(final_state(alpha, phi), kAncillaQubit,
                                   MeasureBasis::Computational,
                                   ancilla_outcome);
    // Ancilla collapsed: the photon distribution is the remaining marginal.
    const auto probs = probabilities(projected.collapsed);
    return {{probs[0] + probs[1], probs[2] + probs[3]}, projected.probability};
}

DiagonalPostselectResult diagonal_postselect(double alpha, double phi,
                                             DiagonalSign sign) {
    const int outcome = sign == DiagonalSign::Plus ? 0 : 1;
    const auto projected = project(final_state(alpha, phi), kAncillaQubit,
                                   MeasureBasis::Diagonal, outcome);
    // The collapsed state factorizes as |photon> (x) |+->; contract the
    // ancilla against its basis vector to recover the photon factor.
    const double anc_sign = sign == DiagonalSign::Plus ? 1.0 : -1.0;
    std::array<Complex, 4> photon_amps{};
    for (int a = 0; a < 2; ++a) {
        photon_amps[a] = kInvSqrt2 * (projected.collapsed.amplitude(2 * a) +
                                      anc_sign *
                                          projected.collapsed.amplitude(
                                              2 * a + 1));
    }
    return {detail::StateAccess::make(1, photon_amps), projected.probability};
}

CircuitProgram build_circuit(const ExperimentConfig& config) {
    config.validate();
    CircuitProgram program;
    program.qubit_count = 2;

    using Op = CircuitInstruction::Op;
    auto gate_step = [](const Gate& g) {
        CircuitInstruction in;
        in.op = Op::ApplyGate;
        in.gate = g;
        return in;
    };
    auto measure_step = [](int qubit, MeasureBasis basis) {
        CircuitInstruction in;
        in.op = Op::Measure;
        in.qubit = qubit;
        in.basis = basis;
        return in;
    };

    auto& ins = program.instructions;
    ins.push_back(gate_step(Gate::rot_y(2.0 * config.alpha, kAncillaQubit)));
    ins.push_back(gate_step(Gate::hadamard(kPhotonQubit)));
    ins.push_back(gate_step(Gate::phase_shift(config.phi, kPhotonQubit)));

    if (config.control_mode == ControlMode::QuantumControl) {
        ins.push_back(gate_step(
            Gate::controlled_hadamard(kAncillaQubit, kPhotonQubit)));
        ins.push_back(
            measure_step(kPhotonQubit, MeasureBasis::Computational));
        program.photon_measurement = 0;
        ins.push_back(measure_step(kAncillaQubit, config.ancilla_basis));
        program.ancilla_measurement = 1;
    } else {
        if (config.ancilla_basis != MeasureBasis::Computational) {
            throw ConfigError(
                "classical control reads the ancilla in the computational "
                "basis");
        }
        // The ancilla is measured before the photon's second beamsplitter.
        ins.push_back(
            measure_step(kAncillaQubit, MeasureBasis::Computational));
        program.ancilla_measurement = 0;
        CircuitInstruction conditional;
        conditional.op = Op::ConditionalGate;
        conditional.gate = Gate::hadamard(kPhotonQubit);
        conditional.condition_measurement = 0;
        conditional.condition_value = 1;
        ins.push_back(conditional);
        ins.push_back(
            measure_step(kPhotonQubit, MeasureBasis::Computational));
        program.photon_measurement = 1;
    }
    return program;
}

ShotRecord run_single_shot(const CircuitProgram& program, RandomStream& rng) {
    PureState state = PureState::zero(program.qubit_count);
    std::vector<int> outcomes;
    outcomes.reserve(2);

    for (const auto& in : program.instructions) {
        switch (in.op) {
            case CircuitInstruction::Op::ApplyGate:
                state = apply_gate(state, in.gate);
                break;
            case CircuitInstruction::Op::Measure: {
                auto result = measure(state, in.qubit, in.basis, rng);
                outcomes.push_back(result.outcome);
                state = result.collapsed;
                break;
            }
            case CircuitInstruction::Op::ConditionalGate:
                if (outcomes.at(in.condition_measurement) ==
                    in.condition_value) {
                    state = apply_gate(state, in.gate);
                }
                break;
        }
    }
    return {outcomes.at(program.photon_measurement),
            outcomes.at(program.ancilla_measurement)};
}

namespace {

void enumerate_branches_rec(const CircuitProgram& program, std::size_t step,
                            const PureState& state, double weight,
                            std::vector<int>& outcomes,
                            std::array<double, 4>& joint) {
    if (step == program.instructions.size()) {
        const int a = outcomes.at(program.photon_measurement);
        const int b = outcomes.at(program.ancilla_measurement);
        joint[2 * a + b] += weight;
        return;
    }
    const auto& in = program.instructions[step];
    switch (in.op) {
        case CircuitInstruction::Op::ApplyGate:
            enumerate_branches_rec(program, step + 1,
                                   apply_gate(state, in.gate), weight,
                                   outcomes, joint);
            break;
        case CircuitInstruction::Op::ConditionalGate: {
            const bool fire = outcomes.at(in.condition_measurement) ==
                              in.condition_value;
            enumerate_branches_rec(
                program, step + 1,
                fire ? apply_gate(state, in.gate) : state, weight, outcomes,
                joint);
            break;
        }
        case CircuitInstruction::Op::Measure: {
            const auto probs = outcome_probabilities(state, in.qubit,
                                                     in.basis);
            for (int outcome = 0; outcome < 2; ++outcome) {
                if (probs[outcome] <= kBranchCutoff) continue;
                auto projected = project(state, in.qubit, in.basis, outcome);
                outcomes.push_back(outcome);
                enumerate_branches_rec(program, step + 1, projected.collapsed,
                                       weight * probs[outcome], outcomes,
                                       joint);
                outcomes.pop_back();
            }
            break;
        }
    }
}

} // namespace

JointDistribution exact_program_distribution(const CircuitProgram& program) {
    std::array<double, 4> joint{};
    std::vector<int> outcomes;
    enumerate_branches_rec(program, 0, PureState::zero(program.qubit_count),
                           1.0, outcomes, joint);
    return {joint[0], joint[1], joint[2], joint[3]};
}

ShotRecord classical_control_run(const ExperimentConfig& config,
                                 RandomStream& rng) {
    if (config.control_mode != ControlMode::ClassicalControl) {
        throw ConfigError(
            "classical_control_run requires ClassicalControl mode");
    }
    return run_single_shot(build_circuit(config), rng);
}

} // namespace qdc
