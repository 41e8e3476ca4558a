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
#include <complex>
#include <span>
#include <vector>

#include "qdc/errors.hpp"
#include "qdc/rng.hpp"

namespace qdc {

using Complex = std::complex<double>;

/// Tolerance for exact-math identities (normalization, unitarity,
/// hermiticity). Double precision leaves ample headroom at dimension 4;
/// statistical checks use explicit sigma bounds instead.
inline constexpr double kTol = 1e-12;

namespace detail {
struct StateAccess;
}

/// Measurement basis for a single qubit. Diagonal means projection onto
/// |+> = (|0>+|1>)/sqrt2 and |-> = (|0>-|1>)/sqrt2; outcome bit 0 maps to
/// |+> and outcome bit 1 to |->.
enum class MeasureBasis { Computational, Diagonal };

/// Normalized pure state of 1 or 2 qubits, dense amplitudes.
///
/// Index convention (the single source of truth for all index math in
/// this library): qubit 0 is the MOST significant bit of the amplitude
/// index. For two qubits the basis order is |00>, |01>, |10>, |11> with
/// qubit 0 as the high bit, i.e. index = 2*bit(qubit0) + bit(qubit1).
/// The experiment layer puts the photon on qubit 0 and the ancilla on
/// qubit 1, so joint distributions read off amplitudes in (a,b) order.
///
/// States carry their global phase; physical comparisons go through
/// |overlap| rather than componentwise equality.
class PureState {
  public:
    /// |0...0> on `qubit_count` qubits (1 or 2).
    static PureState zero(int qubit_count);

    /// Computational basis state |index> on `qubit_count` qubits.
    static PureState basis(int qubit_count, int index);

    /// Builds a state from raw amplitudes. Validates the dimension, that
    /// every entry is finite, and that the norm is 1 within kTol.
    static PureState from_amplitudes(int qubit_count,
                                     std::span<const Complex> amplitudes);

    int qubit_count() const { return qubit_count_; }
    int size() const { return 1 << qubit_count_; }

    Complex amplitude(int index) const { return amps_[index]; }
    std::span<const Complex> amplitudes() const {
        return {amps_.data(), static_cast<std::size_t>(size())};
    }

    double norm() const;

    /// Bit position of `qubit` within an amplitude index.
    static int bit_of(int qubit, int qubit_count) {
        return qubit_count - 1 - qubit;
    }

  private:
    friend struct detail::StateAccess;

    PureState(int qubit_count, std::array<Complex, 4> amps)
        : qubit_count_(qubit_count), amps_(amps) {}

    int qubit_count_;
    std::array<Complex, 4> amps_{};
};

/// Tensor product; `high` occupies the more significant bits.
PureState kron(const PureState& high, const PureState& low);

/// Born-rule probabilities |amplitude|^2, in index order.
std::vector<double> probabilities(const PureState& state);

/// Inner product <s1|s2>. States must have equal qubit counts.
Complex overlap(const PureState& s1, const PureState& s2);

/// Probabilities of outcomes (0, 1) when measuring `qubit` in `basis`.
std::array<double, 2> outcome_probabilities(const PureState& state, int qubit,
                                            MeasureBasis basis);

struct ProjectionResult {
    double probability = 0.0; ///< Born weight of the requested outcome.
    PureState collapsed;      ///< Renormalized post-measurement state.
};

/// Projects `qubit` onto the given outcome of `basis` and renormalizes.
/// Throws DegenerateError if the outcome has probability below kTol.
ProjectionResult project(const PureState& state, int qubit, MeasureBasis basis,
                         int outcome);

struct MeasureResult {
    int outcome = 0;
    PureState collapsed;
};

/// Samples a measurement of `qubit` in `basis` with Born probabilities
/// (outcome 0 is chosen when the uniform draw falls below p0) and returns
/// the collapsed, renormalized state.
MeasureResult measure(const PureState& state, int qubit, MeasureBasis basis,
                      RandomStream& rng);

/// 2x2 density matrix, row-major.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(std::array<Complex, 4> entries) : m_(entries) {}

    Complex entry(int row, int col) const { return m_[2 * row + col]; }
    Complex trace() const { return m_[0] + m_[3]; }

    bool is_hermitian(double tol = kTol) const;

    /// Eigenvalues of the Hermitian part, ascending.
    std::array<double, 2> eigenvalues() const;

    /// Max entrywise |difference|.
    double max_abs_diff(const DensityMatrix& other) const;

  private:
    std::array<Complex, 4> m_{};
};

/// Partial trace of a 2-qubit pure state onto the kept qubit.
DensityMatrix reduced_density_matrix(const PureState& state, int keep);

/// |psi><psi| of a single-qubit state.
DensityMatrix pure_density(const PureState& state);

} // namespace qdc
