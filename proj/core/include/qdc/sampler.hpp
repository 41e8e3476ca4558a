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

#include "qdc/experiment.hpp"

namespace qdc {

/// Detector click tallies for one run. Counts are indexed by (photon
/// outcome a, ancilla outcome b); n01 is a=0, b=1.
struct ClickCounts {
    std::uint64_t n00 = 0;
    std::uint64_t n01 = 0;
    std::uint64_t n10 = 0;
    std::uint64_t n11 = 0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    ControlMode mode = ControlMode::QuantumControl;

    std::uint64_t total() const { return n00 + n01 + n10 + n11; }
    std::array<std::uint64_t, 4> as_array() const {
        return {n00, n01, n10, n11};
    }
};

/// Pearson chi-square verdict at the 0.001 significance level.
struct GoodnessOfFit {
    double chi_square = 0.0;
    int degrees_of_freedom = 0;
    double threshold = 0.0; ///< 99.9% quantile for the effective dof
    bool pass = false;
};

/// 99.9% chi-square quantiles by degrees of freedom (0..3). A 4-cell
/// joint distribution never needs more. Values from the standard
/// chi-square inverse CDF:
///   df=1: 10.827566170662733
///   df=2: 13.815510557964274
///   df=3: 16.266236196238129
inline constexpr std::array<double, 4> kChiSquare999Quantile = {
    0.0, 10.827566170662733, 13.815510557964274, 16.266236196238129};

/// Cells with expected count below this are pooled before the test.
inline constexpr double kPoolingThreshold = 5.0;

/// Samples detector clicks for `config`.
///
/// QuantumControl draws shots directly from the exact program
/// distribution (multinomially identical to per-shot collapse and far
/// faster). ClassicalControl executes every shot through the mid-circuit
/// measurement path so the two samplers cross-check each other.
///
/// Shots are split into fixed-size batches, each driven by a stream
/// derived from (seed, batch index); batch results merge by count
/// addition, so the tallies do not depend on the number of worker
/// threads. `max_threads` <= 0 picks the hardware concurrency.
ClickCounts sample_clicks(const ExperimentConfig& config, int max_threads = 0);

/// Empirical joint distribution count/shots.
JointDistribution empirical_distribution(const ClickCounts& counts);

/// Pearson chi-square of `counts` against `expected`. Zero-probability
/// cells must have zero counts (otherwise the test fails outright) and
/// are excluded from the statistic; cells with expected count below
/// kPoolingThreshold are pooled into one. Passes iff the statistic is
/// below the 99.9% quantile for the effective degrees of freedom.
GoodnessOfFit goodness_of_fit(const ClickCounts& counts,
                              const JointDistribution& expected);

/// Monte Carlo interference pattern: intensity estimated as empirical
/// P(a=0) at every grid phase, visibility from the empirical extrema.
/// Every grid point uses an independent stream derived from (seed, point
/// index). Requires shots_per_point >= 100 and a non-empty grid.
InterferencePattern sampled_sweep(double alpha,
                                  std::span<const double> phi_grid,
                                  std::uint64_t shots_per_point,
                                  std::uint64_t seed);

} // namespace qdc
