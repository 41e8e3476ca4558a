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

#include "qdc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <vector>

namespace qdc {

namespace {

// Fixed batch size: the batch -> stream mapping must not depend on how
// many workers happen to run, or reruns with a different thread count
// would change the tallies.
constexpr std::uint64_t kShotBatch = 1u << 16;

struct Tally {
    std::array<std::uint64_t, 4> n{};

    void add(const Tally& other) {
        for (int i = 0; i < 4; ++i) n[i] += other.n[i];
    }
};

Tally sample_batch_multinomial(const JointDistribution& dist,
                               std::uint64_t shots, RandomStream rng) {
    const auto p = dist.as_array();
    const double c0 = p[0];
    const double c1 = c0 + p[1];
    const double c2 = c1 + p[2];
    Tally tally;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01();
        int cell = 3;
        if (u < c0) {
            cell = 0;
        } else if (u < c1) {
            cell = 1;
        } else if (u < c2) {
            cell = 2;
        }
        ++tally.n[cell];
    }
    return tally;
}

Tally sample_batch_program(const CircuitProgram& program, std::uint64_t shots,
                           RandomStream rng) {
    Tally tally;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const ShotRecord shot = run_single_shot(program, rng);
        ++tally.n[2 * shot.photon + shot.ancilla];
    }
    return tally;
}

template <typename BatchFn>
Tally run_batches(std::uint64_t shots, const RandomStream& base,
                  int max_threads, BatchFn&& batch_fn) {
    const std::uint64_t batches = (shots + kShotBatch - 1) / kShotBatch;
    unsigned workers = max_threads > 0
                           ? static_cast<unsigned>(max_threads)
                           : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, batches));

    auto batch_shots = [&](std::uint64_t b) {
        return std::min(kShotBatch, shots - b * kShotBatch);
    };

    if (workers <= 1) {
        Tally total;
        for (std::uint64_t b = 0; b < batches; ++b) {
            total.add(batch_fn(batch_shots(b), base.derived(b)));
        }
        return total;
    }

    std::vector<std::future<Tally>> futures;
    futures.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w] {
            Tally local;
            for (std::uint64_t b = w; b < batches; b += workers) {
                local.add(batch_fn(batch_shots(b), base.derived(b)));
            }
            return local;
        }));
    }
    Tally total;
    for (auto& f : futures) total.add(f.get());
    return total;
}

ClickCounts sample_with_stream(const ExperimentConfig& config,
                               const RandomStream& base, int max_threads) {
    config.validate();
    Tally tally;
    if (config.control_mode == ControlMode::QuantumControl) {
        const JointDistribution dist =
            exact_program_distribution(build_circuit(config));
        tally = run_batches(config.shots, base, max_threads,
                            [&](std::uint64_t shots, RandomStream rng) {
                                return sample_batch_multinomial(dist, shots,
                                                                rng);
                            });
    } else {
        const CircuitProgram program = build_circuit(config);
        tally = run_batches(config.shots, base, max_threads,
                            [&](std::uint64_t shots, RandomStream rng) {
                                return sample_batch_program(program, shots,
                                                            rng);
                            });
    }
    return {tally.n[0], tally.n[1], tally.n[2], tally.n[3],
            config.shots,  config.seed, config.control_mode};
}

} // namespace

ClickCounts sample_clicks(const ExperimentConfig& config, int max_threads) {
    return sample_with_stream(config, RandomStream(config.seed), max_threads);
}

JointDistribution empirical_distribution(const ClickCounts& counts) {
    if (counts.shots < 1) {
        throw ConfigError("empirical_distribution requires shots >= 1");
    }
    const double inv = 1.0 / static_cast<double>(counts.shots);
    return {static_cast<double>(counts.n00) * inv,
            static_cast<double>(counts.n01) * inv,
            static_cast<double>(counts.n10) * inv,
            static_cast<double>(counts.n11) * inv};
}

GoodnessOfFit goodness_of_fit(const ClickCounts& counts,
                              const JointDistribution& expected) {
    const auto observed = counts.as_array();
    const auto p = expected.as_array();
    const double shots = static_cast<double>(counts.shots);

    bool zero_cell_violated = false;
    double chi_square = 0.0;
    double pooled_observed = 0.0;
    double pooled_expected = 0.0;
    int cells = 0;
    bool pooled = false;

    for (int i = 0; i < 4; ++i) {
        const double e = p[i] * shots;
        if (p[i] <= 0.0) {
            // A structurally empty cell: any click there falsifies the
            // model outright.
            if (observed[i] > 0) zero_cell_violated = true;
            continue;
        }
        if (e < kPoolingThreshold) {
            pooled = true;
            pooled_observed += static_cast<double>(observed[i]);
            pooled_expected += e;
            continue;
        }
        const double d = static_cast<double>(observed[i]) - e;
        chi_square += d * d / e;
        ++cells;
    }
    if (pooled && pooled_expected > 0.0) {
        const double d = pooled_observed - pooled_expected;
        chi_square += d * d / pooled_expected;
        ++cells;
    }

    GoodnessOfFit fit;
    fit.chi_square = chi_square;
    fit.degrees_of_freedom = std::max(0, cells - 1);
    fit.threshold = kChiSquare999Quantile[fit.degrees_of_freedom];
    fit.pass = !zero_cell_violated &&
               (fit.degrees_of_freedom == 0 ||
                fit.chi_square <= fit.threshold);
    return fit;
}

InterferencePattern sampled_sweep(double alpha,
                                  std::span<const double> phi_grid,
                                  std::uint64_t shots_per_point,
                                  std::uint64_t seed) {
    if (phi_grid.empty()) {
        throw ConfigError("sampled_sweep requires a non-empty phi grid");
    }
    if (shots_per_point < 100) {
        throw ConfigError("sampled_sweep requires shots_per_point >= 100");
    }
    const RandomStream base(seed);
    InterferencePattern pattern;
    pattern.rows.reserve(phi_grid.size());
    for (std::size_t i = 0; i < phi_grid.size(); ++i) {
        ExperimentConfig config;
        config.alpha = alpha;
        config.phi = phi_grid[i];
        config.control_mode = ControlMode::QuantumControl;
        config.shots = shots_per_point;
        config.seed = seed;
        const ClickCounts counts =
            sample_with_stream(config, base.derived(i), 0);
        const double estimate =
            static_cast<double>(counts.n00 + counts.n01) /
            static_cast<double>(shots_per_point);
        pattern.rows.push_back({phi_grid[i], estimate});
    }
    pattern.visibility =
        InterferencePattern::visibility_from_rows(pattern.rows);
    return pattern;
}

} // namespace qdc
