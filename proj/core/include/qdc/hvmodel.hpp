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

#include <optional>
#include <string>
#include <vector>

#include "qdc/experiment.hpp"
#include "qdc/rng.hpp"

namespace qdc {

// ---------------------------------------------------------------------
// Hidden-variable model
//
// The model assumes each photon carries an intrinsic binary label
// lambda in {particle, wave} and decomposes the joint statistics as
//
//   p(a,b) = sum_lambda p(a | b, lambda) p(b | lambda) p(lambda).
//
// Two conditionals are fixed by what "particle" and "wave" mean:
// a particle in an open interferometer (b=0) clicks uniformly, and a
// wave in a closed interferometer (b=1) interferes:
//
//   p(a | b=0, particle) = (1/2, 1/2)
//   p(a | b=1, wave)     = (cos^2(phi/2), sin^2(phi/2))
//
// The five remaining degrees of freedom are the parameters below.
// ---------------------------------------------------------------------

/// Free parameters of the hidden-variable decomposition, all in [0,1].
struct HVParams {
    double x = 0.5; ///< P(a=0 | b=0, lambda=wave)
    double y = 0.5; ///< P(a=0 | b=1, lambda=particle)
    double z = 0.5; ///< P(b=0 | lambda=particle)
    double v = 0.5; ///< P(b=0 | lambda=wave)
    double f = 0.5; ///< P(lambda=particle)

    std::array<double, 5> as_array() const { return {x, y, z, v, f}; }

    /// Throws DomainError unless every entry lies in [0,1].
    void validate() const;
};

/// One experimental setting (ancilla bias alpha, interferometer phase
/// phi). The model parameters carry no alpha or phi dependence, so
/// multi-setting residuals probe setting-independence.
struct Setting {
    double alpha = 0.0;
    double phi = 0.0;

    double cos2_alpha() const;
    double cos2_half_phi() const;
};

/// True when the setting avoids the degenerate values: cos^2(alpha) in
/// {0, 1} collapses the constraint system, and phi in {0, pi, +-pi/2}
/// trivializes or merges solution branches.
bool is_generic(const Setting& setting, double tol = 1e-9);

/// Joint distribution predicted by the hidden-variable decomposition.
/// Valid (nonnegative, normalized) for any params in [0,1]^5; throws
/// DomainError outside the cube.
JointDistribution hv_predict(const HVParams& params, double phi);

/// Max over settings and entries of |hv_predict - joint_distribution|.
double residual(const HVParams& params, std::span<const Setting> settings);

/// Residuals of the factored constraint system equivalent to matching
/// the quantum statistics at one setting:
///   e1 = v (1-f) (x - 1/2)
///   e2 = f (1-z) (y - cos^2(phi/2))
///   e3 = z f + v (1-f) - cos^2(alpha)
struct ConstraintResiduals {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;

    double max_abs() const;
};

ConstraintResiduals constraint_equations(const HVParams& params,
                                         const Setting& setting);

/// The entrywise prediction error and the constraint residuals control
/// each other with these constants: maxE <= kReductionBoundE * maxD and
/// maxD <= kReductionBoundD * maxE, where maxD is the largest entrywise
/// |hv_predict - joint_distribution| and maxE = max(|e1|,|e2|,|e3|).
inline constexpr double kReductionBoundE = 3.0;
inline constexpr double kReductionBoundD = 2.0;

/// Verifies the exact sandwich maxE/kReductionBoundE <= maxD <=
/// kReductionBoundD * maxE (with floating slack); this is the numerical
/// re-derivation of the reduction from statistics matching to the
/// factored system.
bool reduction_bounds_hold(const HVParams& params, const Setting& setting,
                           double slack = 1e-12);

/// True iff [entrywise match within tol] agrees with [maxE within
/// kReductionBoundE * tol]. The two sides are equivalent away from the
/// tolerance boundary by the sandwich above.
bool equivalence_check(const HVParams& params, const Setting& setting,
                       double tol = 1e-9);

// ---------------------------------------------------------------------
// Solution families
// ---------------------------------------------------------------------

/// How a solution family evades or satisfies the constraints.
enum class Branch : unsigned {
    WaveActsAsParticle = 1u << 0,  ///< x = 1/2: waves click uniformly
    ParticleActsAsWave = 1u << 1,  ///< y = cos^2(phi/2): particles interfere
    Superdeterministic = 1u << 2,  ///< v=0, z=1, f=cos^2(alpha)
    DegenerateAlpha = 1u << 3,     ///< only consistent at cos^2(alpha) in {0,1}
    Infeasible = 1u << 4,          ///< residual above tolerance
};

/// Small flag set; solutions sitting in several families keep all tags
/// rather than an arbitrary winner.
class BranchSet {
  public:
    BranchSet() = default;

    void set(Branch b) { bits_ |= static_cast<unsigned>(b); }
    bool test(Branch b) const {
        return (bits_ & static_cast<unsigned>(b)) != 0;
    }
    bool empty() const { return bits_ == 0; }
    bool operator==(const BranchSet&) const = default;

    /// Comma-joined tag names; "unassigned" when empty.
    std::string to_string() const;

  private:
    unsigned bits_ = 0;
};

/// One family of exact solutions of the constraint system at a fixed
/// setting. Pinned coordinates are set; the rest are free, except that
/// families marked `couples_e3` constrain their free coordinates through
/// the ancilla-marginal equation z f + v (1-f) = cos^2(alpha).
struct SolutionFamily {
    std::string name;
    BranchSet tags;
    std::optional<double> x;
    std::optional<double> y;
    std::optional<double> z;
    std::optional<double> v;
    std::optional<double> f;
    bool couples_e3 = false;

    /// Membership test: every pinned coordinate within coord_tol and,
    /// when coupled, |e3| within e3_tol.
    bool contains(const HVParams& params, const Setting& setting,
                  double coord_tol, double e3_tol) const;

    /// Random exact member of the family (residual at machine precision).
    HVParams sample(const Setting& setting, RandomStream& rng) const;
};

struct BranchEnumeration {
    std::vector<SolutionFamily> families;
    bool degenerate_alpha = false;
};

/// Analytic case analysis of the factored system: each of e1, e2
/// vanishes through one of its factors, e3 fixes the ancilla marginal.
/// For generic alpha this yields exactly six families: five carry an
/// inconsistent-behaviour tag (x = 1/2 and/or y = cos^2(phi/2)) and the
/// sixth is the superdeterministic solution v=0, z=1, f=cos^2(alpha)
/// with x, y undetermined. The two factor combinations that force
/// cos^2(alpha) into {0,1} are discarded; at a degenerate alpha the
/// result is flagged degenerate_alpha with no families.
BranchEnumeration enumerate_branches(const Setting& setting,
                                     double tol = 1e-9);

/// A feasible grid point with its residual and family classification
/// (empty = feasible but outside every enumerated family).
struct HVSolution {
    HVParams params;
    double residual = 0.0;
    BranchSet branches;
};

/// Classifies arbitrary params against the enumerated families:
/// Infeasible if residual(params) > tol, otherwise the union of tags of
/// families containing it within coord_tol.
HVSolution classify_params(const HVParams& params, const Setting& setting,
                           double tol, double coord_tol);

struct GridSearchOptions {
    double resolution = 0.05; ///< one of 0.05, 0.02, 0.01
    /// Feasibility cutoff on the residual; defaults to resolution/4
    /// (grid quantization error dominates at coarse resolutions).
    std::optional<double> tol;
    int max_threads = 0; ///< <= 0 picks hardware concurrency
};

/// Brute-force feasibility scan of [0,1]^5: returns every grid point
/// whose residual at `setting` is below the cutoff, classified against
/// the enumerated families with coordinate tolerance 2 * resolution.
/// The grid is partitioned across workers and merged deterministically:
/// results are sorted by residual, then lexicographically by params.
///
/// The scan prunes on |e3| <= 2*tol, which is implied by feasibility
/// (|e3| = |d00 + d10| <= 2 maxD), so pruning returns exactly the
/// brute-force set.
std::vector<HVSolution> grid_search(const Setting& setting,
                                    const GridSearchOptions& options);

std::vector<HVSolution> grid_search(const Setting& setting, double resolution,
                                    std::optional<double> tol = {});

// ---------------------------------------------------------------------
// Multi-setting verdict
// ---------------------------------------------------------------------

inline constexpr const char* kNoConsistentHvModel = "NO_CONSISTENT_HV_MODEL";

struct SettingReport {
    Setting setting;
    double cos2_alpha = 0.0;
    double cos2_half_phi = 0.0;
    double superdeterministic_f = 0.0; ///< equals cos2_alpha
    std::size_t family_count = 0;
};

/// Structured result of the cross-setting analysis.
struct VerdictReport {
    std::vector<SettingReport> per_setting;

    /// Ancilla-marginal obstruction: p(b=0) = z f + v (1-f) is a single
    /// number per model, so settings whose cos^2(alpha) spread is Delta
    /// force a residual of at least Delta/4 on any fixed params. The
    /// only per-setting escape is f tracking cos^2(alpha) -- the
    /// superdeterministic family, in which lambda and the ancilla are
    /// perfectly correlated (p(b=0|particle)=1, p(b=1|wave)=1).
    double marginal_spread = 0.0;
    double marginal_residual_bound = 0.0;

    /// Interference-constraint obstruction: a phi-independent y would
    /// have to equal cos^2(phi_j/2) at every setting, impossible once
    /// two settings disagree; the spread below is the largest such gap.
    double interference_spread = 0.0;

    /// Best fixed params found by a coarse (resolution 0.05) scan,
    /// minimizing the max residual across all settings, with that
    /// residual. Demonstrates the bound above numerically.
    HVParams best_joint_params;
    double best_joint_residual = 0.0;

    std::string verdict; ///< kNoConsistentHvModel

    /// Key-value text rendering, one field per line.
    std::string to_text() const;
};

/// Renders the no-go verdict for a set of measurement settings. Requires
/// at least two distinct cos^2(alpha) values and two distinct
/// cos^2(phi/2) values (ConfigError otherwise); every setting must be
/// generic (DegenerateError otherwise).
VerdictReport verdict(std::span<const Setting> settings, double tol = 1e-9);

} // namespace qdc
