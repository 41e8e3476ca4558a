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

#include "qdc/hvmodel.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace qdc {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// hv_predict with cos^2(phi/2) precomputed and no domain check; the hot
// path for grid scans.
JointDistribution hv_predict_with_c(const HVParams& params, double c) {
    const double wp = params.f;
    const double ww = 1.0 - params.f;
    const double open_w = params.v * ww;    // weight of (b=0, wave)
    const double closed_p = (1.0 - params.z) * wp; // weight of (b=1, particle)
    return {0.5 * params.z * wp + params.x * open_w,
            params.y * closed_p + c * (1.0 - params.v) * ww,
            0.5 * params.z * wp + (1.0 - params.x) * open_w,
            (1.0 - params.y) * closed_p + (1.0 - c) * (1.0 - params.v) * ww};
}

double max_entrywise_diff(const HVParams& params, const Setting& setting) {
    return hv_predict_with_c(params, setting.cos2_half_phi())
        .max_abs_diff(joint_distribution(setting.alpha, setting.phi));
}

} // namespace

void HVParams::validate() const {
    for (double p : as_array()) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DomainError("hidden-variable parameters must lie in [0,1]");
        }
    }
}

double Setting::cos2_alpha() const {
    const double c = std::cos(alpha);
    return c * c;
}

double Setting::cos2_half_phi() const {
    const double c = std::cos(0.5 * phi);
    return c * c;
}

bool is_generic(const Setting& setting, double tol) {
    const double a2 = setting.cos2_alpha();
    if (near(a2, 0.0, tol) || near(a2, 1.0, tol)) return false;
    const double c = setting.cos2_half_phi();
    // phi in {0, pi} puts c at {1, 0}; phi = +-pi/2 puts c at 1/2, where
    // the x = 1/2 and y = c branches coincide.
    return !near(c, 0.0, tol) && !near(c, 1.0, tol) && !near(c, 0.5, tol);
}

JointDistribution hv_predict(const HVParams& params, double phi) {
    params.validate();
    // p(a,b) = sum_lambda p(a|b,lambda) p(b|lambda) p(lambda), with the
    // particle/open and wave/closed conditionals fixed.
    const double c = std::cos(0.5 * phi) * std::cos(0.5 * phi);
    return hv_predict_with_c(params, c);
}

double residual(const HVParams& params, std::span<const Setting> settings) {
    if (settings.empty()) {
        throw ConfigError("residual requires at least one setting");
    }
    double worst = 0.0;
    for (const auto& setting : settings) {
        worst = std::max(worst, max_entrywise_diff(params, setting));
    }
    return worst;
}

double ConstraintResiduals::max_abs() const {
    return std::max({std::abs(e1), std::abs(e2), std::abs(e3)});
}

ConstraintResiduals constraint_equations(const HVParams& params,
                                         const Setting& setting) {
    const double c = setting.cos2_half_phi();
    return {
        params.v * (1.0 - params.f) * (params.x - 0.5),
        params.f * (1.0 - params.z) * (params.y - c),
        params.z * params.f + params.v * (1.0 - params.f) -
            setting.cos2_alpha(),
    };
}

bool reduction_bounds_hold(const HVParams& params, const Setting& setting,
                           double slack) {
    const double max_d = max_entrywise_diff(params, setting);
    const double max_e = constraint_equations(params, setting).max_abs();
    return max_e <= kReductionBoundE * max_d + slack &&
           max_d <= kReductionBoundD * max_e + slack;
}

bool equivalence_check(const HVParams& params, const Setting& setting,
                       double tol) {
    const bool statistics_match = max_entrywise_diff(params, setting) < tol;
    const bool constraints_vanish =
        constraint_equations(params, setting).max_abs() <
        kReductionBoundE * tol;
    return statistics_match == constraints_vanish;
}

std::string BranchSet::to_string() const {
    if (empty()) return "unassigned";
    std::string out;
    auto append = [&](Branch b, const char* name) {
        if (test(b)) {
            if (!out.empty()) out += ",";
            out += name;
        }
    };
    append(Branch::WaveActsAsParticle, "wave-acts-as-particle");
    append(Branch::ParticleActsAsWave, "particle-acts-as-wave");
    append(Branch::Superdeterministic, "superdeterministic");
    append(Branch::DegenerateAlpha, "degenerate-alpha");
    append(Branch::Infeasible, "infeasible");
    return out;
}

bool SolutionFamily::contains(const HVParams& params, const Setting& setting,
                              double coord_tol, double e3_tol) const {
    const auto pinned_ok = [&](const std::optional<double>& pin, double val) {
        return !pin || std::abs(val - *pin) <= coord_tol;
    };
    if (!pinned_ok(x, params.x) || !pinned_ok(y, params.y) ||
        !pinned_ok(z, params.z) || !pinned_ok(v, params.v) ||
        !pinned_ok(f, params.f)) {
        return false;
    }
    if (couples_e3) {
        const double e3 = params.z * params.f +
                          params.v * (1.0 - params.f) - setting.cos2_alpha();
        return std::abs(e3) <= e3_tol;
    }
    return true;
}

HVParams SolutionFamily::sample(const Setting& setting,
                                RandomStream& rng) const {
    const double a2 = setting.cos2_alpha();
    HVParams params;
    params.x = x ? *x : rng.uniform01();
    params.y = y ? *y : rng.uniform01();
    params.z = z ? *z : rng.uniform01();
    params.v = v ? *v : rng.uniform01();
    params.f = f ? *f : rng.uniform01();
    if (!couples_e3) return params;

    if (v && *v == 0.0 && !z && !f) {
        // z f = cos^2(alpha): draw z in [a2, 1], solve f.
        params.z = a2 + (1.0 - a2) * rng.uniform01();
        params.f = a2 / params.z;
    } else if (z && *z == 1.0 && !v && !f) {
        // f + v (1-f) = cos^2(alpha): draw f in [0, a2], solve v.
        params.f = a2 * rng.uniform01();
        params.v = (a2 - params.f) / (1.0 - params.f);
    } else {
        // General surface z f + v (1-f) = cos^2(alpha): rejection-sample
        // (z, f) until v lands in [0,1].
        for (;;) {
            params.z = rng.uniform01();
            params.f = rng.uniform01();
            if (params.f >= 1.0 - 1e-12) continue;
            const double v_exact =
                (a2 - params.z * params.f) / (1.0 - params.f);
            if (v_exact >= 0.0 && v_exact <= 1.0) {
                params.v = v_exact;
                break;
            }
        }
    }
    return params;
}

BranchEnumeration enumerate_branches(const Setting& setting, double tol) {
    const double a2 = setting.cos2_alpha();
    BranchEnumeration result;
    if (near(a2, 0.0, tol) || near(a2, 1.0, tol)) {
        result.degenerate_alpha = true;
        return result;
    }
    const double c = setting.cos2_half_phi();

    // e1 = v(1-f)(x - 1/2) vanishes via v=0, f=1, or x=1/2; e2 =
    // f(1-z)(y - c) via f=0, z=1, or y=c. Crossing the factor choices and
    // solving e3 leaves six families; (v=0, f=0) and (f=1, z=1) force
    // cos^2(alpha) into {0, 1} and are discarded as degenerate.

    auto family = [](std::string name, BranchSet tags) {
        SolutionFamily fam;
        fam.name = std::move(name);
        fam.tags = tags;
        return fam;
    };
    BranchSet super_tag, wap_tag, paw_tag, both_tag;
    super_tag.set(Branch::Superdeterministic);
    wap_tag.set(Branch::WaveActsAsParticle);
    paw_tag.set(Branch::ParticleActsAsWave);
    both_tag.set(Branch::WaveActsAsParticle);
    both_tag.set(Branch::ParticleActsAsWave);

    // v=0, z=1: f = cos^2(alpha); x, y undetermined.
    {
        auto fam = family("superdeterministic", super_tag);
        fam.v = 0.0;
        fam.z = 1.0;
        fam.f = a2;
        result.families.push_back(std::move(fam));
    }
    // v=0, y=c: z f = cos^2(alpha); x free.
    {
        auto fam = family("v=0, y=cos^2(phi/2), zf=cos^2(alpha)", paw_tag);
        fam.v = 0.0;
        fam.y = c;
        fam.couples_e3 = true;
        result.families.push_back(std::move(fam));
    }
    // f=1, y=c: z = cos^2(alpha); x, v free (v carries no weight).
    {
        auto fam = family("f=1, z=cos^2(alpha), y=cos^2(phi/2)", paw_tag);
        fam.f = 1.0;
        fam.z = a2;
        fam.y = c;
        result.families.push_back(std::move(fam));
    }
    // f=0, x=1/2: v = cos^2(alpha); y, z free (z carries no weight).
    {
        auto fam = family("f=0, v=cos^2(alpha), x=1/2", wap_tag);
        fam.f = 0.0;
        fam.v = a2;
        fam.x = 0.5;
        result.families.push_back(std::move(fam));
    }
    // x=1/2, z=1: f + v(1-f) = cos^2(alpha); y free.
    {
        auto fam = family("x=1/2, z=1, f+v(1-f)=cos^2(alpha)", wap_tag);
        fam.x = 0.5;
        fam.z = 1.0;
        fam.couples_e3 = true;
        result.families.push_back(std::move(fam));
    }
    // x=1/2, y=c: zf + v(1-f) = cos^2(alpha).
    {
        auto fam = family(
            "x=1/2, y=cos^2(phi/2), zf+v(1-f)=cos^2(alpha)", both_tag);
        fam.x = 0.5;
        fam.y = c;
        fam.couples_e3 = true;
        result.families.push_back(std::move(fam));
    }
    return result;
}

HVSolution classify_params(const HVParams& params, const Setting& setting,
                           double tol, double coord_tol) {
    HVSolution solution;
    solution.params = params;
    solution.residual = residual(params, std::span(&setting, 1));
    if (solution.residual > tol) {
        solution.branches.set(Branch::Infeasible);
        return solution;
    }
    const auto enumeration = enumerate_branches(setting);
    if (enumeration.degenerate_alpha) {
        solution.branches.set(Branch::DegenerateAlpha);
        return solution;
    }
    for (const auto& family : enumeration.families) {
        if (family.contains(params, setting, coord_tol, coord_tol)) {
            if (family.tags.test(Branch::Superdeterministic)) {
                solution.branches.set(Branch::Superdeterministic);
            }
            if (family.tags.test(Branch::WaveActsAsParticle)) {
                solution.branches.set(Branch::WaveActsAsParticle);
            }
            if (family.tags.test(Branch::ParticleActsAsWave)) {
                solution.branches.set(Branch::ParticleActsAsWave);
            }
        }
    }
    return solution;
}

namespace {

bool valid_resolution(double resolution) {
    for (double allowed : {0.05, 0.02, 0.01}) {
        if (std::abs(resolution - allowed) < 1e-12) return true;
    }
    return false;
}

struct GridAxis {
    int steps;
    double h;

    double value(int i) const { return static_cast<double>(i) * h; }
};

void solution_sort(std::vector<HVSolution>& solutions) {
    std::sort(solutions.begin(), solutions.end(),
              [](const HVSolution& a, const HVSolution& b) {
                  if (a.residual != b.residual) return a.residual < b.residual;
                  return a.params.as_array() < b.params.as_array();
              });
}

} // namespace

std::vector<HVSolution> grid_search(const Setting& setting,
                                    const GridSearchOptions& options) {
    if (!valid_resolution(options.resolution)) {
        throw ConfigError("grid resolution must be one of 0.05, 0.02, 0.01");
    }
    const double a2 = setting.cos2_alpha();
    if (near(a2, 0.0, 1e-9) || near(a2, 1.0, 1e-9)) {
        throw DegenerateError(
            "grid search requires cos^2(alpha) away from {0, 1}");
    }
    const double tol = options.tol.value_or(options.resolution / 4.0);
    const double coord_tol = 2.0 * options.resolution;
    const GridAxis axis{static_cast<int>(std::lround(1.0 / options.resolution)),
                        options.resolution};
    const int n = axis.steps; // grid indices run 0..n inclusive

    const auto enumeration = enumerate_branches(setting);
    const JointDistribution qm =
        joint_distribution(setting.alpha, setting.phi);
    const double c = setting.cos2_half_phi();

    // Feasibility implies |e3| <= 2 tol, and e3 depends only on (z, v, f),
    // so the (x, y) planes are scanned only for surviving triples.
    const double e3_cut = 2.0 * tol + 1e-12;

    auto scan_z_range = [&](int z_begin, int z_end) {
        std::vector<HVSolution> found;
        for (int zi = z_begin; zi < z_end; ++zi) {
            const double z = axis.value(zi);
            for (int vi = 0; vi <= n; ++vi) {
                const double v = axis.value(vi);
                for (int fi = 0; fi <= n; ++fi) {
                    const double f = axis.value(fi);
                    const double e3 = z * f + v * (1.0 - f) - a2;
                    if (std::abs(e3) > e3_cut) continue;
                    for (int xi = 0; xi <= n; ++xi) {
                        const double x = axis.value(xi);
                        for (int yi = 0; yi <= n; ++yi) {
                            HVParams params{x, axis.value(yi), z, v, f};
                            const double dev =
                                hv_predict_with_c(params, c).max_abs_diff(qm);
                            if (dev >= tol) continue;
                            HVSolution sol;
                            sol.params = params;
                            sol.residual = dev;
                            for (const auto& family : enumeration.families) {
                                if (family.contains(params, setting,
                                                    coord_tol, coord_tol)) {
                                    if (family.tags.test(
                                            Branch::Superdeterministic)) {
                                        sol.branches.set(
                                            Branch::Superdeterministic);
                                    }
                                    if (family.tags.test(
                                            Branch::WaveActsAsParticle)) {
                                        sol.branches.set(
                                            Branch::WaveActsAsParticle);
                                    }
                                    if (family.tags.test(
                                            Branch::ParticleActsAsWave)) {
                                        sol.branches.set(
                                            Branch::ParticleActsAsWave);
                                    }
                                }
                            }
                            found.push_back(sol);
                        }
                    }
                }
            }
        }
        return found;
    };

    unsigned workers =
        options.max_threads > 0
            ? static_cast<unsigned>(options.max_threads)
            : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n + 1));

    std::vector<HVSolution> all;
    if (workers <= 1) {
        all = scan_z_range(0, n + 1);
    } else {
        std::vector<std::future<std::vector<HVSolution>>> futures;
        const int chunk = (n + 1 + static_cast<int>(workers) - 1) /
                          static_cast<int>(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const int begin = static_cast<int>(w) * chunk;
            const int end = std::min(n + 1, begin + chunk);
            if (begin >= end) break;
            futures.push_back(std::async(std::launch::async, scan_z_range,
                                         begin, end));
        }
        for (auto& f : futures) {
            auto part = f.get();
            all.insert(all.end(), part.begin(), part.end());
        }
    }
    solution_sort(all);
    return all;
}

std::vector<HVSolution> grid_search(const Setting& setting, double resolution,
                                    std::optional<double> tol) {
    GridSearchOptions options;
    options.resolution = resolution;
    options.tol = tol;
    return grid_search(setting, options);
}

namespace {

// Coarse scan minimizing the worst residual across all settings; the
// numeric companion to the marginal-spread lower bound.
std::pair<HVParams, double> best_joint_fit(std::span<const Setting> settings) {
    const double h = 0.05;
    const int n = 20;
    std::vector<double> cs;
    std::vector<JointDistribution> qms;
    for (const auto& s : settings) {
        cs.push_back(s.cos2_half_phi());
        qms.push_back(joint_distribution(s.alpha, s.phi));
    }
    HVParams best;
    double best_residual = 2.0;
    for (int zi = 0; zi <= n; ++zi) {
        for (int vi = 0; vi <= n; ++vi) {
            for (int fi = 0; fi <= n; ++fi) {
                for (int xi = 0; xi <= n; ++xi) {
                    for (int yi = 0; yi <= n; ++yi) {
                        HVParams params{xi * h, yi * h, zi * h, vi * h,
                                        fi * h};
                        double worst = 0.0;
                        for (std::size_t j = 0; j < qms.size(); ++j) {
                            worst = std::max(
                                worst, hv_predict_with_c(params, cs[j])
                                           .max_abs_diff(qms[j]));
                            if (worst >= best_residual) break;
                        }
                        if (worst < best_residual) {
                            best_residual = worst;
                            best = params;
                        }
                    }
                }
            }
        }
    }
    return {best, best_residual};
}

} // namespace

VerdictReport verdict(std::span<const Setting> settings, double tol) {
    if (settings.size() < 2) {
        throw ConfigError("verdict requires at least two settings");
    }
    for (const auto& setting : settings) {
        if (!is_generic(setting, tol)) {
            throw DegenerateError(
                "verdict requires generic settings (cos^2(alpha) away from "
                "{0,1}, cos^2(phi/2) away from {0,1/2,1})");
        }
    }

    VerdictReport report;
    double a2_min = 1.0, a2_max = 0.0;
    double c_min = 1.0, c_max = 0.0;
    for (const auto& setting : settings) {
        const auto enumeration = enumerate_branches(setting, tol);
        SettingReport sr;
        sr.setting = setting;
        sr.cos2_alpha = setting.cos2_alpha();
        sr.cos2_half_phi = setting.cos2_half_phi();
        sr.superdeterministic_f = sr.cos2_alpha;
        sr.family_count = enumeration.families.size();
        report.per_setting.push_back(sr);
        a2_min = std::min(a2_min, sr.cos2_alpha);
        a2_max = std::max(a2_max, sr.cos2_alpha);
        c_min = std::min(c_min, sr.cos2_half_phi);
        c_max = std::max(c_max, sr.cos2_half_phi);
    }
    report.marginal_spread = a2_max - a2_min;
    report.interference_spread = c_max - c_min;
    if (report.marginal_spread <= 10.0 * tol) {
        throw ConfigError(
            "verdict requires at least two settings with distinct "
            "cos^2(alpha)");
    }
    if (report.interference_spread <= 10.0 * tol) {
        throw ConfigError(
            "verdict requires at least two settings with distinct "
            "cos^2(phi/2)");
    }
    report.marginal_residual_bound = 0.25 * report.marginal_spread;

    auto [best, best_residual] = best_joint_fit(settings);
    report.best_joint_params = best;
    report.best_joint_residual = best_residual;
    report.verdict = kNoConsistentHvModel;
    return report;
}

std::string VerdictReport::to_text() const {
    std::ostringstream out;
    out.precision(12);
    out << "settings: " << per_setting.size() << "\n";
    for (std::size_t i = 0; i < per_setting.size(); ++i) {
        const auto& sr = per_setting[i];
        out << "setting[" << i << "].alpha: " << sr.setting.alpha << "\n";
        out << "setting[" << i << "].phi: " << sr.setting.phi << "\n";
        out << "setting[" << i << "].cos2_alpha: " << sr.cos2_alpha << "\n";
        out << "setting[" << i << "].cos2_half_phi: " << sr.cos2_half_phi
            << "\n";
        out << "setting[" << i
            << "].superdeterministic_f: " << sr.superdeterministic_f << "\n";
        out << "setting[" << i << "].families: " << sr.family_count << "\n";
    }
    out << "ancilla_marginal.spread: " << marginal_spread << "\n";
    out << "ancilla_marginal.residual_lower_bound: "
        << marginal_residual_bound << "\n";
    out << "ancilla_marginal.note: p(b=0)=z*f+v*(1-f) is setting-independent; "
           "only f=cos^2(alpha) with p(b|lambda) perfectly correlated "
           "(z=1, v=0) fits each setting alone\n";
    out << "interference_constraint.spread: " << interference_spread << "\n";
    out << "interference_constraint.note: a phi-independent y cannot equal "
           "cos^2(phi/2) at settings that disagree by the spread above\n";
    out << "best_joint_fit.residual: " << best_joint_residual << "\n";
    const auto p = best_joint_params.as_array();
    out << "best_joint_fit.params: x=" << p[0] << " y=" << p[1]
        << " z=" << p[2] << " v=" << p[3] << " f=" << p[4] << "\n";
    out << "verdict: " << verdict << "\n";
    return out.str();
}

} // namespace qdc
