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

#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <numbers>

#include "records.hpp"

namespace qdc::cli {

namespace {

using records::format_double;
using records::RunManifest;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

/// Routes CSV text (plus a manifest sidecar) or a structured document
/// (manifest embedded) to the requested destination.
void emit(const OutputOptions& output, const RunManifest& manifest,
          const std::string& csv_text, const nlohmann::ordered_json& payload) {
    if (output.format == "structured") {
        nlohmann::ordered_json doc;
        doc["manifest"] = records::to_json(manifest);
        for (const auto& [key, value] : payload.items()) doc[key] = value;
        const std::string text = doc.dump(2) + "\n";
        if (output.path.empty()) {
            std::cout << text;
        } else {
            write_file(output.path, text);
        }
        return;
    }
    if (output.path.empty()) {
        std::cout << csv_text;
        return;
    }
    write_file(output.path, csv_text);
    write_file(output.path + ".manifest.json",
               records::to_json(manifest).dump(2) + "\n");
}

std::vector<double> phi_grid(int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        grid[static_cast<std::size_t>(k)] =
            2.0 * std::numbers::pi * k / steps;
    }
    return grid;
}

} // namespace

int run_sweep(const SweepCmd& cmd) {
    if (cmd.alphas.empty()) throw ConfigError("at least one --alpha required");
    if (cmd.phi_steps < 2) {
        throw ConfigError("--phi-steps must be >= 2 to bracket the extrema");
    }
    if (cmd.exact == (cmd.shots > 0)) {
        throw ConfigError("exactly one of --exact or --shots is required");
    }

    const auto grid = phi_grid(cmd.phi_steps);
    std::vector<InterferencePattern> patterns;
    patterns.reserve(cmd.alphas.size());
    const RandomStream base(cmd.seed);
    for (std::size_t i = 0; i < cmd.alphas.size(); ++i) {
        if (cmd.exact) {
            patterns.push_back(sweep(cmd.alphas[i], grid));
        } else {
            // Each curve gets an independent derived stream.
            patterns.push_back(sampled_sweep(cmd.alphas[i], grid, cmd.shots,
                                             base.derived(i).key()));
        }
    }

    nlohmann::ordered_json config{{"alpha", cmd.alphas},
                                  {"phi_steps", cmd.phi_steps},
                                  {"exact", cmd.exact},
                                  {"shots", cmd.shots},
                                  {"seed", cmd.seed},
                                  {"format", cmd.output.format}};
    const auto manifest =
        records::make_manifest("sweep", cmd.seed, std::move(config));

    std::string csv = "alpha,phi,intensity,visibility\n";
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const std::string alpha_text = format_double(cmd.alphas[i]);
        const std::string vis_text = format_double(patterns[i].visibility);
        for (const auto& row : patterns[i].rows) {
            csv += alpha_text;
            csv += ',';
            csv += format_double(row.phi);
            csv += ',';
            csv += format_double(row.intensity);
            csv += ',';
            csv += vis_text;
            csv += '\n';
        }
    }

    nlohmann::ordered_json payload;
    auto pattern_array = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        pattern_array.push_back(
            records::to_json(patterns[i], cmd.alphas[i]));
    }
    payload["patterns"] = std::move(pattern_array);

    emit(cmd.output, manifest, csv, payload);
    return kExitOk;
}

int run_sample(const SampleCmd& cmd) {
    if (cmd.shots < 1) throw ConfigError("--shots must be >= 1");

    ExperimentConfig config;
    config.alpha = cmd.alpha;
    config.phi = cmd.phi;
    config.control_mode = cmd.mode == "classical"
                              ? ControlMode::ClassicalControl
                              : ControlMode::QuantumControl;
    config.shots = cmd.shots;
    config.seed = cmd.seed;

    const ClickCounts counts = sample_clicks(config);
    const JointDistribution empirical = empirical_distribution(counts);
    const JointDistribution expected = joint_distribution(cmd.alpha, cmd.phi);
    const GoodnessOfFit fit = goodness_of_fit(counts, expected);

    nlohmann::ordered_json manifest_config{{"alpha", cmd.alpha},
                                           {"phi", cmd.phi},
                                           {"shots", cmd.shots},
                                           {"seed", cmd.seed},
                                           {"mode", cmd.mode},
                                           {"format", cmd.output.format}};
    const auto manifest =
        records::make_manifest("sample", cmd.seed, std::move(manifest_config));

    std::string csv =
        "alpha,phi,mode,shots,seed,n00,n01,n10,n11,"
        "p00,p01,p10,p11,q00,q01,q10,q11,"
        "chi_square,degrees_of_freedom,threshold,gof_pass\n";
    csv += format_double(cmd.alpha) + "," + format_double(cmd.phi) + "," +
           cmd.mode + "," + std::to_string(cmd.shots) + "," +
           std::to_string(cmd.seed);
    for (const auto n : counts.as_array()) csv += "," + std::to_string(n);
    for (const auto p : empirical.as_array()) csv += "," + format_double(p);
    for (const auto q : expected.as_array()) csv += "," + format_double(q);
    csv += "," + format_double(fit.chi_square) + "," +
           std::to_string(fit.degrees_of_freedom) + "," +
           format_double(fit.threshold) + "," +
           (fit.pass ? std::string("true") : std::string("false")) + "\n";

    nlohmann::ordered_json payload{{"counts", records::to_json(counts)},
                                   {"empirical", records::to_json(empirical)},
                                   {"expected", records::to_json(expected)},
                                   {"goodness_of_fit", records::to_json(fit)}};
    emit(cmd.output, manifest, csv, payload);
    return kExitOk;
}

int run_postselect(const PostselectCmd& cmd) {
    const bool diagonal = cmd.basis == "diagonal";
    nlohmann::ordered_json manifest_config{{"alpha", cmd.alpha},
                                           {"phi", cmd.phi},
                                           {"basis", cmd.basis},
                                           {"outcome", cmd.outcome},
                                           {"format", cmd.output.format}};
    const auto manifest =
        records::make_manifest("postselect", 0, std::move(manifest_config));

    std::string csv =
        "alpha,phi,basis,outcome,probability,p0,p1,"
        "amp0_re,amp0_im,amp1_re,amp1_im\n";
    nlohmann::ordered_json payload;

    if (!diagonal) {
        if (cmd.outcome != "0" && cmd.outcome != "1") {
            throw ConfigError(
                "computational basis outcomes are --outcome 0|1");
        }
        const auto result =
            postselect(cmd.alpha, cmd.phi, cmd.outcome == "1" ? 1 : 0);
        csv += format_double(cmd.alpha) + "," + format_double(cmd.phi) +
               ",computational," + cmd.outcome + "," +
               format_double(result.probability) + "," +
               format_double(result.photon_distribution[0]) + "," +
               format_double(result.photon_distribution[1]) + ",,,,\n";
        payload = {{"probability", result.probability},
                   {"photon_distribution",
                    {result.photon_distribution[0],
                     result.photon_distribution[1]}}};
    } else {
        if (cmd.outcome != "plus" && cmd.outcome != "minus") {
            throw ConfigError("diagonal basis outcomes are --outcome "
                              "plus|minus");
        }
        const auto result = diagonal_postselect(
            cmd.alpha, cmd.phi,
            cmd.outcome == "plus" ? DiagonalSign::Plus : DiagonalSign::Minus);
        const Complex a0 = result.photon.amplitude(0);
        const Complex a1 = result.photon.amplitude(1);
        csv += format_double(cmd.alpha) + "," + format_double(cmd.phi) +
               ",diagonal," + cmd.outcome + "," +
               format_double(result.probability) + "," +
               format_double(std::norm(a0)) + "," +
               format_double(std::norm(a1)) + "," +
               format_double(a0.real()) + "," + format_double(a0.imag()) +
               "," + format_double(a1.real()) + "," +
               format_double(a1.imag()) + "\n";
        payload = {{"probability", result.probability},
                   {"photon_state",
                    {{"amp0", {a0.real(), a0.imag()}},
                     {"amp1", {a1.real(), a1.imag()}}}},
                   {"photon_distribution",
                    {std::norm(a0), std::norm(a1)}}};
    }
    emit(cmd.output, manifest, csv, payload);
    return kExitOk;
}

int run_hv_enumerate(const HvEnumerateCmd& cmd) {
    const Setting setting{cmd.alpha, cmd.phi};
    const auto enumeration = enumerate_branches(setting);
    if (enumeration.degenerate_alpha) {
        throw DegenerateError(
            "cos^2(alpha) is 0 or 1: the constraint system collapses "
            "(DegenerateAlpha) and no non-trivial families exist");
    }

    nlohmann::ordered_json config{{"alpha", cmd.alpha},
                                  {"phi", cmd.phi},
                                  {"format", cmd.output.format}};
    const auto manifest =
        records::make_manifest("hv enumerate", 0, std::move(config));

    std::string csv = "family,branches,x,y,z,v,f,marginal_coupled\n";
    auto pin_text = [](const std::optional<double>& value) {
        return value ? format_double(*value) : std::string();
    };
    for (const auto& family : enumeration.families) {
        csv += records::csv_row({family.name, family.tags.to_string(),
                                 pin_text(family.x), pin_text(family.y),
                                 pin_text(family.z), pin_text(family.v),
                                 pin_text(family.f),
                                 family.couples_e3 ? "true" : "false"});
    }

    auto family_array = nlohmann::ordered_json::array();
    for (const auto& family : enumeration.families) {
        family_array.push_back(records::to_json(family));
    }
    nlohmann::ordered_json payload{
        {"setting", {{"alpha", cmd.alpha}, {"phi", cmd.phi}}},
        {"families", std::move(family_array)}};
    emit(cmd.output, manifest, csv, payload);
    return kExitOk;
}

int run_hv_search(const HvSearchCmd& cmd) {
    const Setting setting{cmd.alpha, cmd.phi};
    GridSearchOptions options;
    options.resolution = cmd.resolution;
    options.tol = cmd.tol;
    const auto solutions = grid_search(setting, options);

    nlohmann::ordered_json config{
        {"alpha", cmd.alpha},
        {"phi", cmd.phi},
        {"resolution", cmd.resolution},
        {"tol", options.tol ? nlohmann::ordered_json(*options.tol)
                            : nlohmann::ordered_json(cmd.resolution / 4.0)},
        {"format", cmd.output.format}};
    const auto manifest =
        records::make_manifest("hv search", 0, std::move(config));

    std::string csv = "x,y,z,v,f,residual,branches\n";
    for (const auto& sol : solutions) {
        const auto p = sol.params.as_array();
        csv += records::csv_row({format_double(p[0]), format_double(p[1]),
                                 format_double(p[2]), format_double(p[3]),
                                 format_double(p[4]),
                                 format_double(sol.residual),
                                 sol.branches.to_string()});
    }

    auto solution_array = nlohmann::ordered_json::array();
    for (const auto& sol : solutions) {
        solution_array.push_back(records::to_json(sol));
    }
    nlohmann::ordered_json payload{
        {"setting", {{"alpha", cmd.alpha}, {"phi", cmd.phi}}},
        {"solution_count", solutions.size()},
        {"solutions", std::move(solution_array)}};
    emit(cmd.output, manifest, csv, payload);
    return kExitOk;
}

int run_hv_verdict(const HvVerdictCmd& cmd) {
    const auto settings = records::load_settings_file(cmd.settings_path);
    const VerdictReport report = verdict(settings);

    nlohmann::ordered_json config{{"settings", cmd.settings_path},
                                  {"format", cmd.output.format}};
    const auto manifest =
        records::make_manifest("hv verdict", 0, std::move(config));

    if (cmd.output.format == "structured") {
        nlohmann::ordered_json doc;
        doc["manifest"] = records::to_json(manifest);
        doc["report"] = records::to_json(report);
        const std::string text = doc.dump(2) + "\n";
        if (cmd.output.path.empty()) {
            std::cout << text;
        } else {
            write_file(cmd.output.path, text);
        }
        return kExitOk;
    }
    const std::string text = report.to_text();
    if (cmd.output.path.empty()) {
        std::cout << text;
    } else {
        write_file(cmd.output.path, text);
        write_file(cmd.output.path + ".manifest.json",
                   records::to_json(manifest).dump(2) + "\n");
    }
    return kExitOk;
}

} // namespace qdc::cli
