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

#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qdc/errors.hpp"

#ifndef QDC_VERSION_STRING
#define QDC_VERSION_STRING "0.0.0"
#endif

namespace {

constexpr double kDegRad = std::numbers::pi / 180.0;

void add_output_flags(CLI::App* cmd, qdc::cli::OutputOptions& output,
                      const std::vector<std::string>& formats) {
    cmd->add_option("--out", output.path,
                    "Output file (stdout when omitted); CSV files are "
                    "accompanied by <out>.manifest.json");
    cmd->add_option("--format", output.format, "Output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "qdc - delayed-choice interferometer simulator with a quantum or "
        "classical control, plus a hidden-variable feasibility toolkit.\n"
        "Angles are radians unless --degrees is given. The default seed "
        "can be overridden with the QDC_SEED environment variable."};
    app.set_version_flag("--version", QDC_VERSION_STRING);
    app.require_subcommand(1);

    // sweep ------------------------------------------------------------
    qdc::cli::SweepCmd sweep;
    bool sweep_degrees = false;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Interference pattern I0(phi) and visibility per alpha");
    sweep_cmd
        ->add_option("--alpha", sweep.alphas,
                     "Ancilla bias angle (repeatable, one curve each)")
        ->required();
    sweep_cmd->add_option("--phi-steps", sweep.phi_steps,
                          "Number of phase samples on [0, 2pi)")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    auto* sweep_exact =
        sweep_cmd->add_flag("--exact", sweep.exact, "Closed-form intensities");
    sweep_cmd
        ->add_option("--shots", sweep.shots,
                     "Monte Carlo shots per phase point")
        ->excludes(sweep_exact);
    sweep_cmd->add_option("--seed", sweep.seed, "Random stream seed")
        ->envname("QDC_SEED")
        ->capture_default_str();
    sweep_cmd->add_flag("--degrees", sweep_degrees,
                        "Interpret angles as degrees");
    add_output_flags(sweep_cmd, sweep.output, {"csv", "structured"});
    sweep_cmd->callback([&] {
        if (sweep_degrees) {
            for (auto& a : sweep.alphas) a *= kDegRad;
        }
    });

    // sample -----------------------------------------------------------
    qdc::cli::SampleCmd sample;
    bool sample_degrees = false;
    auto* sample_cmd = app.add_subcommand(
        "sample", "Seeded detector clicks, empirical joint distribution and "
                  "chi-square verdict");
    sample_cmd->add_option("--alpha", sample.alpha, "Ancilla bias angle")
        ->required();
    sample_cmd->add_option("--phi", sample.phi, "Interferometer phase")
        ->required();
    sample_cmd->add_option("--shots", sample.shots, "Number of shots")
        ->required()
        ->check(CLI::Range(std::uint64_t{1},
                           std::numeric_limits<std::uint64_t>::max()));
    sample_cmd->add_option("--seed", sample.seed, "Random stream seed")
        ->envname("QDC_SEED")
        ->capture_default_str();
    sample_cmd->add_option("--mode", sample.mode,
                           "Control mode: quantum or classical")
        ->check(CLI::IsMember({"quantum", "classical"}))
        ->capture_default_str();
    sample_cmd->add_flag("--degrees", sample_degrees,
                         "Interpret angles as degrees");
    add_output_flags(sample_cmd, sample.output, {"csv", "structured"});
    sample_cmd->callback([&] {
        if (sample_degrees) {
            sample.alpha *= kDegRad;
            sample.phi *= kDegRad;
        }
    });

    // postselect ---------------------------------------------------------
    qdc::cli::PostselectCmd postselect;
    bool post_degrees = false;
    auto* post_cmd = app.add_subcommand(
        "postselect",
        "Photon statistics conditioned on the ancilla outcome");
    post_cmd->add_option("--alpha", postselect.alpha, "Ancilla bias angle")
        ->required();
    post_cmd->add_option("--phi", postselect.phi, "Interferometer phase")
        ->required();
    post_cmd->add_option("--basis", postselect.basis,
                         "Ancilla measurement basis")
        ->check(CLI::IsMember({"computational", "diagonal"}))
        ->capture_default_str();
    post_cmd->add_option("--outcome", postselect.outcome,
                         "Ancilla outcome: 0|1 (computational), plus|minus "
                         "(diagonal)")
        ->required()
        ->check(CLI::IsMember({"0", "1", "plus", "minus"}));
    post_cmd->add_flag("--degrees", post_degrees,
                       "Interpret angles as degrees");
    add_output_flags(post_cmd, postselect.output, {"csv", "structured"});
    post_cmd->callback([&] {
        if (post_degrees) {
            postselect.alpha *= kDegRad;
            postselect.phi *= kDegRad;
        }
    });

    // hv -----------------------------------------------------------------
    auto* hv_cmd = app.add_subcommand(
        "hv", "Hidden-variable feasibility analysis");
    hv_cmd->require_subcommand(1);

    qdc::cli::HvEnumerateCmd hv_enumerate;
    bool enum_degrees = false;
    auto* enum_cmd = hv_cmd->add_subcommand(
        "enumerate", "Analytic solution families of the constraint system");
    enum_cmd->add_option("--alpha", hv_enumerate.alpha, "Ancilla bias angle")
        ->required();
    enum_cmd->add_option("--phi", hv_enumerate.phi, "Interferometer phase")
        ->required();
    enum_cmd->add_flag("--degrees", enum_degrees,
                       "Interpret angles as degrees");
    add_output_flags(enum_cmd, hv_enumerate.output, {"csv", "structured"});
    enum_cmd->callback([&] {
        if (enum_degrees) {
            hv_enumerate.alpha *= kDegRad;
            hv_enumerate.phi *= kDegRad;
        }
    });

    qdc::cli::HvSearchCmd hv_search;
    bool search_degrees = false;
    auto* search_cmd = hv_cmd->add_subcommand(
        "search", "Brute-force grid scan of [0,1]^5 for feasible models");
    search_cmd->add_option("--alpha", hv_search.alpha, "Ancilla bias angle")
        ->required();
    search_cmd->add_option("--phi", hv_search.phi, "Interferometer phase")
        ->required();
    search_cmd
        ->add_option("--resolution", hv_search.resolution, "Grid spacing")
        ->check(CLI::IsMember({0.05, 0.02, 0.01}))
        ->capture_default_str();
    double search_tol = -1.0;
    search_cmd->add_option(
        "--tol", search_tol,
        "Feasibility residual cutoff (default resolution/4)");
    search_cmd->add_flag("--degrees", search_degrees,
                         "Interpret angles as degrees");
    add_output_flags(search_cmd, hv_search.output, {"csv", "structured"});
    search_cmd->callback([&] {
        if (search_degrees) {
            hv_search.alpha *= kDegRad;
            hv_search.phi *= kDegRad;
        }
        if (search_tol > 0.0) hv_search.tol = search_tol;
    });

    qdc::cli::HvVerdictCmd hv_verdict;
    auto* verdict_cmd = hv_cmd->add_subcommand(
        "verdict",
        "Cross-setting no-go report over a settings file (lines of "
        "'alpha,phi', '#' comments, radians)");
    verdict_cmd
        ->add_option("--settings", hv_verdict.settings_path,
                     "Settings file path")
        ->required();
    add_output_flags(verdict_cmd, hv_verdict.output, {"text", "structured"});

    try {
        app.parse(argc, argv);

        if (sweep_cmd->parsed()) return qdc::cli::run_sweep(sweep);
        if (sample_cmd->parsed()) return qdc::cli::run_sample(sample);
        if (post_cmd->parsed()) return qdc::cli::run_postselect(postselect);
        if (hv_cmd->parsed()) {
            if (enum_cmd->parsed())
                return qdc::cli::run_hv_enumerate(hv_enumerate);
            if (search_cmd->parsed())
                return qdc::cli::run_hv_search(hv_search);
            if (verdict_cmd->parsed())
                return qdc::cli::run_hv_verdict(hv_verdict);
        }
        return qdc::cli::kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qdc::cli::kExitUsage;
    } catch (const qdc::DegenerateError& e) {
        std::cerr << "error (degenerate condition): " << e.what() << "\n";
        return qdc::cli::kExitDegenerate;
    } catch (const qdc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qdc::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qdc::cli::kExitUsage;
    }
}
