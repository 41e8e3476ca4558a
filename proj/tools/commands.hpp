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
#include <optional>
#include <string>
#include <vector>

namespace qdc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;      ///< flag/config errors
inline constexpr int kExitDegenerate = 3; ///< degenerate physics condition

/// Output routing shared by all commands: empty path means stdout; a
/// CSV file is accompanied by `<path>.manifest.json`, a structured
/// (JSON) document embeds its manifest.
struct OutputOptions {
    std::string path;
    std::string format = "csv"; ///< csv | structured | text (verdict)
};

struct SweepCmd {
    std::vector<double> alphas;
    int phi_steps = 256;
    bool exact = false;
    std::uint64_t shots = 0; ///< 0 means not set
    std::uint64_t seed = 1;
    OutputOptions output;
};

struct SampleCmd {
    double alpha = 0.0;
    double phi = 0.0;
    std::uint64_t shots = 1;
    std::uint64_t seed = 1;
    std::string mode = "quantum";
    OutputOptions output;
};

struct PostselectCmd {
    double alpha = 0.0;
    double phi = 0.0;
    std::string basis = "computational";
    std::string outcome;
    OutputOptions output;
};

struct HvEnumerateCmd {
    double alpha = 0.0;
    double phi = 0.0;
    OutputOptions output;
};

struct HvSearchCmd {
    double alpha = 0.0;
    double phi = 0.0;
    double resolution = 0.05;
    std::optional<double> tol;
    OutputOptions output;
};

struct HvVerdictCmd {
    std::string settings_path;
    OutputOptions output{.path = "", .format = "text"};
};

int run_sweep(const SweepCmd& cmd);
int run_sample(const SampleCmd& cmd);
int run_postselect(const PostselectCmd& cmd);
int run_hv_enumerate(const HvEnumerateCmd& cmd);
int run_hv_search(const HvSearchCmd& cmd);
int run_hv_verdict(const HvVerdictCmd& cmd);

} // namespace qdc::cli
