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
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qdc/hvmodel.hpp"
#include "qdc/sampler.hpp"

namespace qdc::records {

// ---------------------------------------------------------------------
// Round-trip numeric formatting
// ---------------------------------------------------------------------

/// Shortest decimal representation that parses back to the same double
/// (std::to_chars general format).
std::string format_double(double value);

/// Strict double parse; throws ConfigError on trailing garbage.
double parse_double(std::string_view text);

std::uint64_t parse_u64(std::string_view text);

// ---------------------------------------------------------------------
// CSV (RFC-4180-style quoting, header row, '.' decimal separator)
// ---------------------------------------------------------------------

/// Quotes a field when it contains a comma, quote, or newline.
std::string csv_field(std::string_view raw);

std::string csv_row(const std::vector<std::string>& fields);

/// Parses CSV text into rows of unescaped fields. Accepts LF and CRLF.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// ---------------------------------------------------------------------
// Run manifest
// ---------------------------------------------------------------------

/// Provenance record embedded in (or accompanying) every output file.
struct RunManifest {
    std::string command;
    std::string version;
    std::uint64_t seed = 0;
    std::string rng; ///< random stream algorithm identifier
    nlohmann::ordered_json config;
    std::string timestamp; ///< UTC ISO-8601; honors SOURCE_DATE_EPOCH
};

/// Builds a manifest with the current tool version and a timestamp from
/// SOURCE_DATE_EPOCH when that variable is set (so runs can be made
/// byte-reproducible), else the wall clock.
RunManifest make_manifest(std::string command, std::uint64_t seed,
                          nlohmann::ordered_json config);

nlohmann::ordered_json to_json(const RunManifest& manifest);

// ---------------------------------------------------------------------
// Record serialization
// ---------------------------------------------------------------------

nlohmann::ordered_json to_json(const JointDistribution& dist);
nlohmann::ordered_json to_json(const ClickCounts& counts);
nlohmann::ordered_json to_json(const GoodnessOfFit& fit);
nlohmann::ordered_json to_json(const InterferencePattern& pattern,
                               double alpha);
nlohmann::ordered_json to_json(const HVParams& params);
nlohmann::ordered_json to_json(const HVSolution& solution);
nlohmann::ordered_json to_json(const SolutionFamily& family);
nlohmann::ordered_json to_json(const VerdictReport& report);

// ---------------------------------------------------------------------
// Settings file: one `alpha,phi` pair per line, '#' comments
// ---------------------------------------------------------------------

std::vector<Setting> parse_settings(std::string_view text);
std::vector<Setting> load_settings_file(const std::string& path);

} // namespace qdc::records
