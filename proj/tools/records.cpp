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

#include "records.hpp"

#include <charconv>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#ifndef QDC_VERSION_STRING
#define QDC_VERSION_STRING "0.0.0"
#endif

namespace qdc::records {

std::string format_double(double value) {
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError("cannot parse number: '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError("cannot parse integer: '" + std::string(text) +
                          "'");
    }
    return value;
}

std::string csv_field(std::string_view raw) {
    const bool needs_quoting =
        raw.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quoting) return std::string(raw);
    std::string quoted = "\"";
    for (char ch : raw) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) row += ',';
        row += csv_field(fields[i]);
    }
    row += '\n';
    return row;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        if (field_started || !field.empty() || !row.empty()) {
            end_field();
            rows.push_back(std::move(row));
            row.clear();
        }
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                field_started = true;
                end_field();
                field_started = true; // next field exists even if empty
                break;
            case '\r':
                break;
            case '\n':
                end_row();
                break;
            default:
                field += ch;
                field_started = true;
        }
    }
    end_row();
    if (in_quotes) throw ConfigError("unterminated quote in CSV input");
    return rows;
}

RunManifest make_manifest(std::string command, std::uint64_t seed,
                          nlohmann::ordered_json config) {
    RunManifest manifest;
    manifest.command = std::move(command);
    manifest.version = QDC_VERSION_STRING;
    manifest.seed = seed;
    manifest.rng = std::string(RandomStream::algorithm_id());
    manifest.config = std::move(config);

    std::time_t stamp = 0;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        stamp = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else {
        stamp = std::time(nullptr);
    }
    std::tm utc{};
    gmtime_r(&stamp, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    manifest.timestamp = buffer;
    return manifest;
}

nlohmann::ordered_json to_json(const RunManifest& manifest) {
    return {{"command", manifest.command},
            {"version", manifest.version},
            {"seed", manifest.seed},
            {"rng", manifest.rng},
            {"config", manifest.config},
            {"timestamp", manifest.timestamp}};
}

nlohmann::ordered_json to_json(const JointDistribution& dist) {
    return {{"p00", dist.p00},
            {"p01", dist.p01},
            {"p10", dist.p10},
            {"p11", dist.p11}};
}

nlohmann::ordered_json to_json(const ClickCounts& counts) {
    return {{"n00", counts.n00},
            {"n01", counts.n01},
            {"n10", counts.n10},
            {"n11", counts.n11},
            {"shots", counts.shots},
            {"seed", counts.seed},
            {"mode", counts.mode == ControlMode::QuantumControl
                         ? "quantum"
                         : "classical"}};
}

nlohmann::ordered_json to_json(const GoodnessOfFit& fit) {
    return {{"chi_square", fit.chi_square},
            {"degrees_of_freedom", fit.degrees_of_freedom},
            {"threshold", fit.threshold},
            {"pass", fit.pass}};
}

nlohmann::ordered_json to_json(const InterferencePattern& pattern,
                               double alpha) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : pattern.rows) {
        rows.push_back({{"phi", row.phi}, {"intensity", row.intensity}});
    }
    return {{"alpha", alpha},
            {"visibility", pattern.visibility},
            {"rows", rows}};
}

nlohmann::ordered_json to_json(const HVParams& params) {
    return {{"x", params.x},
            {"y", params.y},
            {"z", params.z},
            {"v", params.v},
            {"f", params.f}};
}

nlohmann::ordered_json to_json(const HVSolution& solution) {
    return {{"params", to_json(solution.params)},
            {"residual", solution.residual},
            {"branches", solution.branches.to_string()}};
}

nlohmann::ordered_json to_json(const SolutionFamily& family) {
    auto pin = [](const std::optional<double>& value) {
        return value ? nlohmann::ordered_json(*value)
                     : nlohmann::ordered_json(nullptr);
    };
    return {{"name", family.name},
            {"branches", family.tags.to_string()},
            {"x", pin(family.x)},
            {"y", pin(family.y)},
            {"z", pin(family.z)},
            {"v", pin(family.v)},
            {"f", pin(family.f)},
            {"marginal_coupled", family.couples_e3}};
}

nlohmann::ordered_json to_json(const VerdictReport& report) {
    nlohmann::ordered_json settings = nlohmann::ordered_json::array();
    for (const auto& sr : report.per_setting) {
        settings.push_back({{"alpha", sr.setting.alpha},
                            {"phi", sr.setting.phi},
                            {"cos2_alpha", sr.cos2_alpha},
                            {"cos2_half_phi", sr.cos2_half_phi},
                            {"superdeterministic_f",
                             sr.superdeterministic_f},
                            {"families", sr.family_count}});
    }
    return {{"settings", settings},
            {"ancilla_marginal_spread", report.marginal_spread},
            {"ancilla_marginal_residual_lower_bound",
             report.marginal_residual_bound},
            {"interference_constraint_spread", report.interference_spread},
            {"best_joint_fit",
             {{"params", to_json(report.best_joint_params)},
              {"residual", report.best_joint_residual}}},
            {"verdict", report.verdict}};
}

std::vector<Setting> parse_settings(std::string_view text) {
    std::vector<Setting> settings;
    std::size_t line_start = 0;
    int line_number = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line =
            text.substr(line_start, line_end - line_start);
        line_start = line_end + 1;
        ++line_number;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                 line.back() == '\r')) {
            line.remove_suffix(1);
        }
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
            line.remove_prefix(1);
        }
        if (line.empty()) continue;

        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw ConfigError("settings line " + std::to_string(line_number) +
                              " is not 'alpha,phi'");
        }
        Setting setting;
        setting.alpha = parse_double(line.substr(0, comma));
        setting.phi = parse_double(line.substr(comma + 1));
        settings.push_back(setting);
    }
    return settings;
}

std::vector<Setting> load_settings_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open settings file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_settings(buffer.str());
}

} // namespace qdc::records
