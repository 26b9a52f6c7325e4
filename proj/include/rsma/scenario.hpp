// Copyright (c) 2026 The geoleo-rsma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "json.hpp"
#include "rsma/model.hpp"
#include "rsma/solver.hpp"

namespace rsma {

// Randomisation knobs of generated scenarios.
struct ScenarioParams {
    double distance_spread = 0.05;  // user distance uniform in D (1 +- spread)
    double jitter_db = 8.0;         // log-uniform per-link gain jitter, +- dB
    double f_min = 0.05;            // LEO -> GEO-user gain, log-uniform range
    double f_max = 500.0;
    double geo_interference = 4.0;  // I_p [W]

    // Throws ConfigError on negative spread/jitter or an empty f range.
    void validate() const;
};

// Deterministic channels for (config, params, seed).
ChannelSet generate_scenario(const SystemConfig& config, const ScenarioParams& params,
                             std::uint64_t seed);

// One scenario file: config plus either explicit channels or a seed for
// generated ones.
struct Scenario {
    SystemConfig config;
    ScenarioParams params;
    SolverOptions options;
    std::optional<ChannelSet> channels;
    std::uint64_t seed = 1;

    // Explicit channels when present, generated ones otherwise.
    ChannelSet resolve_channels() const;
};

nlohmann::json to_json(const SystemConfig& config);
nlohmann::json to_json(const ScenarioParams& params);
nlohmann::json to_json(const SolverOptions& options);
nlohmann::json to_json(const ChannelSet& channels);
nlohmann::json to_json(const Scenario& scenario);

// Parsers reject unknown keys and wrong types with ConfigError. Missing keys
// keep their defaults.
SystemConfig config_from_json(const nlohmann::json& j);
ScenarioParams params_from_json(const nlohmann::json& j);
SolverOptions options_from_json(const nlohmann::json& j);
ChannelSet channels_from_json(const nlohmann::json& j, const SystemConfig& config);
Scenario scenario_from_json(const nlohmann::json& j);

// Throws IoError when the file cannot be read, ConfigError when it does not
// parse.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

} // namespace rsma
