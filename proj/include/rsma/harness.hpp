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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsma/scenario.hpp"

namespace rsma {

enum class SweepVariable { total_power, interference_threshold, dims };

// "P_tot", "I_th", "dims".
std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

inline const std::vector<std::string> kSchemes = {"opt", "fix_p", "rand_x"};

// Subcarriers and beams of one point of a dims sweep. Users follow as 2 K.
struct Dims {
    std::size_t subcarriers = 5;
    std::size_t beams = 5;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::total_power;
    std::vector<double> values;  // P_tot or I_th sweeps
    std::vector<Dims> dims;      // dims sweep
    std::size_t trials = 100;
    Scenario base;
    std::vector<std::string> schemes = kSchemes;
    std::uint64_t seed_base = 1;

    std::size_t points() const;
    // Label written to the sweep_value column: "%.9g" of the value, or "KxM".
    std::string label(std::size_t point) const;
    // Numeric x coordinate of a point (the value, or K for dims).
    double coordinate(std::size_t point) const;
    // Base config with the sweep variable of `point` applied.
    SystemConfig config_at(std::size_t point) const;

    // Throws ConfigError on an empty or non-increasing value list, zero
    // trials, or unknown or repeated schemes.
    void validate() const;
};

// Channel seed of a trial.
std::uint64_t trial_seed(std::uint64_t seed_base, std::size_t trial);
// Rand-x assignment seed derived from the channel seed, so the two random
// streams are not the same mt19937_64 sequence.
std::uint64_t assignment_seed(std::uint64_t channel_seed);

struct TrialRecord {
    std::string scheme;
    std::size_t point = 0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double sum_rate_mbps = 0.0;
    bool feasible = false;
    std::size_t iterations = 0;  // inner iterations over all outer steps
    bool failed = false;         // solver threw; error text in SweepResult
};

struct PointSummary {
    std::string scheme;
    std::size_t point = 0;
    double mean_mbps = 0.0;      // over feasible trials
    double stderr_mbps = 0.0;
    std::size_t trials = 0;
    std::size_t feasible = 0;
    double feasibility_rate = 0.0;
};

struct SweepResult {
    SweepVariable variable = SweepVariable::total_power;
    std::vector<std::string> labels;       // one per point
    std::vector<double> coordinates;       // one per point
    std::vector<std::string> schemes;
    std::vector<TrialRecord> records;      // point-major, then scheme, then trial
    std::vector<PointSummary> summary;     // point-major, then scheme
    std::vector<std::string> errors;

    const PointSummary& at(const std::string& scheme, std::size_t point) const;
};

// Runs every (point, trial) with all requested schemes on the same channels.
// threads == 0 uses the hardware concurrency. Output does not depend on the
// thread count.
SweepResult run_sweep(const SweepSpec& spec, std::size_t threads = 1);

// Recomputes `summary` from `records`.
void summarize(SweepResult& result);

std::string to_csv(const SweepResult& result);
nlohmann::json to_json(const SweepResult& result);
SweepResult sweep_result_from_json(const nlohmann::json& j);

enum class ExportFormat { csv, json };
// Throws IoError with the path on failure.
void export_results(const SweepResult& result, ExportFormat format,
                    const std::filesystem::path& path);
SweepResult load_results(const std::filesystem::path& path);

nlohmann::json to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

// Summary of one solve: flags, rates in Mbit/s and the per-slot allocation.
nlohmann::json to_json(const SolveReport& report);

// Dual-convergence export: one row per inner iteration of every outer step.
std::string trace_csv(const SolveReport& report);

} // namespace rsma
