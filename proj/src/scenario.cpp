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

#include "rsma/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace rsma {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + ": expected an object");
    for (const auto& item : j.items()) {
        if (!allowed.contains(item.key()))
            throw ConfigError(std::string(what) + ": unknown key '" + item.key() + "'");
    }
}

template <typename T>
void read(const json& j, const char* key, T& out, const char* what) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string(what) + "." + key + ": " + e.what());
    }
}

json grid_json(const Grid2<double>& g) {
    json out = json::array();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(g(r, c));
        out.push_back(std::move(row));
    }
    return out;
}

json grid_json(const Grid3<double>& g) {
    json out = json::array();
    for (std::size_t m = 0; m < g.beams(); ++m) {
        json plane = json::array();
        for (std::size_t u = 0; u < g.users(); ++u) {
            json row = json::array();
            for (std::size_t k = 0; k < g.subcarriers(); ++k) row.push_back(g(m, u, k));
            plane.push_back(std::move(row));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

Grid2<double> grid2_from(const json& j, std::size_t rows, std::size_t cols, const char* name) {
    Grid2<double> g(rows, cols);
    try {
        if (j.size() != rows) throw ConfigError("");
        for (std::size_t r = 0; r < rows; ++r) {
            if (j.at(r).size() != cols) throw ConfigError("");
            for (std::size_t c = 0; c < cols; ++c) g(r, c) = j.at(r).at(c).get<double>();
        }
    } catch (const std::exception&) {
        throw ConfigError(std::string("channels.") + name + ": expected a " +
                          std::to_string(rows) + "x" + std::to_string(cols) + " number array");
    }
    return g;
}

Grid3<double> grid3_from(const json& j, std::size_t M, std::size_t U, std::size_t K,
                         const char* name) {
    Grid3<double> g(M, U, K);
    try {
        if (j.size() != M) throw ConfigError("");
        for (std::size_t m = 0; m < M; ++m) {
            if (j.at(m).size() != U) throw ConfigError("");
            for (std::size_t u = 0; u < U; ++u) {
                if (j.at(m).at(u).size() != K) throw ConfigError("");
                for (std::size_t k = 0; k < K; ++k) g(m, u, k) = j.at(m).at(u).at(k).get<double>();
            }
        }
    } catch (const std::exception&) {
        throw ConfigError(std::string("channels.") + name + ": expected a " + std::to_string(M) +
                          "x" + std::to_string(U) + "x" + std::to_string(K) + " number array");
    }
    return g;
}

} // namespace

void ScenarioParams::validate() const {
    if (!(distance_spread >= 0.0 && distance_spread < 1.0))
        throw ConfigError("scenario: distance_spread must lie in [0, 1)");
    if (!(jitter_db >= 0.0) || !std::isfinite(jitter_db))
        throw ConfigError("scenario: jitter_db must be nonnegative");
    if (!(f_min > 0.0 && f_max >= f_min && std::isfinite(f_max)))
        throw ConfigError("scenario: need 0 < f_min <= f_max");
    if (!(geo_interference >= 0.0) || !std::isfinite(geo_interference))
        throw ConfigError("scenario: geo_interference must be nonnegative");
}

ChannelSet generate_scenario(const SystemConfig& config, const ScenarioParams& params,
                             std::uint64_t seed) {
    config.validate();
    params.validate();
    const auto M = config.num_beams, U = config.num_users, K = config.num_subcarriers;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    std::vector<double> base(U);
    for (auto& b : base) {
        const double d = config.distance * (1.0 + params.distance_spread * unit(rng));
        b = channel_gain(config.tx_antenna_gain, config.rx_antenna_gain,
                         free_space_loss(d, config.carrier_frequency));
    }
    ChannelSet ch = make_empty_channels(config);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t k = 0; k < K; ++k)
                ch.h(m, u, k) = base[u] * std::pow(10.0, params.jitter_db * unit(rng) / 10.0);
    const double lo = std::log(params.f_min), hi = std::log(params.f_max);
    std::uniform_real_distribution<double> logf(0.0, 1.0);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t k = 0; k < K; ++k) ch.f(m, k) = std::exp(lo + (hi - lo) * logf(rng));
    ch.geo_interference.fill(params.geo_interference);
    return ch;
}

ChannelSet Scenario::resolve_channels() const {
    if (channels) return *channels;
    return generate_scenario(config, params, seed);
}

json to_json(const SystemConfig& c) {
    return {{"num_beams", c.num_beams},
            {"num_subcarriers", c.num_subcarriers},
            {"num_users", c.num_users},
            {"total_power", c.total_power},
            {"interference_threshold", c.interference_threshold},
            {"min_rate", c.min_rate},
            {"bandwidth", c.bandwidth},
            {"noise_variance", c.noise_variance},
            {"carrier_frequency", c.carrier_frequency},
            {"tx_antenna_gain", c.tx_antenna_gain},
            {"rx_antenna_gain", c.rx_antenna_gain},
            {"distance", c.distance}};
}

json to_json(const ScenarioParams& p) {
    return {{"distance_spread", p.distance_spread},
            {"jitter_db", p.jitter_db},
            {"f_min", p.f_min},
            {"f_max", p.f_max},
            {"geo_interference", p.geo_interference}};
}

json to_json(const SolverOptions& o) {
    return {{"tol_outer", o.tol_outer},
            {"tol_feas", o.tol_feas},
            {"tol_dual", o.tol_dual},
            {"inner_max", o.inner_max},
            {"outer_max", o.outer_max},
            {"primal_sweeps", o.primal_sweeps},
            {"primal_tol", o.primal_tol},
            {"step",
             {{"qos", o.step.qos},
              {"common_rate", o.step.common_rate},
              {"interference", o.step.interference},
              {"split", o.step.split},
              {"power", o.step.power},
              {"common_share", o.step.common_share}}},
            {"dual_init", o.dual_init},
            {"split_fallback", o.split_fallback == SplitFallback::floor ? "floor" : "project"},
            {"infeasible_dual_cap", o.infeasible_dual_cap},
            {"rate_unit", o.rate_unit},
            {"seed", o.seed},
            {"record_inner_trace", o.record_inner_trace}};
}

json to_json(const ChannelSet& ch) {
    json j{{"h", grid_json(ch.h)}, {"f", grid_json(ch.f)}};
    if (!ch.g.empty()) {
        j["g"] = grid_json(ch.g);
        j["q"] = ch.q;
    }
    if (!ch.geo_interference.empty()) j["I_p"] = grid_json(ch.geo_interference);
    return j;
}

json to_json(const Scenario& s) {
    json j{{"config", to_json(s.config)},
           {"scenario", to_json(s.params)},
           {"options", to_json(s.options)},
           {"seed", s.seed}};
    if (s.channels) j["channels"] = to_json(*s.channels);
    return j;
}

SystemConfig config_from_json(const json& j) {
    static const std::set<std::string> keys = {
        "num_beams", "num_subcarriers", "num_users", "total_power",
        "interference_threshold", "min_rate", "bandwidth", "noise_variance",
        "carrier_frequency", "tx_antenna_gain", "rx_antenna_gain", "distance"};
    check_keys(j, keys, "config");
    SystemConfig c;
    read(j, "num_beams", c.num_beams, "config");
    read(j, "num_subcarriers", c.num_subcarriers, "config");
    read(j, "num_users", c.num_users, "config");
    read(j, "total_power", c.total_power, "config");
    read(j, "interference_threshold", c.interference_threshold, "config");
    read(j, "min_rate", c.min_rate, "config");
    read(j, "bandwidth", c.bandwidth, "config");
    read(j, "noise_variance", c.noise_variance, "config");
    read(j, "carrier_frequency", c.carrier_frequency, "config");
    read(j, "tx_antenna_gain", c.tx_antenna_gain, "config");
    read(j, "rx_antenna_gain", c.rx_antenna_gain, "config");
    read(j, "distance", c.distance, "config");
    c.validate();
    return c;
}

ScenarioParams params_from_json(const json& j) {
    check_keys(j, {"distance_spread", "jitter_db", "f_min", "f_max", "geo_interference"},
               "scenario");
    ScenarioParams p;
    read(j, "distance_spread", p.distance_spread, "scenario");
    read(j, "jitter_db", p.jitter_db, "scenario");
    read(j, "f_min", p.f_min, "scenario");
    read(j, "f_max", p.f_max, "scenario");
    read(j, "geo_interference", p.geo_interference, "scenario");
    p.validate();
    return p;
}

SolverOptions options_from_json(const json& j) {
    check_keys(j, {"tol_outer", "tol_feas", "tol_dual", "inner_max", "outer_max",
                   "primal_sweeps", "primal_tol", "step", "dual_init", "split_fallback",
                   "infeasible_dual_cap", "rate_unit", "seed", "record_inner_trace"},
               "options");
    SolverOptions o;
    read(j, "tol_outer", o.tol_outer, "options");
    read(j, "tol_feas", o.tol_feas, "options");
    read(j, "tol_dual", o.tol_dual, "options");
    read(j, "inner_max", o.inner_max, "options");
    read(j, "outer_max", o.outer_max, "options");
    read(j, "primal_sweeps", o.primal_sweeps, "options");
    read(j, "primal_tol", o.primal_tol, "options");
    read(j, "dual_init", o.dual_init, "options");
    if (j.contains("split_fallback")) {
        std::string name;
        read(j, "split_fallback", name, "options");
        if (name == "floor") o.split_fallback = SplitFallback::floor;
        else if (name == "project") o.split_fallback = SplitFallback::project;
        else throw ConfigError("options.split_fallback: expected \"floor\" or \"project\"");
    }
    read(j, "infeasible_dual_cap", o.infeasible_dual_cap, "options");
    read(j, "rate_unit", o.rate_unit, "options");
    read(j, "seed", o.seed, "options");
    read(j, "record_inner_trace", o.record_inner_trace, "options");
    if (j.contains("step")) {
        const json& s = j.at("step");
        check_keys(s, {"qos", "common_rate", "interference", "split", "power", "common_share"},
                   "options.step");
        read(s, "qos", o.step.qos, "options.step");
        read(s, "common_rate", o.step.common_rate, "options.step");
        read(s, "interference", o.step.interference, "options.step");
        read(s, "split", o.step.split, "options.step");
        read(s, "power", o.step.power, "options.step");
        read(s, "common_share", o.step.common_share, "options.step");
    }
    o.validate();
    return o;
}

ChannelSet channels_from_json(const json& j, const SystemConfig& config) {
    check_keys(j, {"h", "g", "f", "q", "I_p"}, "channels");
    const auto M = config.num_beams, U = config.num_users, K = config.num_subcarriers;
    if (!j.contains("h") || !j.contains("f")) throw ConfigError("channels: 'h' and 'f' are required");
    ChannelSet ch;
    ch.h = grid3_from(j.at("h"), M, U, K, "h");
    ch.f = grid2_from(j.at("f"), M, K, "f");
    if (j.contains("g") != j.contains("q"))
        throw ConfigError("channels: 'g' and 'q' must be given together");
    if (j.contains("g")) {
        ch.g = grid3_from(j.at("g"), M, U, K, "g");
        read(j, "q", ch.q, "channels");
    }
    if (j.contains("I_p")) {
        ch.geo_interference = grid2_from(j.at("I_p"), U, K, "I_p");
    } else if (ch.g.empty()) {
        ch.geo_interference = Grid2<double>(U, K, ScenarioParams{}.geo_interference);
    }
    ch.validate(config);
    return ch;
}

Scenario scenario_from_json(const json& j) {
    check_keys(j, {"config", "scenario", "options", "channels", "seed"}, "scenario file");
    Scenario s;
    if (j.contains("config")) s.config = config_from_json(j.at("config"));
    if (j.contains("scenario")) s.params = params_from_json(j.at("scenario"));
    if (j.contains("options")) s.options = options_from_json(j.at("options"));
    read(j, "seed", s.seed, "scenario file");
    if (j.contains("channels")) s.channels = channels_from_json(j.at("channels"), s.config);
    return s;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("read failed on '" + path.string() + "'");
    try {
        return json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path.string() + "': " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed on '" + path.string() + "'");
}

Scenario load_scenario(const std::filesystem::path& path) {
    return scenario_from_json(read_json_file(path));
}

} // namespace rsma
