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

#include "rsma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

namespace rsma {

using nlohmann::json;

namespace {

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Pairwise summation over [first, last).
double pairwise_sum(const double* first, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += first[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(first, half) + pairwise_sum(first + half, n - half);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

SolveReport run_scheme(const std::string& scheme, const SystemConfig& config,
                       const ChannelSet& channels, const SolverOptions& options,
                       std::uint64_t seed) {
    if (scheme == "opt") return solve_opt(config, channels, options);
    if (scheme == "fix_p") return solve_fix_p(config, channels, options);
    return solve_rand_x(config, channels, options, assignment_seed(seed));
}

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
    if (!j.is_object()) throw ConfigError(what + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) throw ConfigError(what + ": unknown key '" + key + "'");
    }
}

template <typename T>
T get(const json& j, const char* key, const std::string& what) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(what + "." + key + ": " + e.what());
    }
}

} // namespace

std::string to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::total_power: return "P_tot";
    case SweepVariable::interference_threshold: return "I_th";
    case SweepVariable::dims: return "dims";
    }
    return "?";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
    if (name == "P_tot") return SweepVariable::total_power;
    if (name == "I_th") return SweepVariable::interference_threshold;
    if (name == "dims") return SweepVariable::dims;
    throw ConfigError("sweep: unknown variable '" + name + "' (expected P_tot, I_th or dims)");
}

std::size_t SweepSpec::points() const {
    return variable == SweepVariable::dims ? dims.size() : values.size();
}

std::string SweepSpec::label(std::size_t point) const {
    if (variable == SweepVariable::dims)
        return std::to_string(dims.at(point).subcarriers) + "x" + std::to_string(dims.at(point).beams);
    return fmt9(values.at(point));
}

double SweepSpec::coordinate(std::size_t point) const {
    if (variable == SweepVariable::dims) return static_cast<double>(dims.at(point).subcarriers);
    return values.at(point);
}

SystemConfig SweepSpec::config_at(std::size_t point) const {
    SystemConfig c = base.config;
    switch (variable) {
    case SweepVariable::total_power: c.total_power = values.at(point); break;
    case SweepVariable::interference_threshold: c.interference_threshold = values.at(point); break;
    case SweepVariable::dims:
        c.num_subcarriers = dims.at(point).subcarriers;
        c.num_beams = dims.at(point).beams;
        c.num_users = 2 * c.num_subcarriers;
        break;
    }
    return c;
}

void SweepSpec::validate() const {
    if (trials == 0) throw ConfigError("sweep: trials must be at least 1");
    if (points() == 0) throw ConfigError("sweep: value list is empty");
    if (variable == SweepVariable::dims) {
        for (const auto& d : dims)
            if (d.subcarriers == 0 || d.beams == 0)
                throw ConfigError("sweep: dims entries must be positive");
        for (std::size_t i = 1; i < dims.size(); ++i)
            if (dims[i].subcarriers * dims[i].beams <= dims[i - 1].subcarriers * dims[i - 1].beams)
                throw ConfigError("sweep: dims must be strictly increasing in K*M");
    } else {
        for (double v : values)
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError("sweep: values must be positive and finite");
        for (std::size_t i = 1; i < values.size(); ++i)
            if (!(values[i] > values[i - 1]))
                throw ConfigError("sweep: values must be strictly increasing");
    }
    if (schemes.empty()) throw ConfigError("sweep: no schemes requested");
    std::set<std::string> seen;
    for (const auto& s : schemes) {
        if (std::find(kSchemes.begin(), kSchemes.end(), s) == kSchemes.end())
            throw ConfigError("sweep: unknown scheme '" + s + "'");
        if (!seen.insert(s).second) throw ConfigError("sweep: scheme '" + s + "' repeated");
    }
    if (base.channels) throw ConfigError("sweep: the base scenario must not carry explicit channels");
    base.params.validate();
    base.options.validate();
    for (std::size_t p = 0; p < points(); ++p) config_at(p).validate();
}

std::uint64_t trial_seed(std::uint64_t seed_base, std::size_t trial) {
    return seed_base + static_cast<std::uint64_t>(trial);
}

std::uint64_t assignment_seed(std::uint64_t channel_seed) {
    return splitmix64(channel_seed ^ 0x52414E442D58ULL);
}

const PointSummary& SweepResult::at(const std::string& scheme, std::size_t point) const {
    for (const auto& s : summary)
        if (s.scheme == scheme && s.point == point) return s;
    throw ConfigError("sweep result: no summary for scheme '" + scheme + "' at point " +
                      std::to_string(point));
}

SweepResult run_sweep(const SweepSpec& spec, std::size_t threads) {
    spec.validate();
    const std::size_t P = spec.points(), S = spec.schemes.size(), T = spec.trials;

    SweepResult result;
    result.variable = spec.variable;
    result.schemes = spec.schemes;
    for (std::size_t p = 0; p < P; ++p) {
        result.labels.push_back(spec.label(p));
        result.coordinates.push_back(spec.coordinate(p));
    }
    result.records.resize(P * S * T);
    std::vector<std::string> errors(P * T);

    const auto job = [&](std::size_t index) {
        const std::size_t p = index / T, t = index % T;
        const SystemConfig config = spec.config_at(p);
        const std::uint64_t seed = trial_seed(spec.seed_base, t);
        ChannelSet channels;
        std::string error;
        try {
            channels = generate_scenario(config, spec.base.params, seed);
        } catch (const std::exception& e) {
            error = e.what();
        }
        for (std::size_t s = 0; s < S; ++s) {
            TrialRecord& r = result.records[(p * S + s) * T + t];
            r.scheme = spec.schemes[s];
            r.point = p;
            r.trial = t;
            r.seed = seed;
            if (!error.empty()) {
                r.failed = true;
                continue;
            }
            try {
                const SolveReport rep =
                    run_scheme(r.scheme, config, channels, spec.base.options, seed);
                r.sum_rate_mbps = rep.sum_rate * 1e-6;
                r.feasible = rep.feasible;
                r.iterations = rep.inner_iterations;
            } catch (const std::exception& e) {
                r.failed = true;
                if (error.empty()) error = r.scheme + ": " + e.what();
            }
        }
        if (!error.empty())
            errors[index] = "point " + spec.label(p) + " trial " + std::to_string(t) + ": " + error;
    };

    const std::size_t jobs = P * T;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs);
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) job(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < jobs; i = next++) job(i);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (!e.empty()) result.errors.push_back(std::move(e));
    summarize(result);
    return result;
}

void summarize(SweepResult& result) {
    result.summary.clear();
    for (std::size_t p = 0; p < result.labels.size(); ++p) {
        for (const auto& scheme : result.schemes) {
            PointSummary s;
            s.scheme = scheme;
            s.point = p;
            std::vector<double> rates;
            for (const auto& r : result.records) {
                if (r.point != p || r.scheme != scheme) continue;
                ++s.trials;
                if (r.feasible && !r.failed) rates.push_back(r.sum_rate_mbps);
            }
            s.feasible = rates.size();
            s.feasibility_rate =
                s.trials ? static_cast<double>(s.feasible) / static_cast<double>(s.trials) : 0.0;
            if (!rates.empty()) {
                const double n = static_cast<double>(rates.size());
                s.mean_mbps = pairwise_sum(rates.data(), rates.size()) / n;
                if (rates.size() > 1) {
                    std::vector<double> sq(rates.size());
                    for (std::size_t i = 0; i < rates.size(); ++i)
                        sq[i] = (rates[i] - s.mean_mbps) * (rates[i] - s.mean_mbps);
                    const double var = pairwise_sum(sq.data(), sq.size()) / (n - 1.0);
                    s.stderr_mbps = std::sqrt(var / n);
                }
            }
            result.summary.push_back(s);
        }
    }
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "scheme,sweep_var,sweep_value,trial,seed,sum_rate_mbps,feasible,iterations\n";
    const std::string var = to_string(result.variable);
    for (const auto& r : result.records) {
        out << r.scheme << ',' << var << ',' << result.labels.at(r.point) << ',' << r.trial << ','
            << r.seed << ',' << fmt9(r.sum_rate_mbps) << ',' << (r.feasible ? 1 : 0) << ','
            << r.iterations << '\n';
    }
    return out.str();
}

json to_json(const SweepResult& result) {
    json records = json::array();
    for (const auto& r : result.records)
        records.push_back({{"scheme", r.scheme},
                           {"point", r.point},
                           {"trial", r.trial},
                           {"seed", r.seed},
                           {"sum_rate_mbps", r.sum_rate_mbps},
                           {"feasible", r.feasible},
                           {"iterations", r.iterations},
                           {"failed", r.failed}});
    json summary = json::array();
    for (const auto& s : result.summary)
        summary.push_back({{"scheme", s.scheme},
                           {"point", s.point},
                           {"sweep_value", result.labels.at(s.point)},
                           {"mean_mbps", s.mean_mbps},
                           {"stderr_mbps", s.stderr_mbps},
                           {"trials", s.trials},
                           {"feasible", s.feasible},
                           {"feasibility_rate", s.feasibility_rate}});
    return {{"sweep_var", to_string(result.variable)},
            {"labels", result.labels},
            {"coordinates", result.coordinates},
            {"schemes", result.schemes},
            {"records", records},
            {"summary", summary},
            {"errors", result.errors}};
}

SweepResult sweep_result_from_json(const json& j) {
    const std::string what = "results";
    require_keys(j, {"sweep_var", "labels", "coordinates", "schemes", "records", "summary", "errors"},
                 what);
    SweepResult r;
    r.variable = sweep_variable_from_string(get<std::string>(j, "sweep_var", what));
    r.labels = get<std::vector<std::string>>(j, "labels", what);
    r.coordinates = get<std::vector<double>>(j, "coordinates", what);
    r.schemes = get<std::vector<std::string>>(j, "schemes", what);
    if (j.contains("errors")) r.errors = get<std::vector<std::string>>(j, "errors", what);
    if (r.coordinates.size() != r.labels.size())
        throw ConfigError("results: labels and coordinates differ in length");
    for (const auto& e : j.at("records")) {
        TrialRecord t;
        t.scheme = get<std::string>(e, "scheme", "results.records");
        t.point = get<std::size_t>(e, "point", "results.records");
        t.trial = get<std::size_t>(e, "trial", "results.records");
        t.seed = get<std::uint64_t>(e, "seed", "results.records");
        t.sum_rate_mbps = get<double>(e, "sum_rate_mbps", "results.records");
        t.feasible = get<bool>(e, "feasible", "results.records");
        t.iterations = get<std::size_t>(e, "iterations", "results.records");
        if (e.contains("failed")) t.failed = get<bool>(e, "failed", "results.records");
        if (t.point >= r.labels.size()) throw ConfigError("results: record point out of range");
        r.records.push_back(std::move(t));
    }
    summarize(r);
    return r;
}

void export_results(const SweepResult& result, ExportFormat format,
                    const std::filesystem::path& path) {
    if (format == ExportFormat::csv) {
        write_text_file(path, to_csv(result));
    } else {
        write_text_file(path, to_json(result).dump(2) + "\n");
    }
}

SweepResult load_results(const std::filesystem::path& path) {
    return sweep_result_from_json(read_json_file(path));
}

json to_json(const SweepSpec& spec) {
    json j{{"variable", to_string(spec.variable)},
           {"trials", spec.trials},
           {"schemes", spec.schemes},
           {"seed_base", spec.seed_base},
           {"config", to_json(spec.base.config)},
           {"scenario", to_json(spec.base.params)},
           {"options", to_json(spec.base.options)}};
    if (spec.variable == SweepVariable::dims) {
        json d = json::array();
        for (const auto& x : spec.dims) d.push_back({x.subcarriers, x.beams});
        j["dims"] = d;
    } else {
        j["values"] = spec.values;
    }
    return j;
}

SweepSpec sweep_spec_from_json(const json& j) {
    const std::string what = "sweep";
    require_keys(j, {"variable", "values", "dims", "trials", "schemes", "seed_base", "config",
                     "scenario", "options"},
                 what);
    SweepSpec s;
    if (!j.contains("variable")) throw ConfigError("sweep: 'variable' is required");
    s.variable = sweep_variable_from_string(get<std::string>(j, "variable", what));
    if (j.contains("values")) s.values = get<std::vector<double>>(j, "values", what);
    if (j.contains("dims")) {
        for (const auto& d : j.at("dims")) {
            if (!d.is_array() || d.size() != 2)
                throw ConfigError("sweep.dims: entries must be [K, M] pairs");
            try {
                s.dims.push_back({d[0].get<std::size_t>(), d[1].get<std::size_t>()});
            } catch (const json::exception& e) {
                throw ConfigError(std::string("sweep.dims: ") + e.what());
            }
        }
    }
    if (j.contains("trials")) s.trials = get<std::size_t>(j, "trials", what);
    if (j.contains("schemes")) s.schemes = get<std::vector<std::string>>(j, "schemes", what);
    if (j.contains("seed_base")) s.seed_base = get<std::uint64_t>(j, "seed_base", what);
    if (j.contains("config")) s.base.config = config_from_json(j.at("config"));
    if (j.contains("scenario")) s.base.params = params_from_json(j.at("scenario"));
    if (j.contains("options")) s.base.options = options_from_json(j.at("options"));
    s.validate();
    return s;
}

json to_json(const SolveReport& report) {
    json slots = json::array();
    const auto& a = report.allocation;
    for (const auto& slot : active_slots(report.assignment)) {
        json users = json::array();
        for (std::size_t u : report.assignment.users_in_slot(slot.m, slot.k))
            users.push_back({{"user", u},
                             {"eta", a.eta(slot.m, u, slot.k)},
                             {"common_share_mbps", a.c(slot.m, u, slot.k) * 1e-6},
                             {"private_rate_mbps",
                              report.evaluation.rates.private_rate(slot.m, u, slot.k) * 1e-6}});
        slots.push_back({{"beam", slot.m},
                         {"subcarrier", slot.k},
                         {"power_w", a.p(slot.m, slot.k)},
                         {"eta0", a.eta0(slot.m, slot.k)},
                         {"common_rate_mbps",
                          report.evaluation.rates.common_rate(slot.m, slot.k) * 1e-6},
                         {"users", users}});
    }
    return {{"scheme", report.scheme},
            {"sum_rate_mbps", report.sum_rate * 1e-6},
            {"max_violation", report.max_violation},
            {"feasible", report.feasible},
            {"qos_satisfied", report.qos_satisfied},
            {"infeasible", report.infeasible},
            {"converged", report.converged},
            {"duals_converged", report.duals_converged},
            {"outer_iterations", report.outer_iterations},
            {"inner_iterations", report.inner_iterations},
            {"wall_time_s", report.wall_time_s},
            {"slots", slots}};
}

std::string trace_csv(const SolveReport& report) {
    std::ostringstream out;
    out << "outer,inner,sum_rate_mbps,max_violation";
    for (const auto& n : kDualFamilyNames) out << ',' << n << "_norm";
    for (const auto& n : kDualFamilyNames) out << ',' << n << "_change";
    out << '\n';
    for (const auto& r : report.trace) {
        if (r.inner == 0) continue;
        out << r.outer << ',' << r.inner << ',' << fmt9(r.sum_rate * 1e-6) << ','
            << fmt9(r.max_violation);
        for (double v : r.dual_norm) out << ',' << fmt9(v);
        for (double v : r.dual_change) out << ',' << fmt9(v);
        out << '\n';
    }
    return out.str();
}

} // namespace rsma
