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

// rsma_sim: solve one scenario, run sweeps, plot results, export dual traces.
//
// Exit codes: 0 success, 1 configuration error, 2 solver structural error,
// 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rsma/harness.hpp"
#include "rsma/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace rsma;

namespace {

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::size_t threads = 1;
};

fs::path out_dir(const Globals& g) {
    const fs::path dir(g.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

Scenario scenario_of(const Globals& g) {
    Scenario s = g.config.empty() ? Scenario{} : load_scenario(g.config);
    if (g.seed) s.seed = *g.seed;
    return s;
}

void print_report(const SolveReport& r) {
    std::cout << r.scheme << ": sum rate " << r.sum_rate * 1e-6 << " Mbit/s, "
              << (r.feasible ? "feasible" : "not feasible") << ", outer "
              << r.outer_iterations << ", inner " << r.inner_iterations << ", duals "
              << (r.duals_converged ? "converged" : "not converged") << '\n';
}

int cmd_solve(const Globals& g, const std::string& scheme) {
    const Scenario s = scenario_of(g);
    const ChannelSet ch = s.resolve_channels();
    nlohmann::json out = nlohmann::json::array();
    for (const auto& name : kSchemes) {
        if (scheme != "all" && scheme != name) continue;
        SolveReport r;
        if (name == "opt") r = solve_opt(s.config, ch, s.options);
        else if (name == "fix_p") r = solve_fix_p(s.config, ch, s.options);
        else r = solve_rand_x(s.config, ch, s.options, assignment_seed(s.seed));
        print_report(r);
        out.push_back(to_json(r));
    }
    const fs::path path = out_dir(g) / "solve.json";
    write_text_file(path, out.dump(2) + "\n");
    std::cout << "wrote " << path.string() << '\n';
    return 0;
}

int cmd_sweep(const Globals& g) {
    if (g.config.empty()) throw ConfigError("sweep: --config <sweep spec> is required");
    SweepSpec spec = sweep_spec_from_json(read_json_file(g.config));
    if (g.seed) spec.seed_base = *g.seed;
    const SweepResult r = run_sweep(spec, g.threads);
    const fs::path dir = out_dir(g);
    export_results(r, ExportFormat::csv, dir / "results.csv");
    export_results(r, ExportFormat::json, dir / "results.json");
    for (const auto& s : r.summary)
        std::cout << s.scheme << ' ' << to_string(r.variable) << '=' << r.labels[s.point]
                  << " mean " << s.mean_mbps << " Mbit/s (se " << s.stderr_mbps << ", feasible "
                  << s.feasible << '/' << s.trials << ")\n";
    for (const auto& e : r.errors) std::cerr << "trial failed: " << e << '\n';
    std::cout << "wrote " << (dir / "results.csv").string() << " and "
              << (dir / "results.json").string() << '\n';
    return 0;
}

int cmd_plot(const Globals& g, const std::string& input) {
    const SweepResult r = load_results(input);
    const fs::path path = out_dir(g) / (fs::path(input).stem().string() + ".svg");
    render_plot(r, path);
    std::cout << "wrote " << path.string() << '\n';
    return 0;
}

int cmd_trace(const Globals& g) {
    Scenario s = scenario_of(g);
    s.options.record_inner_trace = true;
    const SolveReport r = solve_opt(s.config, s.resolve_channels(), s.options);
    print_report(r);
    const fs::path dir = out_dir(g);
    write_text_file(dir / "trace.csv", trace_csv(r));
    render_plot(r, dir / "trace.svg");
    std::cout << "wrote " << (dir / "trace.csv").string() << " and "
              << (dir / "trace.svg").string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RSMA power and subcarrier-beam allocation for a cognitive GEO-LEO downlink"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "Scenario JSON (solve, trace) or sweep spec JSON (sweep)");
    app.add_option("--seed", g.seed, "Scenario seed (solve, trace) or seed base (sweep)");
    app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for sweeps, 0 = all cores")
        ->capture_default_str();

    std::string scheme = "all";
    auto* solve = app.add_subcommand("solve", "Solve one scenario with every scheme");
    solve->add_option("--scheme", scheme, "opt, fix_p, rand_x or all")
        ->check(CLI::IsMember({"opt", "fix_p", "rand_x", "all"}))
        ->capture_default_str();
    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep");
    std::string input;
    auto* plot = app.add_subcommand("plot", "Render a results JSON file as SVG");
    plot->add_option("input", input, "results.json written by sweep")->required();
    auto* trace = app.add_subcommand("trace", "Export the dual-convergence trace of Opt");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*solve) return cmd_solve(g, scheme);
        if (*sweep) return cmd_sweep(g);
        if (*plot) return cmd_plot(g, input);
        if (*trace) return cmd_trace(g);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const StructuralError& e) {
        std::cerr << "structural error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
