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

#include <filesystem>
#include <string>
#include <vector>

#include "rsma/harness.hpp"

namespace rsma {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;  // legend follows this order
};

// Self-contained SVG line chart with linear axes. Throws ConfigError when
// there is no series, a series is empty, or x and y differ in length.
std::string render_svg(const Plot& plot);

// Mean sum rate per scheme against the sweep variable.
Plot plot_from_results(const SweepResult& result);
// Norm of each multiplier family against the running inner iteration.
Plot plot_from_trace(const SolveReport& report);

void render_plot(const SweepResult& result, const std::filesystem::path& path);
void render_plot(const SolveReport& report, const std::filesystem::path& path);

} // namespace rsma
