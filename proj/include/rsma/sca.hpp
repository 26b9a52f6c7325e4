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

#include "rsma/model.hpp"

namespace rsma {

// Lower-bounding linearisation of log2(1 + gamma) in log2(gamma) around an
// expansion SINR: log2(1 + x) >= tau log2(x) + omega, with equality at x = gamma.
struct SurrogatePoint {
    double gamma = 0.0;
    double tau = 0.0;   // gamma / (1 + gamma)
    double omega = 0.0; // log2(1 + gamma) - tau log2(gamma)

    bool operator==(const SurrogatePoint&) const = default;
};

// Throws std::domain_error for negative or non-finite gamma. gamma = 0 gives
// the all-zero point, which drops the term from the surrogate objective.
SurrogatePoint surrogate_coeffs(double gamma);

// W (tau log2(gamma_actual) + omega). Returns -infinity when
// gamma_actual = 0 and tau > 0; callers must guard dead links.
double surrogate_rate(const SurrogatePoint& point, double gamma_actual, double bandwidth);

// Surrogate points for every assigned stream at one expansion iterate.
struct SurrogateSet {
    Grid3<SurrogatePoint> private_streams; // (m, u, k)
    Grid2<SurrogatePoint> common_streams;  // (m, k), linearised at the weakest user
    Grid2<std::size_t> common_user;        // index of that user, per slot
};

SurrogateSet build_surrogates(const SystemConfig& config, const ChannelSet& channels,
                              const AllocationState& alloc, const Assignment& assignment);

} // namespace rsma
