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

#include "rsma/sca.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsma {

SurrogatePoint surrogate_coeffs(double gamma) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::domain_error("surrogate_coeffs: SINR must be finite and >= 0");
    }
    if (gamma == 0.0) return {};
    SurrogatePoint pt;
    pt.gamma = gamma;
    pt.tau = gamma / (1.0 + gamma);
    pt.omega = std::log2(1.0 + gamma) - pt.tau * std::log2(gamma);
    return pt;
}

double surrogate_rate(const SurrogatePoint& point, double gamma_actual, double bandwidth) {
    if (point.tau == 0.0) return bandwidth * point.omega;
    if (gamma_actual <= 0.0) return -std::numeric_limits<double>::infinity();
    return bandwidth * (point.tau * std::log2(gamma_actual) + point.omega);
}

SurrogateSet build_surrogates(const SystemConfig& config, const ChannelSet& channels,
                              const AllocationState& alloc, const Assignment& assignment) {
    const auto M = config.num_beams, U = config.num_users, K = config.num_subcarriers;
    SurrogateSet set{Grid3<SurrogatePoint>(M, U, K), Grid2<SurrogatePoint>(M, K),
                     Grid2<std::size_t>(M, K, 0)};
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t k = 0; k < K; ++k) {
            bool any = false;
            double weakest = 0.0;
            for (std::size_t u = 0; u < U; ++u) {
                if (!assignment(m, u, k)) continue;
                set.private_streams(m, u, k) = surrogate_coeffs(
                    private_sinr(config, channels, alloc, assignment, m, u, k));
                const double g = common_sinr(config, channels, alloc, assignment, m, u, k);
                if (!any || g < weakest) {
                    weakest = g;
                    set.common_user(m, k) = u;
                }
                any = true;
            }
            if (any) set.common_streams(m, k) = surrogate_coeffs(weakest);
        }
    }
    return set;
}

} // namespace rsma
