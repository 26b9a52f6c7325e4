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

#include "rsma/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rsma {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void require_positive(double v, const char* name) {
    if (!positive_finite(v)) {
        throw ConfigError(std::string("config field '") + name +
                          "' must be strictly positive and finite");
    }
}

template <typename Range>
void require_nonnegative(const Range& values, const char* name) {
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ConfigError(std::string("channel tensor '") + name +
                              "' has a negative or non-finite entry");
        }
    }
}

// Sum over co-slot users j of eta(m,j,k), optionally skipping one user.
double private_share_sum(const AllocationState& alloc, const Assignment& assignment,
                         std::size_t m, std::size_t k, std::size_t skip,
                         bool use_skip) {
    double s = 0.0;
    for (std::size_t j = 0; j < assignment.users(); ++j) {
        if (use_skip && j == skip) continue;
        if (assignment(m, j, k)) s += alloc.eta(m, j, k);
    }
    return s;
}

} // namespace

void SystemConfig::validate() const {
    if (num_beams == 0 || num_subcarriers == 0 || num_users == 0) {
        throw ConfigError("num_beams, num_subcarriers and num_users must be >= 1");
    }
    require_positive(total_power, "total_power");
    require_positive(interference_threshold, "interference_threshold");
    require_positive(min_rate, "min_rate");
    require_positive(bandwidth, "bandwidth");
    require_positive(noise_variance, "noise_variance");
    require_positive(carrier_frequency, "carrier_frequency");
    require_positive(tx_antenna_gain, "tx_antenna_gain");
    require_positive(rx_antenna_gain, "rx_antenna_gain");
    require_positive(distance, "distance");
}

double ChannelSet::interference(std::size_t m, std::size_t u, std::size_t k) const {
    if (!g.empty()) return g(m, u, k) * q[k];
    return geo_interference(u, k);
}

void ChannelSet::validate(const SystemConfig& config) const {
    const auto M = config.num_beams, U = config.num_users, K = config.num_subcarriers;
    if (h.beams() != M || h.users() != U || h.subcarriers() != K) {
        throw ConfigError("channel tensor 'h' does not match (M, U, K)");
    }
    if (f.rows() != M || f.cols() != K) {
        throw ConfigError("channel tensor 'f' does not match (M, K)");
    }
    if (!g.empty()) {
        if (g.beams() != M || g.users() != U || g.subcarriers() != K) {
            throw ConfigError("channel tensor 'g' does not match (M, U, K)");
        }
        if (q.size() != K) throw ConfigError("channel vector 'q' must have K entries");
        require_nonnegative(g.data(), "g");
        require_nonnegative(q, "q");
    } else if (geo_interference.rows() != U || geo_interference.cols() != K) {
        throw ConfigError("channel tensor 'geo_interference' does not match (U, K)");
    }
    require_nonnegative(h.data(), "h");
    require_nonnegative(f.data(), "f");
    require_nonnegative(geo_interference.data(), "geo_interference");
}

ChannelSet make_empty_channels(const SystemConfig& config) {
    ChannelSet ch;
    ch.h = Grid3<double>(config.num_beams, config.num_users, config.num_subcarriers);
    ch.f = Grid2<double>(config.num_beams, config.num_subcarriers);
    ch.geo_interference = Grid2<double>(config.num_users, config.num_subcarriers);
    return ch;
}

std::vector<std::size_t> Assignment::users_in_slot(std::size_t m, std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < users(); ++u) {
        if ((*this)(m, u, k)) out.push_back(u);
    }
    return out;
}

bool Assignment::slot_active(std::size_t m, std::size_t k) const {
    for (std::size_t u = 0; u < users(); ++u) {
        if ((*this)(m, u, k)) return true;
    }
    return false;
}

bool Assignment::satisfies_single_slot() const {
    for (std::size_t u = 0; u < users(); ++u) {
        std::size_t count = 0;
        for (std::size_t m = 0; m < beams(); ++m)
            for (std::size_t k = 0; k < subcarriers(); ++k) count += (*this)(m, u, k);
        if (count != 1) return false;
    }
    return true;
}

void Assignment::require_single_slot() const {
    for (std::size_t u = 0; u < users(); ++u) {
        std::size_t count = 0;
        for (std::size_t m = 0; m < beams(); ++m)
            for (std::size_t k = 0; k < subcarriers(); ++k) count += (*this)(m, u, k);
        if (count != 1) {
            throw StructuralError("user " + std::to_string(u) + " occupies " +
                                  std::to_string(count) + " slots; exactly one required");
        }
    }
}

UserSlot slot_of(const Assignment& assignment, std::size_t u) {
    for (std::size_t m = 0; m < assignment.beams(); ++m)
        for (std::size_t k = 0; k < assignment.subcarriers(); ++k)
            if (assignment(m, u, k)) return {m, k};
    throw StructuralError("user " + std::to_string(u) + " has no slot");
}

std::vector<SlotIndex> active_slots(const Assignment& assignment) {
    std::vector<SlotIndex> out;
    for (std::size_t m = 0; m < assignment.beams(); ++m)
        for (std::size_t k = 0; k < assignment.subcarriers(); ++k)
            if (assignment.slot_active(m, k)) out.push_back({m, k});
    return out;
}

AllocationState AllocationState::zeros(const SystemConfig& config) {
    const auto M = config.num_beams, U = config.num_users, K = config.num_subcarriers;
    return {Grid2<double>(M, K), Grid2<double>(M, K), Grid3<double>(M, U, K),
            Grid3<double>(M, U, K)};
}

double free_space_loss(double distance, double frequency) {
    if (!positive_finite(distance) || !positive_finite(frequency)) {
        throw std::domain_error("free_space_loss: distance and frequency must be > 0");
    }
    const double wavelength = kSpeedOfLight / frequency;
    const double ratio = 4.0 * std::numbers::pi * distance / wavelength;
    return ratio * ratio;
}

double channel_gain(double tx_gain, double rx_gain, double loss) {
    if (!(loss > 0.0) || !std::isfinite(loss)) {
        throw std::domain_error("channel_gain: loss must be > 0");
    }
    return tx_gain * rx_gain / loss;
}

double common_sinr(const SystemConfig& config, const ChannelSet& channels,
                   const AllocationState& alloc, const Assignment& assignment,
                   std::size_t m, std::size_t u, std::size_t k) {
    const double h = channels.h(m, u, k);
    const double p = alloc.p(m, k);
    const double self_interference = h * private_share_sum(alloc, assignment, m, k, 0, false) * p;
    const double denom = channels.interference(m, u, k) + self_interference + config.noise_variance;
    return h * alloc.eta0(m, k) * p / denom;
}

double private_sinr(const SystemConfig& config, const ChannelSet& channels,
                    const AllocationState& alloc, const Assignment& assignment,
                    std::size_t m, std::size_t u, std::size_t k) {
    const double h = channels.h(m, u, k);
    const double p = alloc.p(m, k);
    // The common stream is removed by SIC before private decoding.
    const double co_slot = h * private_share_sum(alloc, assignment, m, k, u, true) * p;
    const double denom = channels.interference(m, u, k) + co_slot + config.noise_variance;
    return h * alloc.eta(m, u, k) * p / denom;
}

double common_rate(const SystemConfig& config, const ChannelSet& channels,
                   const AllocationState& alloc, const Assignment& assignment,
                   std::size_t m, std::size_t k) {
    bool any = false;
    double min_sinr = 0.0;
    for (std::size_t u = 0; u < assignment.users(); ++u) {
        if (!assignment(m, u, k)) continue;
        const double s = common_sinr(config, channels, alloc, assignment, m, u, k);
        min_sinr = any ? std::min(min_sinr, s) : s;
        any = true;
    }
    if (!any) return 0.0;
    return config.bandwidth * std::log2(1.0 + min_sinr);
}

double private_rate(const SystemConfig& config, const ChannelSet& channels,
                    const AllocationState& alloc, const Assignment& assignment,
                    std::size_t m, std::size_t u, std::size_t k) {
    return config.bandwidth *
           std::log2(1.0 + private_sinr(config, channels, alloc, assignment, m, u, k));
}

Evaluation evaluate(const SystemConfig& config, const ChannelSet& channels,
                    const AllocationState& alloc, const Assignment& assignment) {
    assignment.require_single_slot();
    const auto M = config.num_beams, U = config.num_users, K = config.num_subcarriers;

    Evaluation out;
    RateReport& r = out.rates;
    r.common_rate = Grid2<double>(M, K);
    r.private_rate = Grid3<double>(M, U, K);
    r.per_user_total.assign(U, 0.0);

    ConstraintSlack& s = out.slack;
    s.qos.assign(U, 0.0);
    s.common_rate = Grid2<double>(M, K);
    s.interference = Grid2<double>(M, K);
    s.split_budget = Grid2<double>(M, K);

    double power_sum = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t k = 0; k < K; ++k) {
            const double rc = common_rate(config, channels, alloc, assignment, m, k);
            r.common_rate(m, k) = rc;
            double c_sum = 0.0;
            double eta_sum = alloc.eta0(m, k);
            for (std::size_t u = 0; u < U; ++u) {
                if (!assignment(m, u, k)) continue;
                const double rp = private_rate(config, channels, alloc, assignment, m, u, k);
                r.private_rate(m, u, k) = rp;
                r.per_user_total[u] = alloc.c(m, u, k) + rp;
                r.sum_rate += alloc.c(m, u, k) + rp;
                c_sum += alloc.c(m, u, k);
                eta_sum += alloc.eta(m, u, k);
            }
            s.common_rate(m, k) = rc - c_sum;
            s.interference(m, k) = config.interference_threshold - channels.f(m, k) * alloc.p(m, k);
            s.split_budget(m, k) = 1.0 - eta_sum;
            power_sum += alloc.p(m, k);
        }
    }
    for (std::size_t u = 0; u < U; ++u) s.qos[u] = r.per_user_total[u] - config.min_rate;
    s.total_power = config.total_power - power_sum;
    return out;
}

double max_relative_violation(const SystemConfig& config, const Evaluation& eval) {
    double worst = 0.0;
    const auto& s = eval.slack;
    for (std::size_t i = 0; i < s.common_rate.data().size(); ++i) {
        const double scale = std::max(eval.rates.common_rate.data()[i], config.min_rate);
        worst = std::max(worst, -s.common_rate.data()[i] / scale);
    }
    for (double v : s.interference.data()) worst = std::max(worst, -v / config.interference_threshold);
    for (double v : s.split_budget.data()) worst = std::max(worst, -v);
    worst = std::max(worst, -s.total_power / config.total_power);
    return worst;
}

} // namespace rsma
