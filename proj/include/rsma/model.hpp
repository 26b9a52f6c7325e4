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
#include <vector>

#include "rsma/errors.hpp"
#include "rsma/tensor.hpp"

namespace rsma {

inline constexpr double kSpeedOfLight = 2.998e8; // m/s

// Dimensions, budgets and link constants of one LEO downlink.
// All physical quantities are SI: W, Hz, bit/s, m.
struct SystemConfig {
    std::size_t num_beams = 5;       // M
    std::size_t num_subcarriers = 5; // K
    std::size_t num_users = 10;      // U

    double total_power = 50.0;            // P_tot [W]
    double interference_threshold = 2.0;  // I_th [W]
    double min_rate = 1.0e6;              // R_min [bit/s]
    double bandwidth = 10.0e6;            // W [Hz] per beam
    double noise_variance = 0.1;          // sigma^2 [W], free parameter
    double carrier_frequency = 19.0e9;    // f_c [Hz]
    double tx_antenna_gain = 2.0e10;      // G_T, linear
    double rx_antenna_gain = 2.0e10;      // G_R, linear
    double distance = 600.0e3;            // nominal LEO slant range D [m]

    // Throws ConfigError when a dimension is zero or a physical value is
    // not strictly positive and finite.
    void validate() const;
};

// Per-link gains. h and g are indexed (m, u, k); f is (m, k).
struct ChannelSet {
    Grid3<double> h;                 // LEO beam m -> LEO user u on k
    Grid3<double> g;                 // GEO -> LEO user u on k (optional)
    Grid2<double> f;                 // LEO beam m -> GEO user on k
    std::vector<double> q;           // GEO transmit power per subcarrier [W]
    Grid2<double> geo_interference;  // I_p (u, k) [W]

    // Aggregate GEO interference seen by user u on subcarrier k when served
    // by beam m: g(m,u,k)*q[k] when the decomposition is present, I_p(u,k)
    // otherwise.
    double interference(std::size_t m, std::size_t u, std::size_t k) const;

    // Shapes must match the config; gains nonnegative and finite.
    void validate(const SystemConfig& config) const;
};

ChannelSet make_empty_channels(const SystemConfig& config);

// Binary beam/subcarrier assignment x(m, u, k).
class Assignment {
public:
    Assignment() = default;
    Assignment(std::size_t beams, std::size_t users, std::size_t subcarriers)
        : x_(beams, users, subcarriers, 0) {}

    void set(std::size_t m, std::size_t u, std::size_t k, bool on = true) {
        x_(m, u, k) = on ? 1 : 0;
    }
    bool operator()(std::size_t m, std::size_t u, std::size_t k) const {
        return x_(m, u, k) != 0;
    }

    std::size_t beams() const { return x_.beams(); }
    std::size_t users() const { return x_.users(); }
    std::size_t subcarriers() const { return x_.subcarriers(); }

    // Users with x(m,u,k) = 1, in increasing index order.
    std::vector<std::size_t> users_in_slot(std::size_t m, std::size_t k) const;
    bool slot_active(std::size_t m, std::size_t k) const;

    // True iff every user occupies exactly one (m, k).
    bool satisfies_single_slot() const;
    // Throws StructuralError naming the first user that breaks C6.
    void require_single_slot() const;

    const Grid3<std::uint8_t>& raw() const { return x_; }
    bool operator==(const Assignment&) const = default;

private:
    Grid3<std::uint8_t> x_;
};

struct SlotIndex {
    std::size_t m;
    std::size_t k;
    bool operator==(const SlotIndex&) const = default;
};

struct UserSlot {
    std::size_t m;
    std::size_t k;
};

// Location of user u; requires C6.
UserSlot slot_of(const Assignment& assignment, std::size_t u);
std::vector<SlotIndex> active_slots(const Assignment& assignment);

struct AllocationState {
    Grid2<double> p;     // beam power per subcarrier [W]
    Grid2<double> eta0;  // common-stream share
    Grid3<double> eta;   // private shares
    Grid3<double> c;     // common-rate share [bit/s]

    static AllocationState zeros(const SystemConfig& config);
};

struct RateReport {
    Grid2<double> common_rate;         // R_c(m,k) [bit/s]
    Grid3<double> private_rate;        // R(m,u,k) [bit/s]
    std::vector<double> per_user_total;
    double sum_rate = 0.0;
};

// Signed slack per constraint, positive when satisfied.
struct ConstraintSlack {
    std::vector<double> qos;            // C1: total_u - R_min
    Grid2<double> common_rate;          // C2: R_c - sum_u x c
    Grid2<double> interference;         // C3: I_th - f p
    Grid2<double> split_budget;         // C4: 1 - eta0 - sum_u x eta
    double total_power = 0.0;           // C5: P_tot - sum p
};

struct Evaluation {
    RateReport rates;
    ConstraintSlack slack;
};

// (4 pi D / (c / f))^2.
double free_space_loss(double distance, double frequency);
// G_T G_R / loss.
double channel_gain(double tx_gain, double rx_gain, double loss);

double common_sinr(const SystemConfig& config, const ChannelSet& channels,
                   const AllocationState& alloc, const Assignment& assignment,
                   std::size_t m, std::size_t u, std::size_t k);

double private_sinr(const SystemConfig& config, const ChannelSet& channels,
                    const AllocationState& alloc, const Assignment& assignment,
                    std::size_t m, std::size_t u, std::size_t k);

// W log2(1 + min common SINR) over the users assigned to (m,k); 0 for an
// empty slot.
double common_rate(const SystemConfig& config, const ChannelSet& channels,
                   const AllocationState& alloc, const Assignment& assignment,
                   std::size_t m, std::size_t k);

double private_rate(const SystemConfig& config, const ChannelSet& channels,
                    const AllocationState& alloc, const Assignment& assignment,
                    std::size_t m, std::size_t u, std::size_t k);

// Exact rates and constraint slacks. Throws StructuralError if the
// assignment breaks C6.
Evaluation evaluate(const SystemConfig& config, const ChannelSet& channels,
                    const AllocationState& alloc, const Assignment& assignment);

// Largest relative violation over C2..C5 (0 when all hold).
double max_relative_violation(const SystemConfig& config, const Evaluation& eval);

} // namespace rsma
