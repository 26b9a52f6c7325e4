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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rsma/kkt.hpp"
#include "rsma/model.hpp"

namespace rsma {

// Base step sizes; iteration t of an inner loop uses base / sqrt(t).
// Rate-valued residuals are measured in Mbit/s, powers in W.
struct StepSizes {
    double qos = 0.296;          // lambda1
    double common_rate = 0.305;  // lambda2
    double interference = 0.053; // lambda3
    double split = 61.4;         // lambda4
    double power = 0.003;        // lambda5
    double common_share = 4.15;  // c, Mbit/s per unit subgradient

    StepSizes scaled(double factor) const;
};

// What the split update does when the slot's split multiplier is ~0.
// project: keep the previous splits projected onto the budget.
// floor: run the closed forms with the multiplier raised to kSplitDualFloor.
enum class SplitFallback { project, floor };

struct SolverOptions {
    double tol_outer = 1e-4;       // relative sum-rate change
    double tol_feas = 1e-6;        // relative constraint violation
    double tol_dual = 1e-4;        // dual change norm, every family
    std::size_t inner_max = 500;
    std::size_t outer_max = 50;
    std::size_t primal_sweeps = 50; // per-slot block-ascent sweeps per dual step
    double primal_tol = 1e-9;       // relative change that ends the sweeps
    StepSizes step;
    double dual_init = 0.1;
    SplitFallback split_fallback = SplitFallback::floor;
    double infeasible_dual_cap = 1e6;
    double rate_unit = 1e-6;       // bit/s -> Mbit/s
    std::uint64_t seed = 1;        // random assignment for Rand-x
    bool record_inner_trace = false;

    // Throws ConfigError on non-positive tolerances, steps or caps.
    void validate() const;
};

inline constexpr std::size_t kDualFamilies = 5;
inline const std::array<std::string, kDualFamilies> kDualFamilyNames = {
    "lambda1", "lambda2", "lambda3", "lambda4", "lambda5"};

// L2 norm of each multiplier family.
std::array<double, kDualFamilies> dual_norms(const DualState& duals);
// L2 norm of the per-family difference.
std::array<double, kDualFamilies> dual_change(const DualState& a, const DualState& b);

struct IterationRecord {
    std::size_t outer = 0;
    std::size_t inner = 0;  // 0 marks an outer-iteration summary
    double sum_rate = 0.0;  // bit/s
    double max_violation = 0.0;
    std::array<double, kDualFamilies> dual_norm{};
    std::array<double, kDualFamilies> dual_change{};
};

struct OuterRecord {
    std::size_t outer = 0;
    double candidate_sum_rate = 0.0; // bit/s, exact
    bool accepted = false;
    std::size_t inner_iterations = 0;
    bool duals_converged = false;
};

struct SolveReport {
    std::string scheme;
    Assignment assignment;
    AllocationState allocation;
    Evaluation evaluation;
    DualState duals;
    std::vector<IterationRecord> trace;
    std::vector<OuterRecord> outer;
    double sum_rate = 0.0;            // bit/s
    double max_violation = 0.0;       // C2..C5, relative
    bool converged = false;           // outer loop met tol_outer
    bool duals_converged = false;     // every inner loop met tol_dual
    bool qos_satisfied = false;       // C1 within tol_feas
    bool infeasible = false;          // lambda1 diverged with C1 violated
    bool feasible = false;            // C1..C6 within tol_feas
    std::size_t outer_iterations = 0;
    std::size_t inner_iterations = 0; // summed over outer iterations
    double wall_time_s = 0.0;
};

// Projected step on the common-rate shares of assigned users:
// c <- max(0, c + delta (1 + lambda1_u - lambda2_mk)). Unassigned entries
// are left untouched. `delta` is expressed in the unit of c.
Grid3<double> update_common_splits(const AllocationState& state, const DualState& duals,
                                   const Assignment& assignment, double delta);

// Projected subgradient step on every multiplier family using the residuals
// of `state` and `rates` (bit/s, converted with rate_unit).
DualState update_duals(const SystemConfig& config, const ChannelSet& channels,
                       const Assignment& assignment, const AllocationState& state,
                       const RateReport& rates, const DualState& duals, const StepSizes& delta,
                       double rate_unit);

// p = min(I_th / f, P_tot / (M K)) on assigned slots, 0 elsewhere.
Grid2<double> fixed_power(const SystemConfig& config, const ChannelSet& channels,
                          const Assignment& assignment);

// Starting iterate: Fix-p powers, eta0 = 0.5, private shares 0.5 / n.
AllocationState initial_allocation(const SystemConfig& config, const ChannelSet& channels,
                                   const Assignment& assignment);

// Joint power, split and common-rate optimisation on a given assignment.
// When `fixed` is true the powers stay at fixed_power().
SolveReport solve_assigned(const SystemConfig& config, const ChannelSet& channels,
                           const Assignment& assignment, const SolverOptions& options,
                           bool fixed, std::string scheme);

// Greedy assignment, optimised powers.
SolveReport solve_opt(const SystemConfig& config, const ChannelSet& channels,
                      const SolverOptions& options);
// Greedy assignment, fixed equal powers.
SolveReport solve_fix_p(const SystemConfig& config, const ChannelSet& channels,
                        const SolverOptions& options);
// Random assignment drawn from `seed`, optimised powers.
SolveReport solve_rand_x(const SystemConfig& config, const ChannelSet& channels,
                         const SolverOptions& options, std::uint64_t seed);

} // namespace rsma
