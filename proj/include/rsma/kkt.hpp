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
#include <optional>
#include <span>
#include <vector>

#include "rsma/model.hpp"
#include "rsma/polynomial.hpp"
#include "rsma/sca.hpp"

namespace rsma {

// Dual multipliers of the sum-rate Lagrangian.
//   qos          lambda1, per user (C1)
//   common_rate  lambda2, per (m,k) (C2)
//   interference lambda3, per (m,k) (C3)
//   split        lambda4, per (m,k) (C4)
//   power        lambda5, scalar   (C5)
// Rate-valued multipliers are expressed in Mbit/s so every family lives on a
// comparable scale.
struct DualState {
    std::vector<double> qos;
    Grid2<double> common_rate;
    Grid2<double> interference;
    Grid2<double> split;
    double power = 0.0;

    static DualState uniform(const SystemConfig& config, double value);
};

// One assigned user of a slot as seen by the closed-form updates.
struct SlotUserTerm {
    std::size_t user = 0;
    double gain = 0.0;        // h(m,u,k)
    double ambient = 0.0;     // I_p + sigma^2 [W]
    double share = 0.0;       // eta(m,u,k)
    double qos_dual = 0.0;    // lambda1_u
    SurrogatePoint point;     // private-stream surrogate

    // tau / ln 2: the derivative weight of W tau log2(.) w.r.t. ln(.).
    double weight() const;
};

// Per-slot data for the power and split updates at the current iterate.
struct SlotProblem {
    std::size_t m = 0;
    std::size_t k = 0;
    double bandwidth = 0.0;        // rate unit per unit spectral efficiency
    double geo_gain = 0.0;         // f(m,k)
    double eta0 = 0.0;
    SurrogatePoint common_point;
    std::size_t common_user = 0;   // position in `users` of the weakest user
    double common_rate_dual = 0.0; // lambda2
    double interference_dual = 0.0;// lambda3
    double split_dual = 0.0;       // lambda4
    double power_dual = 0.0;       // lambda5
    std::vector<SlotUserTerm> users;

    double common_weight() const; // tau_c / ln 2
    double power_price() const { return power_dual + interference_dual * geo_gain; }
};

// `rate_unit` converts bit/s into the unit of the rate duals (1e-6 for Mbit/s).
SlotProblem make_slot_problem(const SystemConfig& config, const ChannelSet& channels,
                              const AllocationState& alloc, const Assignment& assignment,
                              const SurrogateSet& surrogates, const DualState& duals,
                              std::size_t m, std::size_t k, double rate_unit);

// ---------------------------------------------------------------- power ---

struct CubicCoeffs {
    double t3 = 0.0;
    double t2 = 0.0;
    double t1 = 0.0;
    double t0 = 0.0;
};

// Boxed published coefficients of the power stationarity cubic, summed over
// ordered pairs (u, j != u) of co-slot users. Each gamma symbol is taken as
// the corresponding term weight (tau / ln 2). A single-user slot has no
// pairs and yields all zeros. Throws std::invalid_argument on an empty slot.
CubicCoeffs cubic_coeffs(const SlotProblem& slot);

// All real roots of t3 p^3 + t2 p^2 + t1 p + t0, with degenerate leading
// coefficients handled as lower-degree polynomials.
// Throws std::invalid_argument when all four coefficients are zero.
std::vector<double> solve_cubic(const CubicCoeffs& coeffs);

// Surrogate Lagrangian contribution of slot (m,k) as a function of its power:
// sum_u (1 + lambda1_u) W (tau_u log2 gamma_u(p) + omega_u)
//   + lambda2 W (tau_c log2 gamma_c(p) + omega_c) - (lambda5 + lambda3 f) p.
// Strictly concave on p > 0; -infinity at p = 0 when any weight is positive.
double power_lagrangian(const SlotProblem& slot, double p);
double power_lagrangian_derivative(const SlotProblem& slot, double p);

// Numerator of d/dp power_lagrangian after clearing the positive factor
// p * prod(denominators); its unique positive root is the stationary power.
Polynomial power_stationarity(const SlotProblem& slot);

// Best of {roots in (0, p_max]} U {p_max, 0} under power_lagrangian; ties go
// to the smaller power. Never leaves [0, p_max].
double select_power_root(std::span<const double> roots, const SlotProblem& slot, double p_max);

// Convenience: stationarity roots plus selection.
double solve_slot_power(const SlotProblem& slot, double p_max);

// ---------------------------------------------------------------- splits ---

struct QuadCoeffs {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double mu3 = 0.0;
};

// Coefficients of eta_u = (mu1 +- sqrt(mu2)) / mu3 for user at position
// `local` in slot.users, given slot power p. Returns std::nullopt when the
// quadratic is undefined (lambda4 ~ 0, p = 0 or no co-slot user).
std::optional<QuadCoeffs> quad_coeffs(const SlotProblem& slot, std::size_t local, double p);

struct ShareSolution {
    double value = 0.0;
    bool clamped = false; // no branch inside [0, 1]; the larger one was clamped
};

// Picks the branch of (mu1 +- sqrt(mu2)) / mu3 lying in [0, 1] (the larger if
// both do). With neither inside, the larger branch (the stationary maximum
// for mu3 > 0) is clamped to its nearest endpoint. std::nullopt when
// mu2 < 0 or mu3 == 0.
std::optional<ShareSolution> solve_eta(const QuadCoeffs& coeffs);

// Surrogate Lagrangian of one private share with everything else fixed:
// the user's own term, the co-slot private terms it interferes with, and
// -lambda4 eta.
double share_lagrangian(const SlotProblem& slot, std::size_t local, double eta, double p);

// Private share for user `local`: closed form above, or lambda-weighted
// single-user form when the user is alone in the slot. std::nullopt on the
// lambda4 ~ 0 fallback path.
std::optional<ShareSolution> solve_private_share(const SlotProblem& slot, std::size_t local,
                                                 double p);

// clamp(lambda2 (tau_c / ln 2) W / lambda4, 0, 1); std::nullopt when lambda4 ~ 0.
std::optional<double> solve_eta0(const SlotProblem& slot);

inline constexpr double kSplitDualFloor = 1e-9;

// Euclidean projection of (eta0, eta_1..eta_n) onto
// {x >= 0, sum x <= 1}.
std::vector<double> project_to_simplex(std::span<const double> shares);

} // namespace rsma
