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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "rsma/kkt.hpp"
#include "rsma/polynomial.hpp"

namespace rsma {
namespace {

// Two identical users, h = 1, shares 1/2, I_p + sigma^2 = 1, price 1,
// lambda1 = lambda2 = 0 and weight tau / ln 2 = 1 with W = 4. By hand:
// t3 = 2 (1/4) = 0.5, t2 = 2 (1/2 + 1/2) = 2, t1 = 2 (1 - 4) = -6,
// t0 = -2 (4 * 2) = -16, and 0.5 p^3 + 2 p^2 - 6 p - 16 = 0.5 (p + 2)(p^2 + 2p - 16).
SlotProblem symmetric_pair() {
    SlotProblem s;
    s.bandwidth = 4.0;
    s.power_dual = 1.0;
    s.split_dual = 1.0;
    s.eta0 = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        SlotUserTerm t;
        t.user = i;
        t.gain = 1.0;
        t.ambient = 1.0;
        t.share = 0.5;
        t.point = {1.0, std::numbers::ln2, 0.3};
        s.users.push_back(t);
    }
    return s;
}

TEST(CubicCoeffs, HandExpansion) {
    const auto c = cubic_coeffs(symmetric_pair());
    EXPECT_DOUBLE_EQ(c.t3, 0.5);
    EXPECT_DOUBLE_EQ(c.t2, 2.0);
    EXPECT_NEAR(c.t1, -6.0, 1e-12);
    EXPECT_NEAR(c.t0, -16.0, 1e-12);
}

TEST(CubicCoeffs, PrintedRootMatchesExactStationarity) {
    const auto slot = symmetric_pair();
    const auto roots = solve_cubic(cubic_coeffs(slot));
    ASSERT_EQ(roots.size(), 3u);
    const double expected = std::sqrt(17.0) - 1.0;
    EXPECT_NEAR(roots.back(), expected, 1e-12);
    EXPECT_NEAR(solve_slot_power(slot, 100.0), expected, 1e-12);
}

TEST(CubicCoeffs, ZeroMultipliersAndWeights) {
    auto slot = symmetric_pair();
    slot.power_dual = 0.0;
    for (auto& u : slot.users) u.point = {};
    const auto c = cubic_coeffs(slot);
    EXPECT_EQ(c.t3, 0.0);
    EXPECT_EQ(c.t2, 0.0);
    EXPECT_EQ(c.t1, 0.0);
    EXPECT_EQ(c.t0, 0.0);
}

TEST(CubicCoeffs, SingleUserSlotHasNoPairs) {
    auto slot = symmetric_pair();
    slot.users.pop_back();
    const auto c = cubic_coeffs(slot);
    EXPECT_EQ(c.t3, 0.0);
    EXPECT_EQ(c.t0, 0.0);
}

TEST(CubicCoeffs, InactiveSlotThrows) {
    EXPECT_THROW(cubic_coeffs(SlotProblem{}), std::invalid_argument);
}

TEST(CubicCoeffs, MatchesTermByTermPrintedExpressions) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + trial % 3;
        oracle::PrintedSymbols s;
        s.sigma2 = 0.1 + unit(rng);
        s.lambda2 = 3.0 * unit(rng);
        s.lambda3 = unit(rng);
        s.lambda5 = unit(rng);
        s.f = oracle::log_uniform(rng, 0.05, 500.0);
        s.gamma_c = unit(rng) / std::numbers::ln2;
        s.W = 10.0;
        SlotProblem slot;
        slot.bandwidth = s.W;
        slot.geo_gain = s.f;
        slot.common_rate_dual = s.lambda2;
        slot.interference_dual = s.lambda3;
        slot.power_dual = s.lambda5;
        slot.common_point.tau = s.gamma_c * std::numbers::ln2;
        for (std::size_t i = 0; i < n; ++i) {
            s.h.push_back(oracle::log_uniform(rng, 1.0, 1e4));
            s.eta.push_back(unit(rng) / static_cast<double>(n));
            s.Ip.push_back(4.0 * unit(rng));
            s.gamma.push_back(unit(rng) / std::numbers::ln2);
            s.lambda1.push_back(2.0 * unit(rng));
            SlotUserTerm t;
            t.gain = s.h[i];
            t.share = s.eta[i];
            t.ambient = s.Ip[i] + s.sigma2;
            t.qos_dual = s.lambda1[i];
            t.point.tau = s.gamma[i] * std::numbers::ln2;
            slot.users.push_back(t);
        }
        const auto got = cubic_coeffs(slot);
        const auto want = oracle::printed_cubic(s);
        const auto close = [](double a, double b) {
            return std::fabs(a - b) <= 1e-10 * std::max(std::fabs(a), std::fabs(b)) + 1e-300;
        };
        ASSERT_TRUE(close(got.t3, want.t3)) << trial;
        ASSERT_TRUE(close(got.t2, want.t2)) << trial;
        ASSERT_TRUE(close(got.t1, want.t1)) << trial;
        ASSERT_TRUE(close(got.t0, want.t0)) << trial;
        EXPECT_LE(got.t0, 0.0);
    }
}

TEST(SolveCubic, Examples) {
    const auto a = solve_cubic({1.0, 0.0, -1.0, 0.0});
    ASSERT_EQ(a.size(), 3u);
    EXPECT_NEAR(a[0], -1.0, 1e-12);
    EXPECT_NEAR(a[1], 0.0, 1e-12);
    EXPECT_NEAR(a[2], 1.0, 1e-12);
    const auto b = solve_cubic({1.0, -6.0, 11.0, -6.0});
    ASSERT_EQ(b.size(), 3u);
    EXPECT_NEAR(b[0], 1.0, 1e-10);
    EXPECT_NEAR(b[1], 2.0, 1e-10);
    EXPECT_NEAR(b[2], 3.0, 1e-10);
    const auto c = solve_cubic({0.0, 1.0, -4.0, 4.0});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NEAR(c[0], 2.0, 1e-7);
}

TEST(SolveCubic, ZeroPolynomialThrows) {
    EXPECT_THROW(solve_cubic({0.0, 0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(SolveCubic, ResidualsOnRandomCoefficients) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        const double c[] = {coef(rng), coef(rng), coef(rng), coef(rng)};
        for (double r : real_roots(c)) {
            const double res = std::fabs(static_cast<double>(evaluate_polynomial_exact(c, r)));
            ASSERT_LT(res, 1e-8 * std::max(1.0, std::fabs(c[0]))) << i;
        }
    }
}

TEST(Polynomial, MultiplyAndEvaluate) {
    const auto p = multiply({1.0, 1.0}, {-1.0, 1.0});
    EXPECT_EQ(p, (Polynomial{-1.0, 0.0, 1.0}));
    EXPECT_DOUBLE_EQ(evaluate_polynomial(p, 3.0), 8.0);
}

TEST(SelectPowerRoot, DegenerateBox) {
    const auto slot = symmetric_pair();
    EXPECT_EQ(select_power_root(std::vector<double>{1.0}, slot, 0.0), 0.0);
}

TEST(SelectPowerRoot, NegativeRootsGiveBoundary) {
    const auto slot = symmetric_pair();
    const std::vector<double> roots{-3.0, -1.0};
    // The Lagrangian is -infinity at 0, so p_max wins.
    EXPECT_EQ(select_power_root(roots, slot, 2.0), 2.0);
}

TEST(SelectPowerRoot, InteriorRoot) {
    const auto slot = symmetric_pair();
    const double r = std::sqrt(17.0) - 1.0;
    EXPECT_EQ(select_power_root(std::vector<double>{-2.0, r}, slot, 10.0), r);
    EXPECT_EQ(select_power_root(std::vector<double>{-2.0, r}, slot, 2.0), 2.0);
}

TEST(SelectPowerRoot, GridOracleAndBox) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto inst = oracle::random_slot(rng, 1 + i % 3);
        const double p = solve_slot_power(inst.slot, inst.p_max);
        ASSERT_GE(p, 0.0);
        ASSERT_LE(p, inst.p_max);
        const double g = oracle::grid_best_power(inst.slot, inst.p_max, 10000);
        EXPECT_LE(std::fabs(p - g), inst.p_max / 10000.0) << i;
    }
}

TEST(SelectPowerRoot, StationarityAtInteriorRoot) {
    std::mt19937_64 rng(9);
    int interior = 0;
    for (int i = 0; i < 500; ++i) {
        const auto inst = oracle::random_slot(rng, 2);
        const double p = solve_slot_power(inst.slot, inst.p_max);
        if (!(p > 0.0 && p < inst.p_max)) continue;
        ++interior;
        const double h = 1e-6 * p;
        const double d = (power_lagrangian(inst.slot, p + h) - power_lagrangian(inst.slot, p - h)) /
                         (2.0 * h);
        EXPECT_LT(std::fabs(d), 1e-4) << i;
    }
    EXPECT_GT(interior, 0);
}

TEST(QuadCoeffs, ZeroWeights) {
    auto slot = symmetric_pair();
    for (auto& u : slot.users) u.point = {};
    slot.split_dual = 2.0;
    const auto q = quad_coeffs(slot, 0, 1.0);
    ASSERT_TRUE(q);
    EXPECT_DOUBLE_EQ(q->mu1, -2.0 * 1.0);
    EXPECT_DOUBLE_EQ(q->mu2, q->mu1 * q->mu1);
    EXPECT_GT(q->mu3, 0.0);
    EXPECT_DOUBLE_EQ((q->mu1 + std::sqrt(q->mu2)) / q->mu3, 0.0);
}

TEST(QuadCoeffs, UndefinedCases) {
    auto slot = symmetric_pair();
    EXPECT_FALSE(quad_coeffs(slot, 0, 0.0));
    slot.split_dual = 0.0;
    EXPECT_FALSE(quad_coeffs(slot, 0, 1.0));
}

TEST(SolveEta, Examples) {
    const auto a = solve_eta({1.0, 0.0, 2.0});
    ASSERT_TRUE(a);
    EXPECT_DOUBLE_EQ(a->value, 0.5);
    EXPECT_FALSE(a->clamped);
    const auto b = solve_eta({6.0, 4.0, 2.0});  // branches 4 and 2
    ASSERT_TRUE(b);
    EXPECT_EQ(b->value, 1.0);
    EXPECT_TRUE(b->clamped);
    EXPECT_FALSE(solve_eta({1.0, -1.0, 1.0}));
    EXPECT_FALSE(solve_eta({1.0, 1.0, 0.0}));
}

TEST(SolveEta, AlwaysInUnitInterval) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const auto s = solve_eta({u(rng), std::fabs(u(rng)), u(rng)});
        if (!s) continue;
        ASSERT_GE(s->value, 0.0);
        ASSERT_LE(s->value, 1.0);
    }
}

TEST(SolvePrivateShare, TwoUserGridOracle) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto inst = oracle::random_slot(rng, 2);
        const double p = inst.p_max * (0.01 + 0.99 * unit(rng));
        for (std::size_t local = 0; local < 2; ++local) {
            const auto s = solve_private_share(inst.slot, local, p);
            ASSERT_TRUE(s);
            const double g = oracle::grid_best_share(inst.slot, local, p, 10000);
            EXPECT_LE(std::fabs(s->value - g), 1e-4) << i;
        }
    }
}

TEST(SolvePrivateShare, SingleUserForm) {
    auto slot = symmetric_pair();
    slot.users.pop_back();
    slot.split_dual = 8.0;  // own weight W * 1 = 4 -> eta = 0.5
    const auto s = solve_private_share(slot, 0, 1.0);
    ASSERT_TRUE(s);
    EXPECT_DOUBLE_EQ(s->value, 0.5);
    slot.split_dual = 0.0;
    EXPECT_FALSE(solve_private_share(slot, 0, 1.0));
}

TEST(SolveEta0, Examples) {
    SlotProblem slot;
    slot.bandwidth = 10.0;
    slot.common_point = surrogate_coeffs(1.0);
    slot.split_dual = 100.0;
    slot.common_rate_dual = 0.0;
    EXPECT_EQ(*solve_eta0(slot), 0.0);
    slot.common_rate_dual = slot.split_dual / (slot.common_weight() * slot.bandwidth);
    EXPECT_NEAR(*solve_eta0(slot), 1.0, 1e-12);
    slot.common_rate_dual *= 0.25;
    const double v = *solve_eta0(slot);
    slot.common_rate_dual *= 2.0;
    EXPECT_NEAR(*solve_eta0(slot), 2.0 * v, 1e-12);
    slot.split_dual = 0.0;
    EXPECT_FALSE(solve_eta0(slot));
}

TEST(ProjectToSimplex, Cases) {
    const std::vector<double> inside{0.2, 0.3};
    EXPECT_EQ(project_to_simplex(inside), inside);
    const auto a = project_to_simplex(std::vector<double>{1.0, 1.0});
    EXPECT_DOUBLE_EQ(a[0], 0.5);
    EXPECT_DOUBLE_EQ(a[1], 0.5);
    const auto b = project_to_simplex(std::vector<double>{2.0, 0.0, -1.0});
    EXPECT_DOUBLE_EQ(b[0], 1.0);
    EXPECT_DOUBLE_EQ(b[1], 0.0);
    EXPECT_DOUBLE_EQ(b[2], 0.0);
}

} // namespace
} // namespace rsma
