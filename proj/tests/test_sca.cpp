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

#include <cmath>
#include <stdexcept>

#include "rsma/sca.hpp"

namespace rsma {
namespace {

TEST(SurrogateCoeffs, UnitSinr) {
    const auto s = surrogate_coeffs(1.0);
    EXPECT_DOUBLE_EQ(s.tau, 0.5);
    EXPECT_DOUBLE_EQ(s.omega, 1.0);
}

TEST(SurrogateCoeffs, SinrThree) {
    const auto s = surrogate_coeffs(3.0);
    EXPECT_DOUBLE_EQ(s.tau, 0.75);
    EXPECT_NEAR(s.omega, 2.0 - 0.75 * std::log2(3.0), 1e-15);
    EXPECT_NEAR(s.omega, 0.811278, 1e-6);
}

TEST(SurrogateCoeffs, HighSinrLimit) {
    const auto s = surrogate_coeffs(1e4);
    EXPECT_GT(s.tau, 0.999);
    EXPECT_LT(s.tau, 1.0);
    EXPECT_LT(s.omega, 0.01);
}

TEST(SurrogateCoeffs, DeadLinkAndDomain) {
    EXPECT_EQ(surrogate_coeffs(0.0), (SurrogatePoint{0.0, 0.0, 0.0}));
    EXPECT_THROW(surrogate_coeffs(-1.0), std::domain_error);
    EXPECT_THROW(surrogate_coeffs(INFINITY), std::domain_error);
}

TEST(SurrogateRate, ZeroSurrogate) {
    EXPECT_EQ(surrogate_rate(SurrogatePoint{}, 7.0, 1e6), 0.0);
}

TEST(SurrogateRate, ZeroActualSinrIsMinusInfinity) {
    EXPECT_EQ(surrogate_rate(surrogate_coeffs(2.0), 0.0, 1e6), -INFINITY);
}

TEST(SurrogateRate, TightAtExpansionPoint) {
    const double W = 1e7;
    for (double e = -6.0; e <= 6.0; e += 0.05) {
        const double g = std::pow(10.0, e);
        EXPECT_LT(std::fabs(surrogate_rate(surrogate_coeffs(g), g, W) - W * std::log2(1.0 + g)),
                  1e-10 * W)
            << "gamma " << g;
    }
}

TEST(SurrogateRate, LowerBoundOnGrid) {
    const double W = 1e7;
    for (int i = 0; i < 100; ++i) {
        const auto point = surrogate_coeffs(std::pow(10.0, -4.0 + 8.0 * i / 99.0));
        for (int j = 0; j < 100; ++j) {
            const double g = std::pow(10.0, -4.0 + 8.0 * j / 99.0);
            EXPECT_LE(surrogate_rate(point, g, W), W * std::log2(1.0 + g) + 1e-10 * W);
        }
    }
}

TEST(BuildSurrogates, CommonStreamAtWeakestUser) {
    SystemConfig cfg;
    cfg.num_beams = 1;
    cfg.num_subcarriers = 1;
    cfg.num_users = 2;
    cfg.noise_variance = 1.0;
    auto ch = make_empty_channels(cfg);
    ch.h(0, 0, 0) = 4.0;
    ch.h(0, 1, 0) = 1.0;
    auto a = AllocationState::zeros(cfg);
    a.p(0, 0) = 1.0;
    a.eta0(0, 0) = 0.5;
    a.eta(0, 0, 0) = a.eta(0, 1, 0) = 0.25;
    Assignment x(1, 2, 1);
    x.set(0, 0, 0);
    x.set(0, 1, 0);
    const auto s = build_surrogates(cfg, ch, a, x);
    EXPECT_EQ(s.common_user(0, 0), 1u);
    EXPECT_DOUBLE_EQ(s.common_streams(0, 0).gamma, common_sinr(cfg, ch, a, x, 0, 1, 0));
    EXPECT_DOUBLE_EQ(s.private_streams(0, 0, 0).gamma, private_sinr(cfg, ch, a, x, 0, 0, 0));
}

} // namespace
} // namespace rsma
