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
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "rsma/assign.hpp"

namespace rsma {
namespace {

Grid3<double> distinct_gains(std::mt19937_64& rng, std::size_t M, std::size_t U, std::size_t K) {
    Grid3<double> h(M, U, K);
    std::vector<double> v(M * U * K);
    std::iota(v.begin(), v.end(), 1.0);
    std::shuffle(v.begin(), v.end(), rng);
    h.data() = v;
    return h;
}

ChannelSet with_gains(const Grid3<double>& h) {
    ChannelSet ch;
    ch.h = h;
    return ch;
}

TEST(UsersPerBeam, RoundsUp) {
    EXPECT_EQ(users_per_beam(5, 10), 2u);
    EXPECT_EQ(users_per_beam(3, 7), 3u);
    EXPECT_THROW(users_per_beam(0, 1), StructuralError);
}

TEST(GreedyAssign, SingleUserTakesBestSlot) {
    Grid3<double> h(2, 1, 3);
    h.data() = {1.0, 5.0, 2.0, 4.0, 9.0, 3.0};
    const auto x = greedy_assign(with_gains(h), 2, 3, 1);
    EXPECT_TRUE(x(1, 0, 1));
    EXPECT_TRUE(x.satisfies_single_slot());
}

TEST(GreedyAssign, MatchesExhaustiveEnumeration) {
    std::mt19937_64 rng(99);
    for (std::size_t M = 1; M <= 2; ++M)
        for (std::size_t K = 1; K <= 2; ++K)
            for (std::size_t U = 1; U <= 4; ++U)
                for (int t = 0; t < 25; ++t) {
                    const auto h = distinct_gains(rng, M, U, K);
                    const auto got = greedy_assign(with_gains(h), M, K, U);
                    const auto want = oracle::GreedyEnumerator(h, M, K, U).run();
                    ASSERT_EQ(got, want) << M << ' ' << K << ' ' << U << ' ' << t;
                }
}

TEST(GreedyAssign, UserPermutationKeepsSelectedPairs) {
    std::mt19937_64 rng(4);
    const std::size_t M = 3, K = 3, U = 6;
    const auto h = distinct_gains(rng, M, U, K);
    std::vector<std::size_t> perm(U);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Grid3<double> hp(M, U, K);
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t u = 0; u < U; ++u)
            for (std::size_t k = 0; k < K; ++k) hp(m, perm[u], k) = h(m, u, k);
    const auto collect = [&](const Grid3<double>& g) {
        std::set<std::tuple<double, std::size_t, std::size_t>> out;
        const auto x = greedy_assign(with_gains(g), M, K, U);
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t u = 0; u < U; ++u)
                for (std::size_t k = 0; k < K; ++k)
                    if (x(m, u, k)) out.insert({g(m, u, k), m, k});
        return out;
    };
    EXPECT_EQ(collect(h), collect(hp));
}

TEST(GreedyAssign, DefaultShapeTwoUsersPerBeamOnOneSubcarrier) {
    std::mt19937_64 rng(8);
    const auto h = distinct_gains(rng, 5, 10, 5);
    const auto x = greedy_assign(with_gains(h), 5, 5, 10);
    EXPECT_TRUE(x.satisfies_single_slot());
    for (std::size_t m = 0; m < 5; ++m) {
        std::size_t users = 0, carriers = 0;
        for (std::size_t k = 0; k < 5; ++k) {
            const auto n = x.users_in_slot(m, k).size();
            users += n;
            carriers += n > 0;
        }
        EXPECT_EQ(users, 2u);
        EXPECT_EQ(carriers, 1u);
    }
}

TEST(GreedyAssign, ShapeMismatchThrows) {
    Grid3<double> h(2, 2, 2, 1.0);
    EXPECT_THROW(greedy_assign(with_gains(h), 2, 2, 3), StructuralError);
}

TEST(RandomAssign, DeterministicInSeed) {
    EXPECT_EQ(random_assign(5, 5, 10, 42), random_assign(5, 5, 10, 42));
    EXPECT_NE(random_assign(5, 5, 10, 42), random_assign(5, 5, 10, 43));
}

TEST(RandomAssign, AlwaysSingleSlot) {
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const std::size_t M = 1 + s % 5, K = 1 + (s / 5) % 5, U = 1 + (s / 25) % 12;
        ASSERT_TRUE(random_assign(M, K, U, s).satisfies_single_slot()) << s;
    }
}

TEST(RandomAssign, BalancedBeamsAndUniformSlotLoad) {
    const std::size_t M = 5, K = 5, U = 10, N = 10000;
    std::vector<double> load(M * K, 0.0);
    for (std::uint64_t s = 0; s < N; ++s) {
        const auto x = random_assign(M, K, U, s);
        for (std::size_t m = 0; m < M; ++m) {
            std::size_t beam = 0;
            for (std::size_t k = 0; k < K; ++k) {
                const auto n = x.users_in_slot(m, k).size();
                beam += n;
                load[m * K + k] += static_cast<double>(n);
            }
            ASSERT_EQ(beam, U / M);
        }
    }
    // Slot load is U/M w.p. 1/K: mean (U/M)/K, variance (U/M)^2 (1/K)(1 - 1/K).
    const double mean = static_cast<double>(U) / M / K;
    const double sd = static_cast<double>(U) / M * std::sqrt((1.0 / K) * (1.0 - 1.0 / K));
    for (double l : load) EXPECT_LE(std::fabs(l / N - mean), 3.0 * sd / std::sqrt(double(N)));
}

} // namespace
} // namespace rsma
