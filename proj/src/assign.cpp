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

#include "rsma/assign.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rsma {

namespace {

void check_capacity(std::size_t M, std::size_t K, std::size_t U) {
    if (M == 0 || K == 0 || U == 0) throw StructuralError("assignment: empty dimension");
    const std::size_t cap = users_per_beam(M, U);
    if (U > M * K * cap) {
        throw StructuralError("assignment: " + std::to_string(U) + " users exceed capacity " +
                              std::to_string(M * K * cap));
    }
}

} // namespace

std::size_t users_per_beam(std::size_t num_beams, std::size_t num_users) {
    if (num_beams == 0) throw StructuralError("users_per_beam: no beams");
    return (num_users + num_beams - 1) / num_beams;
}

Assignment greedy_assign(const ChannelSet& channels, std::size_t M, std::size_t K,
                         std::size_t U) {
    check_capacity(M, K, U);
    const auto& h = channels.h;
    if (h.beams() != M || h.users() != U || h.subcarriers() != K)
        throw StructuralError("greedy_assign: gain tensor shape mismatch");

    Assignment x(M, U, K);
    std::vector<bool> pooled(U, true);
    std::vector<std::optional<std::size_t>> carrier(M);
    std::size_t remaining = U;
    const std::size_t rounds = users_per_beam(M, U);

    for (std::size_t round = 0; round < rounds && remaining > 0; ++round) {
        std::vector<bool> served(M, false);
        for (std::size_t pick = 0; pick < M && remaining > 0; ++pick) {
            double best = -1.0;
            std::size_t bm = 0, bu = 0, bk = 0;
            // Loop order realises the tie-break: user, subcarrier, beam.
            for (std::size_t u = 0; u < U; ++u) {
                if (!pooled[u]) continue;
                for (std::size_t k = 0; k < K; ++k) {
                    for (std::size_t m = 0; m < M; ++m) {
                        if (served[m] || (carrier[m] && *carrier[m] != k)) continue;
                        if (h(m, u, k) > best) {
                            best = h(m, u, k);
                            bm = m;
                            bu = u;
                            bk = k;
                        }
                    }
                }
            }
            x.set(bm, bu, bk);
            served[bm] = true;
            carrier[bm] = bk;
            pooled[bu] = false;
            --remaining;
        }
    }
    return x;
}

Assignment random_assign(std::size_t M, std::size_t K, std::size_t U, std::uint64_t seed) {
    check_capacity(M, K, U);
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> users(U), beams(M);
    std::iota(users.begin(), users.end(), std::size_t{0});
    std::iota(beams.begin(), beams.end(), std::size_t{0});
    std::shuffle(users.begin(), users.end(), rng);
    std::shuffle(beams.begin(), beams.end(), rng);
    std::uniform_int_distribution<std::size_t> pick(0, K - 1);
    std::vector<std::size_t> carrier(M);
    for (auto& k : carrier) k = pick(rng);

    Assignment x(M, U, K);
    for (std::size_t i = 0; i < U; ++i) {
        const std::size_t m = beams[i % M];
        x.set(m, users[i], carrier[m]);
    }
    return x;
}

} // namespace rsma
