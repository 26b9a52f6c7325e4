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

// Reference implementations shared by the unit tests and the acceptance
// binary. None of them call into the closed forms they check.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "rsma/kkt.hpp"

namespace rsma::oracle {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

// Slot instance with default-scenario magnitudes: gains around the 600 km
// link budget, I_p + sigma^2 = 4.1 W, rates in Mbit/s.
struct RandomSlot {
    SlotProblem slot;
    double p_max = 0.0;
};

inline RandomSlot random_slot(std::mt19937_64& rng, std::size_t users) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RandomSlot r;
    SlotProblem& s = r.slot;
    s.bandwidth = 10.0;
    s.geo_gain = log_uniform(rng, 0.05, 500.0);
    s.eta0 = 0.05 + 0.5 * unit(rng);
    s.common_point = surrogate_coeffs(log_uniform(rng, 1e-2, 1e3));
    s.common_rate_dual = 3.0 * unit(rng);
    s.interference_dual = 0.5 * unit(rng);
    s.split_dual = log_uniform(rng, 0.1, 100.0);
    s.power_dual = log_uniform(rng, 1e-3, 1.0);
    double left = 1.0 - s.eta0;
    for (std::size_t i = 0; i < users; ++i) {
        SlotUserTerm t;
        t.user = i;
        t.gain = log_uniform(rng, 250.0, 12000.0);
        t.ambient = 4.1;
        t.share = left * (0.05 + 0.9 * unit(rng)) / static_cast<double>(users - i);
        left -= t.share;
        t.qos_dual = 2.0 * unit(rng);
        t.point = surrogate_coeffs(log_uniform(rng, 1e-2, 1e3));
        s.users.push_back(t);
    }
    std::size_t weakest = 0;
    for (std::size_t i = 1; i < users; ++i)
        if (s.users[i].gain < s.users[weakest].gain) weakest = i;
    s.common_user = weakest;
    r.p_max = std::min(2.0 / s.geo_gain, 50.0);
    return r;
}

// Arg max of the slot power Lagrangian on p_max * i / n, i = 0..n.
inline double grid_best_power(const SlotProblem& slot, double p_max, std::size_t n) {
    double best_p = 0.0, best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= n; ++i) {
        const double p = p_max * static_cast<double>(i) / static_cast<double>(n);
        const double v = power_lagrangian(slot, p);
        if (v > best_v) {
            best_v = v;
            best_p = p;
        }
    }
    return best_p;
}

// Arg max of the private-share Lagrangian on i / n, i = 0..n.
inline double grid_best_share(const SlotProblem& slot, std::size_t local, double p,
                              std::size_t n) {
    double best_e = 0.0, best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= n; ++i) {
        const double e = static_cast<double>(i) / static_cast<double>(n);
        const double v = share_lagrangian(slot, local, e, p);
        if (v > best_v) {
            best_v = v;
            best_e = e;
        }
    }
    return best_e;
}

// Published power-cubic coefficients written out per symbol: I_p and sigma^2
// kept apart, the price as lambda5 + f lambda3 x, every x = 1.
struct PrintedSymbols {
    std::vector<double> h, eta, Ip, gamma, lambda1;
    double sigma2 = 0.0, lambda2 = 0.0, lambda3 = 0.0, lambda5 = 0.0, f = 0.0;
    double gamma_c = 0.0, W = 0.0;
};

inline CubicCoeffs printed_cubic(const PrintedSymbols& s) {
    CubicCoeffs c;
    const double price = s.lambda5 + s.f * s.lambda3;
    const std::size_t n = s.h.size();
    for (std::size_t u = 0; u < n; ++u) {
        const double N = s.Ip[u] + s.sigma2;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == u) continue;
            c.t3 += s.h[j] * s.h[u] * s.eta[j] * s.eta[u] * price;
            c.t2 += s.h[j] * s.eta[u] * N * price +
                    s.h[u] * s.eta[j] *
                        (s.lambda5 * N + s.f * s.lambda3 * N -
                         s.h[j] * s.eta[u] * (s.lambda2 * s.gamma_c + s.lambda1[u] * s.gamma[u]) * s.W);
            c.t1 += N * (s.lambda5 * s.sigma2 + s.f * s.lambda3 * s.sigma2 +
                         s.Ip[u] * (s.lambda5 + s.f * s.lambda3) +
                         s.W * (-s.h[j] * s.eta[u] *
                                    (s.lambda2 * s.gamma_c + s.gamma[u] + s.lambda1[u] * s.gamma[u]) -
                                s.h[u] * s.eta[j] *
                                    (s.gamma[j] + s.lambda2 * s.gamma_c + s.lambda1[u] * s.gamma[u])));
            c.t0 += -N * N * s.W *
                    (s.gamma[j] + s.lambda2 * s.gamma_c + s.gamma[u] + s.lambda1[u] * s.gamma[u]);
        }
    }
    return c;
}

// Greedy by exhaustive enumeration: every legal pick sequence (rounds of one
// user per beam, a beam's subcarrier fixed by its first pick) is generated
// and the lexicographically largest gain sequence wins. With distinct gains
// this is the unique round-wise greedy outcome.
class GreedyEnumerator {
public:
    GreedyEnumerator(const Grid3<double>& h, std::size_t M, std::size_t K, std::size_t U)
        : h_(h), M_(M), K_(K), U_(U), rounds_((U + M - 1) / M) {}

    Assignment run() {
        std::vector<int> carrier(M_, -1);
        std::vector<bool> pooled(U_, true), served(M_, false);
        std::vector<Pick> seq;
        recurse(seq, carrier, pooled, served, 0);
        Assignment x(M_, U_, K_);
        for (const auto& p : best_) x.set(p.m, p.u, p.k);
        return x;
    }

private:
    struct Pick {
        std::size_t m, u, k;
        double gain;
    };

    bool better(const std::vector<Pick>& a) const {
        if (best_.empty()) return true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].gain != best_[i].gain) return a[i].gain > best_[i].gain;
        }
        return false;
    }

    void recurse(std::vector<Pick>& seq, std::vector<int>& carrier, std::vector<bool>& pooled,
                 std::vector<bool>& served, std::size_t round) {
        if (seq.size() == U_) {
            if (better(seq)) best_ = seq;
            return;
        }
        bool round_done = true;
        for (std::size_t m = 0; m < M_; ++m) round_done = round_done && served[m];
        if (round_done) {
            if (round + 1 >= rounds_) return;
            std::vector<bool> fresh(M_, false);
            recurse(seq, carrier, pooled, fresh, round + 1);
            return;
        }
        for (std::size_t m = 0; m < M_; ++m) {
            if (served[m]) continue;
            for (std::size_t k = 0; k < K_; ++k) {
                if (carrier[m] >= 0 && static_cast<std::size_t>(carrier[m]) != k) continue;
                for (std::size_t u = 0; u < U_; ++u) {
                    if (!pooled[u]) continue;
                    const int saved = carrier[m];
                    carrier[m] = static_cast<int>(k);
                    pooled[u] = false;
                    served[m] = true;
                    seq.push_back({m, u, k, h_(m, u, k)});
                    recurse(seq, carrier, pooled, served, round);
                    seq.pop_back();
                    served[m] = false;
                    pooled[u] = true;
                    carrier[m] = saved;
                }
            }
        }
    }

    const Grid3<double>& h_;
    std::size_t M_, K_, U_, rounds_;
    std::vector<Pick> best_;
};

} // namespace rsma::oracle
