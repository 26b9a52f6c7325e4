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

#include "rsma/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rsma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double share_total(const SlotProblem& slot) {
    double s = 0.0;
    for (const auto& t : slot.users) s += t.share;
    return s;
}

// A concave term coef * tau * log2(num * p / (ambient + slope * p)) of the
// power Lagrangian; `num` collects the p-independent numerator factors.
struct PowerTerm {
    double coef;    // multiplier (1 + lambda1) W or lambda2 W
    double tau;
    double omega;
    double num;
    double ambient;
    double slope;
};

std::vector<PowerTerm> power_terms(const SlotProblem& slot) {
    std::vector<PowerTerm> terms;
    const double total = share_total(slot);
    for (const auto& t : slot.users) {
        if (t.point.tau <= 0.0 || t.gain * t.share <= 0.0) continue;
        terms.push_back({(1.0 + t.qos_dual) * slot.bandwidth, t.point.tau, t.point.omega,
                         t.gain * t.share, t.ambient, t.gain * (total - t.share)});
    }
    if (!slot.users.empty() && slot.common_point.tau > 0.0 && slot.common_rate_dual > 0.0) {
        const auto& weak = slot.users.at(slot.common_user);
        if (weak.gain * slot.eta0 > 0.0) {
            terms.push_back({slot.common_rate_dual * slot.bandwidth, slot.common_point.tau,
                             slot.common_point.omega, weak.gain * slot.eta0, weak.ambient,
                             weak.gain * total});
        }
    }
    return terms;
}

} // namespace

DualState DualState::uniform(const SystemConfig& config, double value) {
    const auto M = config.num_beams, K = config.num_subcarriers;
    return {std::vector<double>(config.num_users, value), Grid2<double>(M, K, value),
            Grid2<double>(M, K, value), Grid2<double>(M, K, value), value};
}

double SlotUserTerm::weight() const { return point.tau / std::numbers::ln2; }

double SlotProblem::common_weight() const { return common_point.tau / std::numbers::ln2; }

SlotProblem make_slot_problem(const SystemConfig& config, const ChannelSet& channels,
                              const AllocationState& alloc, const Assignment& assignment,
                              const SurrogateSet& surrogates, const DualState& duals,
                              std::size_t m, std::size_t k, double rate_unit) {
    SlotProblem slot;
    slot.m = m;
    slot.k = k;
    slot.bandwidth = config.bandwidth * rate_unit;
    slot.geo_gain = channels.f(m, k);
    slot.eta0 = alloc.eta0(m, k);
    slot.common_point = surrogates.common_streams(m, k);
    slot.common_rate_dual = duals.common_rate(m, k);
    slot.interference_dual = duals.interference(m, k);
    slot.split_dual = duals.split(m, k);
    slot.power_dual = duals.power;
    for (std::size_t u : assignment.users_in_slot(m, k)) {
        if (u == surrogates.common_user(m, k)) slot.common_user = slot.users.size();
        slot.users.push_back({u, channels.h(m, u, k),
                              channels.interference(m, u, k) + config.noise_variance,
                              alloc.eta(m, u, k), duals.qos[u], surrogates.private_streams(m, u, k)});
    }
    return slot;
}

CubicCoeffs cubic_coeffs(const SlotProblem& slot) {
    if (slot.users.empty()) throw std::invalid_argument("cubic_coeffs: inactive slot");
    CubicCoeffs c;
    const double price = slot.power_dual + slot.geo_gain * slot.interference_dual;
    const double l2 = slot.common_rate_dual;
    const double gc = slot.common_weight();
    const double W = slot.bandwidth;
    for (std::size_t a = 0; a < slot.users.size(); ++a) {
        const auto& u = slot.users[a];
        const double A = u.ambient;
        const double l1 = u.qos_dual;
        const double gu = u.weight();
        for (std::size_t b = 0; b < slot.users.size(); ++b) {
            if (b == a) continue;
            const auto& j = slot.users[b];
            const double gj = j.weight();
            c.t3 += j.gain * u.gain * j.share * u.share * price;
            c.t2 += j.gain * u.share * A * price +
                    u.gain * j.share * (A * price - j.gain * u.share * (l2 * gc + l1 * gu) * W);
            c.t1 += A * (A * price +
                         W * (-j.gain * u.share * (l2 * gc + gu + l1 * gu) -
                              u.gain * j.share * (gj + l2 * gc + l1 * gu)));
            c.t0 += -A * A * W * (gj + l2 * gc + gu + l1 * gu);
        }
    }
    return c;
}

std::vector<double> solve_cubic(const CubicCoeffs& coeffs) {
    const double ascending[] = {coeffs.t0, coeffs.t1, coeffs.t2, coeffs.t3};
    return real_roots(ascending);
}

double power_lagrangian(const SlotProblem& slot, double p) {
    double value = -slot.power_price() * p;
    for (const auto& t : power_terms(slot)) {
        if (p <= 0.0) return -kInf;
        const double gamma = t.num * p / (t.ambient + t.slope * p);
        value += t.coef * (t.tau * std::log2(gamma) + t.omega);
    }
    return value;
}

double power_lagrangian_derivative(const SlotProblem& slot, double p) {
    double d = -slot.power_price();
    for (const auto& t : power_terms(slot)) {
        d += t.coef * t.tau / std::numbers::ln2 * t.ambient / (p * (t.ambient + t.slope * p));
    }
    return d;
}

Polynomial power_stationarity(const SlotProblem& slot) {
    const auto terms = power_terms(slot);
    Polynomial all{1.0};
    for (const auto& t : terms) all = multiply(all, Polynomial{t.ambient, t.slope});
    // -price * p * prod(D)
    Polynomial out(all.size() + 1, 0.0);
    for (std::size_t i = 0; i < all.size(); ++i) out[i + 1] = -slot.power_price() * all[i];
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Polynomial others{1.0};
        for (std::size_t l = 0; l < terms.size(); ++l) {
            if (l != i) others = multiply(others, Polynomial{terms[l].ambient, terms[l].slope});
        }
        const double w = terms[i].coef * terms[i].tau / std::numbers::ln2 * terms[i].ambient;
        for (std::size_t n = 0; n < others.size(); ++n) out[n] += w * others[n];
    }
    return out;
}

double select_power_root(std::span<const double> roots, const SlotProblem& slot, double p_max) {
    if (!(p_max > 0.0)) return 0.0;
    std::vector<double> candidates{0.0};
    for (double r : roots) {
        if (r > 0.0 && r < p_max) candidates.push_back(r);
    }
    candidates.push_back(p_max);
    std::sort(candidates.begin(), candidates.end());

    double best_p = candidates.front();
    double best_v = power_lagrangian(slot, best_p);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double v = power_lagrangian(slot, candidates[i]);
        const double margin = 1e-13 * std::max(1.0, std::fabs(best_v));
        if (v > best_v + margin || (std::isinf(best_v) && v > best_v)) {
            best_v = v;
            best_p = candidates[i];
        }
    }
    return best_p;
}

double solve_slot_power(const SlotProblem& slot, double p_max) {
    const Polynomial poly = power_stationarity(slot);
    const bool zero = std::all_of(poly.begin(), poly.end(), [](double v) { return v == 0.0; });
    if (zero) return select_power_root({}, slot, p_max);
    const auto roots = real_roots(poly);
    return select_power_root(roots, slot, p_max);
}

std::optional<QuadCoeffs> quad_coeffs(const SlotProblem& slot, std::size_t local, double p) {
    const double l4 = slot.split_dual;
    if (l4 < kSplitDualFloor || !(p > 0.0) || slot.users.size() < 2) return std::nullopt;
    const auto& me = slot.users.at(local);
    const double total = share_total(slot);
    const double own = (me.point.tau > 0.0 && me.gain > 0.0)
                           ? (1.0 + me.qos_dual) * slot.bandwidth * me.weight()
                           : 0.0;
    double alpha = 0.0, beta = 0.0, ambient_sum = 0.0;
    for (std::size_t b = 0; b < slot.users.size(); ++b) {
        if (b == local) continue;
        const auto& j = slot.users[b];
        const double slope = j.gain * p;
        const double ambient = j.ambient + j.gain * p * (total - me.share - j.share);
        const bool live = j.point.tau > 0.0 && j.gain * j.share > 0.0;
        const double other = live ? (1.0 + j.qos_dual) * slot.bandwidth * j.weight() : 0.0;
        alpha += l4 * slope;
        beta += slope * (own - other) - l4 * ambient;
        ambient_sum += ambient;
    }
    QuadCoeffs q;
    q.mu1 = beta;
    q.mu2 = beta * beta + 4.0 * alpha * own * ambient_sum;
    q.mu3 = 2.0 * alpha;
    return q;
}

std::optional<ShareSolution> solve_eta(const QuadCoeffs& coeffs) {
    if (coeffs.mu3 == 0.0 || coeffs.mu2 < 0.0) return std::nullopt;
    const double root = std::sqrt(coeffs.mu2);
    const double hi = (coeffs.mu1 + root) / coeffs.mu3;
    const double lo = (coeffs.mu1 - root) / coeffs.mu3;
    const auto inside = [](double v) { return v >= 0.0 && v <= 1.0; };
    const double upper = std::max(hi, lo), lower = std::min(hi, lo);
    if (inside(upper)) return ShareSolution{upper, false};
    if (inside(lower)) return ShareSolution{lower, false};
    return ShareSolution{std::clamp(upper, 0.0, 1.0), true};
}

double share_lagrangian(const SlotProblem& slot, std::size_t local, double eta, double p) {
    const auto& me = slot.users.at(local);
    double total_others = 0.0;
    for (std::size_t b = 0; b < slot.users.size(); ++b)
        if (b != local) total_others += slot.users[b].share;

    double value = -slot.split_dual * eta;
    if (me.point.tau > 0.0 && me.gain > 0.0) {
        const double gamma =
            me.gain * eta * p / (me.ambient + me.gain * total_others * p);
        if (gamma <= 0.0) return -kInf;
        value += (1.0 + me.qos_dual) * slot.bandwidth *
                 (me.point.tau * std::log2(gamma) + me.point.omega);
    }
    for (std::size_t b = 0; b < slot.users.size(); ++b) {
        if (b == local) continue;
        const auto& j = slot.users[b];
        if (!(j.point.tau > 0.0 && j.gain * j.share > 0.0)) continue;
        const double interference = j.gain * p * (total_others - j.share + eta);
        const double gamma = j.gain * j.share * p / (j.ambient + interference);
        value += (1.0 + j.qos_dual) * slot.bandwidth *
                 (j.point.tau * std::log2(gamma) + j.point.omega);
    }
    return value;
}

std::optional<ShareSolution> solve_private_share(const SlotProblem& slot, std::size_t local,
                                                 double p) {
    if (slot.split_dual < kSplitDualFloor) return std::nullopt;
    const auto& me = slot.users.at(local);
    if (!(p > 0.0)) return ShareSolution{me.share, false};
    if (slot.users.size() == 1) {
        const double own = (me.point.tau > 0.0 && me.gain > 0.0)
                               ? (1.0 + me.qos_dual) * slot.bandwidth * me.weight()
                               : 0.0;
        const double v = own / slot.split_dual;
        return ShareSolution{std::clamp(v, 0.0, 1.0), v > 1.0};
    }
    const auto q = quad_coeffs(slot, local, p);
    if (!q) return std::nullopt;
    return solve_eta(*q);
}

std::optional<double> solve_eta0(const SlotProblem& slot) {
    if (slot.split_dual < kSplitDualFloor) return std::nullopt;
    const double v =
        slot.common_rate_dual * slot.common_weight() * slot.bandwidth / slot.split_dual;
    return std::clamp(v, 0.0, 1.0);
}

std::vector<double> project_to_simplex(std::span<const double> shares) {
    std::vector<double> x(shares.begin(), shares.end());
    for (double& v : x) v = std::max(v, 0.0);
    double sum = 0.0;
    for (double v : x) sum += v;
    if (sum <= 1.0) return x;
    std::vector<double> sorted(x);
    std::sort(sorted.rbegin(), sorted.rend());
    double cumulative = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumulative += sorted[i];
        const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] - t > 0.0) theta = t;
    }
    for (double& v : x) v = std::max(v - theta, 0.0);
    return x;
}

} // namespace rsma
