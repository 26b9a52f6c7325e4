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

#include "rsma/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "rsma/assign.hpp"
#include "rsma/sca.hpp"

namespace rsma {

namespace {

struct ActiveSlot {
    std::size_t m;
    std::size_t k;
    std::vector<std::size_t> users;
};

std::vector<ActiveSlot> list_active(const Assignment& x) {
    std::vector<ActiveSlot> out;
    for (std::size_t m = 0; m < x.beams(); ++m) {
        for (std::size_t k = 0; k < x.subcarriers(); ++k) {
            auto users = x.users_in_slot(m, k);
            if (!users.empty()) out.push_back({m, k, std::move(users)});
        }
    }
    return out;
}

double power_box(const SystemConfig& config, const ChannelSet& channels, std::size_t m,
                 std::size_t k) {
    const double f = channels.f(m, k);
    const double cap = f > 0.0 ? config.interference_threshold / f
                               : std::numeric_limits<double>::infinity();
    return std::min(cap, config.total_power);
}

double l2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

DualState initial_duals(const SystemConfig& config, const Assignment& x, double value) {
    DualState d = DualState::uniform(config, value);
    for (std::size_t m = 0; m < config.num_beams; ++m) {
        for (std::size_t k = 0; k < config.num_subcarriers; ++k) {
            if (x.slot_active(m, k)) continue;
            d.common_rate(m, k) = 0.0;
            d.interference(m, k) = 0.0;
            d.split(m, k) = 0.0;
        }
    }
    return d;
}

// Rates of the surrogate problem at `state`, floored at zero.
RateReport surrogate_rates(const SystemConfig& config, const ChannelSet& channels,
                           const AllocationState& state, const Assignment& x,
                           const SurrogateSet& sur, const std::vector<ActiveSlot>& slots) {
    RateReport r;
    r.common_rate = Grid2<double>(config.num_beams, config.num_subcarriers);
    r.private_rate = Grid3<double>(config.num_beams, config.num_users, config.num_subcarriers);
    r.per_user_total.assign(config.num_users, 0.0);
    const auto rate = [&](const SurrogatePoint& pt, double gamma) {
        if (pt.tau <= 0.0 || gamma <= 0.0) return 0.0;
        return std::max(0.0, surrogate_rate(pt, gamma, config.bandwidth));
    };
    for (const auto& s : slots) {
        for (std::size_t u : s.users) {
            const double rp = rate(sur.private_streams(s.m, u, s.k),
                                   private_sinr(config, channels, state, x, s.m, u, s.k));
            r.private_rate(s.m, u, s.k) = rp;
            r.per_user_total[u] = state.c(s.m, u, s.k) + rp;
            r.sum_rate += state.c(s.m, u, s.k) + rp;
        }
        const std::size_t weak = sur.common_user(s.m, s.k);
        r.common_rate(s.m, s.k) = rate(sur.common_streams(s.m, s.k),
                                       common_sinr(config, channels, state, x, s.m, weak, s.k));
    }
    return r;
}

// Turns a raw inner iterate into a point meeting C2..C5: powers scaled into
// the budget, splits normalised to a full budget, and the common rate shared
// so that QoS deficits are covered first.
AllocationState recover(const SystemConfig& config, const ChannelSet& channels,
                        const Assignment& x, const std::vector<ActiveSlot>& slots,
                        const AllocationState& raw, bool fixed) {
    AllocationState out = AllocationState::zeros(config);
    double total = 0.0;
    for (const auto& s : slots) {
        out.p(s.m, s.k) = std::clamp(raw.p(s.m, s.k), 0.0, power_box(config, channels, s.m, s.k));
        total += out.p(s.m, s.k);
    }
    if (!fixed && total > config.total_power) {
        const double scale = config.total_power / total;
        for (const auto& s : slots) out.p(s.m, s.k) *= scale;
    }
    for (const auto& s : slots) {
        double sum = std::max(raw.eta0(s.m, s.k), 0.0);
        for (std::size_t u : s.users) sum += std::max(raw.eta(s.m, u, s.k), 0.0);
        const double scale = sum > 0.0 ? 1.0 / sum : 0.0;
        out.eta0(s.m, s.k) = std::max(raw.eta0(s.m, s.k), 0.0) * scale;
        for (std::size_t u : s.users)
            out.eta(s.m, u, s.k) = std::max(raw.eta(s.m, u, s.k), 0.0) * scale;
        if (sum <= 0.0) out.eta0(s.m, s.k) = 1.0;
    }
    for (const auto& s : slots) {
        const double rc = common_rate(config, channels, out, x, s.m, s.k);
        std::vector<double> deficit;
        double need = 0.0, weight = 0.0;
        for (std::size_t u : s.users) {
            const double rp = private_rate(config, channels, out, x, s.m, u, s.k);
            deficit.push_back(std::max(0.0, config.min_rate - rp));
            need += deficit.back();
            weight += std::max(raw.c(s.m, u, s.k), 0.0);
        }
        if (need >= rc) {
            const double scale = need > 0.0 ? rc / need : 0.0;
            for (std::size_t i = 0; i < s.users.size(); ++i)
                out.c(s.m, s.users[i], s.k) = deficit[i] * scale;
            continue;
        }
        const double spare = rc - need;
        for (std::size_t i = 0; i < s.users.size(); ++i) {
            const std::size_t u = s.users[i];
            const double share = weight > 0.0
                                     ? std::max(raw.c(s.m, u, s.k), 0.0) / weight
                                     : 1.0 / static_cast<double>(s.users.size());
            out.c(s.m, u, s.k) = deficit[i] + spare * share;
        }
    }
    return out;
}

bool qos_met(const SystemConfig& config, const Evaluation& eval, double tol) {
    for (double s : eval.slack.qos)
        if (s < -tol * config.min_rate) return false;
    return true;
}

// Block-coordinate ascent on one slot's surrogate Lagrangian: power, then
// each private share, then the common share, repeated until the iterate
// settles or the sweep cap is hit.
void maximize_slot(const SystemConfig& config, const ChannelSet& channels, const Assignment& x,
                   const SurrogateSet& sur, const DualState& duals, const ActiveSlot& s,
                   AllocationState& work, const SolverOptions& options, bool fixed) {
    SlotProblem slot =
        make_slot_problem(config, channels, work, x, sur, duals, s.m, s.k, options.rate_unit);
    if (options.split_fallback == SplitFallback::floor)
        slot.split_dual = std::max(slot.split_dual, kSplitDualFloor);
    else if (slot.split_dual < kSplitDualFloor) {
        // lambda4 ~ 0: keep the previous splits, projected onto the budget.
        std::vector<double> previous{slot.eta0};
        for (const auto& t : slot.users) previous.push_back(t.share);
        const auto proj = project_to_simplex(previous);
        work.eta0(s.m, s.k) = proj[0];
        for (std::size_t j = 0; j < s.users.size(); ++j) work.eta(s.m, s.users[j], s.k) = proj[j + 1];
        slot.eta0 = proj[0];
        for (std::size_t j = 0; j < s.users.size(); ++j) slot.users[j].share = proj[j + 1];
        if (!fixed) work.p(s.m, s.k) = solve_slot_power(slot, power_box(config, channels, s.m, s.k));
        return;
    }
    const double box = power_box(config, channels, s.m, s.k);
    double p = work.p(s.m, s.k);

    for (std::size_t sweep = 0; sweep < options.primal_sweeps; ++sweep) {
        double moved = 0.0;
        if (!fixed) {
            const double next = solve_slot_power(slot, box);
            moved = std::max(moved, std::fabs(next - p) / std::max(p, 1e-12));
            p = next;
        }
        for (std::size_t i = 0; i < slot.users.size(); ++i) {
            const auto sol = solve_private_share(slot, i, p);
            if (!sol) break;
            moved = std::max(moved, std::fabs(sol->value - slot.users[i].share) /
                                        std::max(slot.users[i].share, 1e-12));
            slot.users[i].share = sol->value;
        }
        if (const auto e0 = solve_eta0(slot)) slot.eta0 = *e0;
        if (moved < options.primal_tol) break;
    }
    work.p(s.m, s.k) = p;
    work.eta0(s.m, s.k) = slot.eta0;
    for (std::size_t j = 0; j < s.users.size(); ++j) work.eta(s.m, s.users[j], s.k) = slot.users[j].share;
}

struct InnerResult {
    AllocationState raw;
    std::size_t iterations = 0;
    bool converged = false;
    bool diverged = false;
};

InnerResult inner_loop(const SystemConfig& config, const ChannelSet& channels,
                       const Assignment& x, const std::vector<ActiveSlot>& slots,
                       const SurrogateSet& sur, DualState& duals, AllocationState work,
                       const SolverOptions& options, bool fixed, std::size_t outer,
                       std::vector<IterationRecord>* trace) {
    InnerResult res;
    const double unit = options.rate_unit;
    for (std::size_t t = 1; t <= options.inner_max; ++t) {
        const StepSizes delta = options.step.scaled(1.0 / std::sqrt(static_cast<double>(t)));
        for (const auto& s : slots) maximize_slot(config, channels, x, sur, duals, s, work, options, fixed);
        Grid3<double> previous_c = work.c;
        work.c = update_common_splits(work, duals, x, delta.common_share / unit);

        // Residuals at the extrapolated shares 2 c_t - c_{t-1}; the
        // Lagrangian is linear in c and plain steps would circle.
        AllocationState probe = work;
        for (std::size_t i = 0; i < probe.c.data().size(); ++i)
            probe.c.data()[i] = 2.0 * work.c.data()[i] - previous_c.data()[i];
        const RateReport rates = surrogate_rates(config, channels, probe, x, sur, slots);
        DualState next = update_duals(config, channels, x, probe, rates, duals, delta, unit);
        const auto change = dual_change(next, duals);
        duals = std::move(next);
        res.iterations = t;

        if (trace) {
            const auto eval = evaluate(config, channels, work, x);
            trace->push_back({outer, t, eval.rates.sum_rate, max_relative_violation(config, eval),
                              dual_norms(duals), change});
        }
        if (std::any_of(duals.qos.begin(), duals.qos.end(),
                        [&](double v) { return v > options.infeasible_dual_cap; })) {
            res.diverged = true;
        }
        if (std::all_of(change.begin(), change.end(),
                        [&](double v) { return v < options.tol_dual; })) {
            res.converged = true;
            break;
        }
    }
    res.raw = std::move(work);
    return res;
}

} // namespace

StepSizes StepSizes::scaled(double factor) const {
    return {qos * factor,   common_rate * factor, interference * factor,
            split * factor, power * factor,       common_share * factor};
}

void SolverOptions::validate() const {
    const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(tol_outer) || !positive(tol_feas) || !positive(tol_dual))
        throw ConfigError("solver options: tolerances must be positive");
    if (inner_max == 0 || outer_max == 0 || primal_sweeps == 0 || !positive(primal_tol))
        throw ConfigError("solver options: iteration caps must be positive");
    for (double s : {step.qos, step.common_rate, step.interference, step.split, step.power,
                     step.common_share}) {
        if (!positive(s)) throw ConfigError("solver options: step sizes must be positive");
    }
    if (!(dual_init >= 0.0) || !positive(infeasible_dual_cap) || !positive(rate_unit))
        throw ConfigError("solver options: invalid dual_init, cap or rate unit");
}

std::array<double, kDualFamilies> dual_norms(const DualState& d) {
    return {l2(d.qos), l2(d.common_rate.data()), l2(d.interference.data()), l2(d.split.data()),
            std::fabs(d.power)};
}

std::array<double, kDualFamilies> dual_change(const DualState& a, const DualState& b) {
    return {l2_diff(a.qos, b.qos), l2_diff(a.common_rate.data(), b.common_rate.data()),
            l2_diff(a.interference.data(), b.interference.data()),
            l2_diff(a.split.data(), b.split.data()), std::fabs(a.power - b.power)};
}

Grid3<double> update_common_splits(const AllocationState& state, const DualState& duals,
                                   const Assignment& x, double delta) {
    Grid3<double> c = state.c;
    for (std::size_t m = 0; m < x.beams(); ++m)
        for (std::size_t u = 0; u < x.users(); ++u)
            for (std::size_t k = 0; k < x.subcarriers(); ++k)
                if (x(m, u, k))
                    c(m, u, k) = std::max(
                        0.0, c(m, u, k) + delta * (1.0 + duals.qos[u] - duals.common_rate(m, k)));
    return c;
}

DualState update_duals(const SystemConfig& config, const ChannelSet& channels,
                       const Assignment& x, const AllocationState& state, const RateReport& rates,
                       const DualState& duals, const StepSizes& delta, double rate_unit) {
    const auto M = config.num_beams, U = config.num_users, K = config.num_subcarriers;
    DualState next = duals;
    for (std::size_t u = 0; u < U; ++u) {
        const UserSlot s = slot_of(x, u);
        const double total = state.c(s.m, u, s.k) + rates.private_rate(s.m, u, s.k);
        next.qos[u] = std::max(0.0, duals.qos[u] + delta.qos * (config.min_rate - total) * rate_unit);
    }
    double power = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t k = 0; k < K; ++k) {
            double c_sum = 0.0, eta_sum = state.eta0(m, k);
            for (std::size_t u = 0; u < U; ++u) {
                if (!x(m, u, k)) continue;
                c_sum += state.c(m, u, k);
                eta_sum += state.eta(m, u, k);
            }
            next.common_rate(m, k) = std::max(
                0.0, duals.common_rate(m, k) +
                         delta.common_rate * (c_sum - rates.common_rate(m, k)) * rate_unit);
            next.interference(m, k) = std::max(
                0.0, duals.interference(m, k) +
                         delta.interference *
                             (channels.f(m, k) * state.p(m, k) - config.interference_threshold));
            next.split(m, k) = std::max(0.0, duals.split(m, k) + delta.split * (eta_sum - 1.0));
            power += state.p(m, k);
        }
    }
    next.power = std::max(0.0, duals.power + delta.power * (power - config.total_power));
    return next;
}

Grid2<double> fixed_power(const SystemConfig& config, const ChannelSet& channels,
                          const Assignment& x) {
    Grid2<double> p(config.num_beams, config.num_subcarriers);
    const double even = config.total_power /
                        static_cast<double>(config.num_beams * config.num_subcarriers);
    for (std::size_t m = 0; m < config.num_beams; ++m) {
        for (std::size_t k = 0; k < config.num_subcarriers; ++k) {
            if (!x.slot_active(m, k)) continue;
            const double f = channels.f(m, k);
            p(m, k) = f > 0.0 ? std::min(config.interference_threshold / f, even) : even;
        }
    }
    return p;
}

AllocationState initial_allocation(const SystemConfig& config, const ChannelSet& channels,
                                   const Assignment& x) {
    AllocationState a = AllocationState::zeros(config);
    a.p = fixed_power(config, channels, x);
    for (const auto& s : list_active(x)) {
        a.eta0(s.m, s.k) = 0.5;
        for (std::size_t u : s.users)
            a.eta(s.m, u, s.k) = 0.5 / static_cast<double>(s.users.size());
    }
    return a;
}

SolveReport solve_assigned(const SystemConfig& config, const ChannelSet& channels,
                           const Assignment& x, const SolverOptions& options, bool fixed,
                           std::string scheme) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    channels.validate(config);
    options.validate();
    x.require_single_slot();

    SolveReport report;
    report.scheme = std::move(scheme);
    report.assignment = x;
    const auto slots = list_active(x);

    AllocationState current =
        recover(config, channels, x, slots, initial_allocation(config, channels, x), fixed);
    Evaluation current_eval = evaluate(config, channels, current, x);
    DualState duals = initial_duals(config, x, options.dual_init);
    bool all_inner_converged = true;
    bool diverged = false;

    for (std::size_t outer = 1; outer <= options.outer_max; ++outer) {
        const SurrogateSet sur = build_surrogates(config, channels, current, x);
        auto inner = inner_loop(config, channels, x, slots, sur, duals, current, options, fixed,
                                outer, options.record_inner_trace ? &report.trace : nullptr);
        all_inner_converged = all_inner_converged && inner.converged;
        diverged = diverged || inner.diverged;
        report.inner_iterations += inner.iterations;
        report.outer_iterations = outer;

        AllocationState candidate = recover(config, channels, x, slots, inner.raw, fixed);
        Evaluation cand_eval = evaluate(config, channels, candidate, x);
        const double before = current_eval.rates.sum_rate;
        const double after = cand_eval.rates.sum_rate;
        const bool q_before = qos_met(config, current_eval, options.tol_feas);
        const bool q_after = qos_met(config, cand_eval, options.tol_feas);
        const bool accept = (q_after && !q_before) || (q_after == q_before && after >= before);

        report.outer.push_back({outer, after, accept, inner.iterations, inner.converged});
        report.trace.push_back({outer, 0, after, max_relative_violation(config, cand_eval),
                                dual_norms(duals), {}});
        if (!accept) {
            report.converged = true;
            break;
        }
        current = std::move(candidate);
        current_eval = std::move(cand_eval);
        const double rel = std::fabs(after - before) / std::max(std::fabs(before), 1.0);
        if (rel < options.tol_outer && q_after == q_before) {
            report.converged = true;
            break;
        }
    }

    report.allocation = std::move(current);
    report.evaluation = std::move(current_eval);
    report.duals = std::move(duals);
    report.sum_rate = report.evaluation.rates.sum_rate;
    report.max_violation = max_relative_violation(config, report.evaluation);
    report.duals_converged = all_inner_converged;
    report.qos_satisfied = qos_met(config, report.evaluation, options.tol_feas);
    report.infeasible = diverged && !report.qos_satisfied;
    report.feasible = report.qos_satisfied && report.max_violation <= options.tol_feas &&
                      x.satisfies_single_slot();
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

SolveReport solve_opt(const SystemConfig& config, const ChannelSet& channels,
                      const SolverOptions& options) {
    channels.validate(config);
    const auto x = greedy_assign(channels, config.num_beams, config.num_subcarriers,
                                 config.num_users);
    return solve_assigned(config, channels, x, options, false, "opt");
}

SolveReport solve_fix_p(const SystemConfig& config, const ChannelSet& channels,
                        const SolverOptions& options) {
    channels.validate(config);
    const auto x = greedy_assign(channels, config.num_beams, config.num_subcarriers,
                                 config.num_users);
    return solve_assigned(config, channels, x, options, true, "fix_p");
}

SolveReport solve_rand_x(const SystemConfig& config, const ChannelSet& channels,
                         const SolverOptions& options, std::uint64_t seed) {
    config.validate();
    const auto x = random_assign(config.num_beams, config.num_subcarriers, config.num_users, seed);
    return solve_assigned(config, channels, x, options, false, "rand_x");
}

} // namespace rsma
