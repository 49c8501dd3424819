// SPDX-License-Identifier: Apache-2.0
//
// hetnet-auction: distributed RB and power-level allocation for D2D-enabled
// two-tier cellular networks.
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

#include "hetnet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

namespace hetnet::oracle
{

namespace
{

struct Partial
{
    std::optional<Allocation> best;
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t feasible = 0;
    std::uint64_t evaluated = 0;
};

bool better(double value, const Allocation &alloc, double incumbent_value, const std::optional<Allocation> &incumbent)
{
    if (!incumbent)
        return true;
    if (value != incumbent_value)
        return value > incumbent_value;
    return alloc < *incumbent;
}

// Enumerates every allocation whose transmitter-0 digit lies in [first, last).
// Interference per RB is recomputed only for the RBs a digit change touches,
// summing in transmitter order exactly as aggregated_interference does.
Partial enumerate(const Instance &inst, const auction::AuctionParams &params, std::size_t first, std::size_t last)
{
    const std::size_t K = inst.dims.transmitters();
    const std::size_t N = inst.dims.rbs;
    const std::size_t L = inst.dims.levels;
    const std::size_t radix = N * L;

    std::vector<double> ref(K * N);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < N; ++n)
            ref[k * N + n] = reference_gain(k, n, inst.gains);

    std::vector<std::size_t> digit(K, 0);
    digit[0] = first;
    Allocation alloc(K);
    for (std::size_t k = 0; k < K; ++k)
        alloc.assign(k, auction::resource_at(digit[k], L));

    std::vector<double> interference(N, 0.0);
    auto recompute = [&](std::size_t n) {
        double total = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            if (alloc.on_rb(k, n))
                total += ref[k * N + n] * inst.power.level_watt(alloc[k]->level);
        interference[n] = total;
    };
    for (std::size_t n = 0; n < N; ++n)
        recompute(n);

    Partial out;
    while (true)
    {
        ++out.evaluated;
        bool feasible = true;
        for (std::size_t n = 0; n < N && feasible; ++n)
            feasible = interference[n] < inst.interference.threshold_watt(n);
        if (feasible)
        {
            ++out.feasible;
            const double value = params.nu1 * sum_rate(alloc, inst);
            if (better(value, alloc, out.value, out.best))
            {
                out.value = value;
                out.best = alloc;
            }
        }

        // advance the mixed-radix counter, least significant transmitter last
        std::size_t k = K;
        while (k > 0)
        {
            --k;
            const std::size_t old_rb = alloc[k]->rb;
            const std::size_t limit = k == 0 ? last : radix;
            if (++digit[k] < limit)
            {
                alloc.assign(k, auction::resource_at(digit[k], L));
                recompute(old_rb);
                if (alloc[k]->rb != old_rb)
                    recompute(alloc[k]->rb);
                break;
            }
            if (k == 0)
                return out;
            digit[k] = 0;
            alloc.assign(k, auction::resource_at(0, L));
            recompute(old_rb);
            if (old_rb != 0)
                recompute(0);
        }
    }
}

} // namespace

std::uint64_t search_space(const ScenarioDims &dims)
{
    const std::uint64_t radix = static_cast<std::uint64_t>(dims.rbs) * dims.levels;
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < dims.transmitters(); ++k)
    {
        if (radix != 0 && total > std::numeric_limits<std::uint64_t>::max() / radix)
            return std::numeric_limits<std::uint64_t>::max();
        total *= radix;
    }
    return total;
}

OracleResult exhaustive_optimum(const Instance &inst, const auction::AuctionParams &params, std::uint64_t limit,
                                unsigned jobs)
{
    inst.validate();
    const std::uint64_t space = search_space(inst.dims);
    if (space > limit)
        throw InstanceTooLarge("exhaustive search over " + std::to_string(space) +
                               " allocations exceeds the limit of " + std::to_string(limit));

    const std::size_t radix = inst.dims.resources();
    jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(radix));

    std::vector<Partial> parts;
    if (jobs == 1)
    {
        parts.push_back(enumerate(inst, params, 0, radix));
    }
    else
    {
        std::vector<std::future<Partial>> futures;
        for (unsigned j = 0; j < jobs; ++j)
        {
            const std::size_t lo = radix * j / jobs;
            const std::size_t hi = radix * (j + 1) / jobs;
            if (lo < hi)
                futures.push_back(std::async(std::launch::async, enumerate, std::cref(inst), std::cref(params), lo, hi));
        }
        for (auto &f : futures)
            parts.push_back(f.get());
    }

    OracleResult result;
    std::optional<Allocation> best;
    double value = -std::numeric_limits<double>::infinity();
    for (const auto &p : parts)
    {
        result.feasible_count += p.feasible;
        result.evaluated_count += p.evaluated;
        if (p.best && better(p.value, *p.best, value, best))
        {
            value = p.value;
            best = p.best;
        }
    }
    if (!best)
        throw Infeasible("no allocation keeps every RB below its interference threshold");
    result.best_alloc = *best;
    result.best_weighted_rate = value;
    return result;
}

GapReport k_epsilon_gap(double auction_weighted_rate, const OracleResult &oracle_result,
                        const auction::AuctionParams &params, const ScenarioDims &dims)
{
    GapReport r;
    r.gap = oracle_result.best_weighted_rate - auction_weighted_rate;
    r.bound = static_cast<double>(dims.transmitters()) * params.epsilon;
    r.within_bound = r.gap <= r.bound;
    return r;
}

IterationBound iteration_bound(const std::vector<double> &benefits, const auction::AuctionParams &params,
                               const ScenarioDims &dims)
{
    IterationBound b;
    if (benefits.empty())
        return b;
    const auto [lo, hi] = std::minmax_element(benefits.begin(), benefits.end());
    if (!std::isfinite(*lo) || !std::isfinite(*hi))
        throw std::invalid_argument("iteration_bound: benefits must be finite");
    b.per_resource = static_cast<std::uint64_t>(std::ceil((*hi - *lo) / params.epsilon));
    b.rounds_order = static_cast<double>(dims.transmitters() * dims.rbs * dims.levels) *
                     static_cast<double>(b.per_resource);
    return b;
}

IterationBound iteration_bound(const Instance &inst, const auction::AuctionParams &params)
{
    auto table = auction::benefit_table(inst, params);
    std::vector<double> all = table.best;
    all.insert(all.end(), table.worst.begin(), table.worst.end());
    return iteration_bound(all, params, inst.dims);
}

FeasibilityResult find_feasible(const Instance &inst, std::uint64_t node_budget)
{
    inst.validate();
    const std::size_t K = inst.dims.transmitters();
    const std::size_t N = inst.dims.rbs;
    const double p0 = inst.power.level_watt(0);

    std::vector<double> load(K * N);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < N; ++n)
            load[k * N + n] = reference_gain(k, n, inst.gains) * p0;

    // per transmitter, the RBs it can occupy alone, cheapest first
    std::vector<std::vector<std::size_t>> options(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        for (std::size_t n = 0; n < N; ++n)
            if (load[k * N + n] < inst.interference.threshold_watt(n))
                options[k].push_back(n);
        std::stable_sort(options[k].begin(), options[k].end(), [&](std::size_t a, std::size_t b) {
            return load[k * N + a] / inst.interference.threshold_watt(a) <
                   load[k * N + b] / inst.interference.threshold_watt(b);
        });
        if (options[k].empty())
            return {Feasibility::infeasible, std::nullopt};
    }
    std::vector<std::size_t> order(K);
    for (std::size_t k = 0; k < K; ++k)
        order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return options[a].size() < options[b].size(); });

    std::vector<double> used(N, 0.0);
    std::vector<std::size_t> chosen(K, 0);
    std::uint64_t nodes = 0;
    bool exhausted = false;
    auto dfs = [&](auto &&self, std::size_t depth) -> bool {
        if (depth == K)
            return true;
        if (++nodes > node_budget)
        {
            exhausted = true;
            return false;
        }
        const std::size_t k = order[depth];
        for (std::size_t n : options[k])
        {
            const double next = used[n] + load[k * N + n];
            if (!(next < inst.interference.threshold_watt(n)))
                continue;
            const double saved = used[n];
            used[n] = next;
            chosen[k] = n;
            if (self(self, depth + 1))
                return true;
            used[n] = saved;
            if (exhausted)
                return false;
        }
        return false;
    };

    if (!dfs(dfs, 0))
        return {exhausted ? Feasibility::unknown : Feasibility::infeasible, std::nullopt};
    Allocation witness(K);
    for (std::size_t k = 0; k < K; ++k)
        witness.assign(k, Resource{chosen[k], 0});
    // the search summed loads in depth order; confirm with the canonical sum
    if (!check_feasibility(witness, inst).feasible())
        return {Feasibility::unknown, std::nullopt};
    return {Feasibility::feasible, witness};
}

OracleResult hill_climb(const Instance &inst, const auction::AuctionParams &params, std::size_t restarts,
                        std::uint64_t seed)
{
    inst.validate();
    const std::size_t K = inst.dims.transmitters();
    const std::size_t L = inst.dims.levels;
    const std::size_t R = inst.dims.resources();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, R - 1);

    // feasible allocations score their weighted rate, infeasible ones the
    // negated total excess so the climb first heads for feasibility
    auto score = [&](const Allocation &a) {
        const auto report = check_feasibility(a, inst);
        if (report.feasible())
            return params.nu1 * sum_rate(a, inst);
        double excess = 0.0;
        for (std::size_t n : report.overloaded_rbs)
            excess += report.interference[n] - inst.interference.threshold_watt(n);
        return -excess * 1e30 - 1.0;
    };

    OracleResult result;
    std::optional<Allocation> best;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r)
    {
        Allocation current(K);
        for (std::size_t k = 0; k < K; ++k)
            current.assign(k, auction::resource_at(pick(rng), L));
        double value = score(current);
        ++result.evaluated_count;
        for (bool improved = true; improved;)
        {
            improved = false;
            Allocation step = current;
            double step_value = value;
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t i = 0; i < R; ++i)
                {
                    Allocation cand = current;
                    cand.assign(k, auction::resource_at(i, L));
                    const double v = score(cand);
                    ++result.evaluated_count;
                    if (v > step_value)
                    {
                        step = cand;
                        step_value = v;
                        improved = true;
                    }
                }
            current = step;
            value = step_value;
        }
        if (check_feasibility(current, inst).feasible())
        {
            ++result.feasible_count;
            if (better(value, current, best_value, best))
            {
                best = current;
                best_value = value;
            }
        }
    }
    if (!best)
        throw Infeasible("hill climb found no feasible allocation");
    result.best_alloc = *best;
    result.best_weighted_rate = best_value;
    return result;
}

} // namespace hetnet::oracle
