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

#include "hetnet/auction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hetnet::auction
{

void AuctionParams::validate() const
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("auction.epsilon: must be positive");
    if (!(nu1 >= 0.0) || !(nu2 >= 0.0))
        throw std::invalid_argument("auction.nu1/nu2: must be >= 0");
    if (t_max < 2)
        throw std::invalid_argument("auction.t_max: must be at least 2");
    if (window < 2)
        throw std::invalid_argument("auction.window: must be at least 2");
    if (!(cost_scale > 0.0) || !std::isfinite(cost_scale))
        throw std::invalid_argument("auction.cost_scale: must be positive");
}

AuctionBroadcast AuctionBroadcast::initial(const Allocation &alloc, const Instance &inst)
{
    AuctionBroadcast b;
    b.alloc = alloc;
    for (std::size_t n = 0; n < inst.dims.rbs; ++n)
        b.interference.push_back(aggregated_interference(n, alloc, inst));
    b.cost.assign(inst.dims.resources(), 0.0);
    b.bidder.assign(inst.dims.resources(), std::nullopt);
    return b;
}

double AuctionBroadcast::max_cost() const
{
    return cost.empty() ? 0.0 : *std::max_element(cost.begin(), cost.end());
}

AgentState make_agent(std::size_t id, const AuctionBroadcast &broadcast)
{
    return AgentState{id, broadcast.cost, broadcast.bidder, broadcast.alloc[id]};
}

double benefit(std::size_t k, Resource r, const AuctionBroadcast &broadcast, const Instance &inst,
               const AuctionParams &params)
{
    return params.nu1 * rate(sinr(k, r, broadcast.alloc, inst), inst.interference);
}

double cost_of(std::size_t k, Resource r, const AuctionBroadcast &broadcast, const Instance &inst,
               const AuctionParams &params)
{
    double others = 0.0;
    for (std::size_t j = 0; j < broadcast.alloc.size(); ++j)
        if (j != k && broadcast.alloc.on_rb(j, r.rb))
            others += reference_gain(j, r.rb, inst.gains) * inst.power.level_watt(broadcast.alloc[j]->level);
    const double own = reference_gain(k, r.rb, inst.gains) * inst.power.level_watt(r.level);
    const double excess = own + others - inst.interference.threshold_watt(r.rb);
    return std::max(0.0, params.nu2 * params.cost_scale * excess);
}

double utility(std::size_t k, Resource r, const std::vector<double> &price, const AuctionBroadcast &broadcast,
               const Instance &inst, const AuctionParams &params)
{
    return benefit(k, r, broadcast, inst, params) -
           (price[resource_index(r, inst.dims.levels)] + cost_of(k, r, broadcast, inst, params));
}

AgentState merge_cost_and_bidder(const AgentState &agent, const AuctionBroadcast &broadcast)
{
    AgentState out = agent;
    for (std::size_t i = 0; i < out.cost.size(); ++i)
    {
        if (broadcast.cost[i] >= agent.cost[i])
        {
            out.cost[i] = broadcast.cost[i];
            out.bidder[i] = broadcast.bidder[i];
        }
    }
    return out;
}

double bid_increment(const std::vector<double> &utilities, std::size_t chosen, const AuctionParams &params)
{
    if (utilities.empty())
        throw std::invalid_argument("bid_increment: empty utility list");
    if (chosen >= utilities.size())
        throw std::invalid_argument("bid_increment: chosen index out of range");
    const double best = *std::max_element(utilities.begin(), utilities.end());
    if (utilities[chosen] < best)
        throw std::invalid_argument("bid_increment: chosen resource does not attain the maximum utility");
    if (utilities.size() == 1)
        return params.epsilon;
    double second = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < utilities.size(); ++i)
        if (i != chosen)
            second = std::max(second, utilities[i]);
    return best - second + params.epsilon;
}

LocalOutcome local_step(const AgentState &agent, const AuctionBroadcast &broadcast, const Instance &inst,
                        const AuctionParams &params)
{
    const std::size_t k = agent.id;
    const std::size_t L = inst.dims.levels;
    if (!agent.previous)
        throw std::invalid_argument("local_step: agent has no previous assignment");

    LocalOutcome out;
    out.agent = merge_cost_and_bidder(agent, broadcast);
    out.assignment = agent.previous;

    const Resource held = *agent.previous;
    const std::size_t held_idx = resource_index(held, L);
    const bool cost_not_lower = out.agent.cost[held_idx] >= agent.cost[held_idx];
    const bool outbid = out.agent.bidder[held_idx] != BidderId{k};
    std::vector<double> u(inst.dims.resources());
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = utility(k, resource_at(i, L), out.agent.cost, broadcast, inst, params);
    const bool unhappy = params.rebid_unhappy && u[held_idx] < *std::max_element(u.begin(), u.end()) - params.epsilon;
    if (!(cost_not_lower && outbid) && !unhappy)
    {
        out.agent.previous = out.assignment;
        return out;
    }
    out.attempted = true;

    // first maximum: lowest (rb, level) wins ties
    const std::size_t best = static_cast<std::size_t>(std::max_element(u.begin(), u.end()) - u.begin());
    const Resource target = resource_at(best, L);

    double estimate = reference_gain(k, target.rb, inst.gains) * inst.power.level_watt(target.level) +
                      broadcast.interference[target.rb];
    if (params.self_exclude && target.rb == held.rb)
        estimate -= reference_gain(k, held.rb, inst.gains) * inst.power.level_watt(held.level);
    out.estimated_interference = estimate;

    if (estimate < inst.interference.threshold_watt(target.rb))
    {
        out.increment = bid_increment(u, best, params);
        out.agent.cost[best] += out.increment;
        out.agent.bidder[best] = k;
        out.assignment = target;
        out.bid = true;
        out.bid_resource = target;
    }
    out.agent.previous = out.assignment;
    return out;
}

std::vector<std::size_t> RoundTrace::total_bids() const
{
    std::vector<std::size_t> total;
    for (const auto &r : rounds)
    {
        if (total.size() < r.bids.size())
            total.resize(r.bids.size(), 0);
        for (std::size_t i = 0; i < r.bids.size(); ++i)
            total[i] += r.bids[i];
    }
    return total;
}

namespace
{

// MBS side of a round: max-merge of the reported tables, lowest id on ties
// among agents; an agent's entry only replaces the broadcast one if larger.
AuctionBroadcast coordinator_merge(const AuctionBroadcast &previous, const std::vector<LocalOutcome> &reports,
                                   const Instance &inst)
{
    AuctionBroadcast next;
    next.alloc = Allocation(reports.size());
    for (std::size_t k = 0; k < reports.size(); ++k)
        next.alloc.assign(k, *reports[k].assignment);
    next.cost = previous.cost;
    next.bidder = previous.bidder;
    for (std::size_t i = 0; i < next.cost.size(); ++i)
    {
        for (const auto &rep : reports)
        {
            if (rep.agent.cost[i] > next.cost[i])
            {
                next.cost[i] = rep.agent.cost[i];
                next.bidder[i] = rep.agent.bidder[i];
            }
        }
    }
    for (std::size_t n = 0; n < inst.dims.rbs; ++n)
        next.interference.push_back(aggregated_interference(n, next.alloc, inst));
    return next;
}

Allocation random_allocation(const Instance &inst, RandomSeed seed)
{
    auto rng = seed.engine(Stream::auction_init);
    std::uniform_int_distribution<std::size_t> rb(0, inst.dims.rbs - 1);
    std::uniform_int_distribution<std::size_t> level(0, inst.dims.levels - 1);
    Allocation alloc(inst.dims.transmitters());
    for (std::size_t k = 0; k < alloc.size(); ++k)
    {
        const std::size_t n = rb(rng);
        alloc.assign(k, {n, level(rng)});
    }
    return alloc;
}

} // namespace

AuctionResult run_auction(const Instance &inst, const AuctionParams &params, RandomSeed seed)
{
    inst.validate();
    return run_auction_from(inst, params, random_allocation(inst, seed));
}

AuctionResult run_auction_from(const Instance &inst, const AuctionParams &params, const Allocation &start)
{
    inst.validate();
    params.validate();
    if (start.size() != inst.dims.transmitters() || !start.fully_assigned())
        throw std::invalid_argument("run_auction: the starting allocation must assign every transmitter");

    const std::size_t K = inst.dims.transmitters();
    const std::size_t R = inst.dims.resources();
    // In sequential mode one sweep of K single-agent rounds stands in for one
    // synchronous round when judging stability.
    const std::size_t stable_needed =
        params.mode == Mode::sequential ? K * (params.window - 1) : params.window - 1;

    AuctionResult result;
    AuctionBroadcast broadcast = AuctionBroadcast::initial(start, inst);
    std::vector<AgentState> agents;
    for (std::size_t k = 0; k < K; ++k)
        agents.push_back(make_agent(k, broadcast));

    result.trace.rounds.push_back(RoundRecord{0, start, sum_rate(start, inst), 0, broadcast.max_cost(),
                                              std::vector<std::size_t>(R, 0), broadcast.cost, broadcast.bidder});

    std::size_t unchanged = 0;
    for (std::size_t t = 1; t <= params.t_max; ++t)
    {
        std::vector<LocalOutcome> reports;
        reports.reserve(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            const bool active = params.mode == Mode::synchronous || (t - 1) % K == k;
            if (active)
            {
                reports.push_back(local_step(agents[k], broadcast, inst, params));
            }
            else
            {
                LocalOutcome idle;
                idle.agent = merge_cost_and_bidder(agents[k], broadcast);
                idle.assignment = agents[k].previous;
                reports.push_back(std::move(idle));
            }
        }

        RoundRecord rec;
        rec.round = t;
        rec.bids.assign(R, 0);
        for (const auto &rep : reports)
            if (rep.bid)
                ++rec.bids[resource_index(*rep.bid_resource, inst.dims.levels)];

        AuctionBroadcast next = coordinator_merge(broadcast, reports, inst);
        for (std::size_t k = 0; k < K; ++k)
        {
            if (next.alloc[k] != broadcast.alloc[k])
                ++rec.changed_agents;
            agents[k] = reports[k].agent;
        }
        rec.alloc = next.alloc;
        rec.sum_rate_bps = sum_rate(next.alloc, inst);
        rec.max_cost = next.max_cost();
        rec.cost = next.cost;
        rec.bidder = next.bidder;
        result.trace.rounds.push_back(std::move(rec));

        unchanged = next.alloc == broadcast.alloc ? unchanged + 1 : 0;
        broadcast = std::move(next);
        result.rounds = t;
        if (unchanged >= stable_needed)
        {
            result.converged = true;
            break;
        }
    }

    result.alloc = broadcast.alloc;
    result.broadcast = std::move(broadcast);
    return result;
}

EquilibriumReport equilibrium_check(const AuctionBroadcast &final_broadcast, const Instance &inst,
                                    const AuctionParams &params)
{
    EquilibriumReport report;
    const std::size_t L = inst.dims.levels;
    report.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < final_broadcast.alloc.size(); ++k)
    {
        const auto &held = final_broadcast.alloc[k];
        if (!held)
            throw std::invalid_argument("equilibrium_check: transmitter " + std::to_string(k) + " is unassigned");
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < inst.dims.resources(); ++i)
            best = std::max(best, utility(k, resource_at(i, L), final_broadcast.cost, final_broadcast, inst, params));
        const double own = utility(k, *held, final_broadcast.cost, final_broadcast, inst, params);
        const double slack = own - best;
        report.slack.push_back(slack);
        report.worst_slack = std::min(report.worst_slack, slack);
        if (slack < -params.epsilon)
            report.holds = false;
    }
    if (report.slack.empty())
        report.worst_slack = 0.0;
    return report;
}

BenefitTable benefit_table(const Instance &inst, const AuctionParams &params)
{
    const std::size_t K = inst.dims.transmitters();
    const std::size_t N = inst.dims.rbs;
    const std::size_t L = inst.dims.levels;
    BenefitTable table;
    table.best.resize(K * N * L);
    table.worst.resize(K * N * L);
    for (std::size_t n = 0; n < N; ++n)
    {
        Allocation alone(K);
        Allocation crowded(K);
        for (std::size_t j = 0; j < K; ++j)
            crowded.assign(j, {n, L - 1});
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t l = 0; l < L; ++l)
            {
                const std::size_t i = (k * N + n) * L + l;
                table.best[i] = params.nu1 * rate(sinr(k, {n, l}, alone, inst), inst.interference);
                table.worst[i] = params.nu1 * rate(sinr(k, {n, l}, crowded, inst), inst.interference);
            }
    }
    return table;
}

} // namespace hetnet::auction
