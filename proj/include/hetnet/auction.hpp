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

#ifndef HETNET_AUCTION_HPP
#define HETNET_AUCTION_HPP

#include "hetnet/channel.hpp"
#include "hetnet/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

// Distributed auction for transmission alignments (RB, power level).
//
// Every underlay transmitter is an agent that runs `local_step` against the
// state the MBS broadcast after the previous round; the MBS then merges the
// reported cost/bidder tables, recomputes the aggregated interference and
// rebroadcasts. Resources are addressed by the flat index rb * L + level.
namespace hetnet::auction
{

enum class Mode
{
    synchronous, // all agents act on the same previous broadcast
    sequential,  // one agent per round, round-robin by id
};

struct AuctionParams
{
    double epsilon = 100.0;   // minimum bid increment, utility units
    double nu1 = 1.0;         // weight on rate
    double nu2 = 1.0;         // weight on interference excess
    std::size_t t_max = 500;  // cap on update rounds
    std::size_t window = 2;   // X identical over this many consecutive rounds => converged
    double cost_scale = 1e13; // utility units per watt of interference excess
    bool self_exclude = false;
    bool rebid_unhappy = false;
    Mode mode = Mode::synchronous;

    void validate() const;
};

using BidderId = std::optional<std::size_t>;

struct AuctionBroadcast
{
    Allocation alloc;
    std::vector<double> interference; // [n], watts
    std::vector<double> cost;         // [n * L + l]
    std::vector<BidderId> bidder;     // [n * L + l]

    static AuctionBroadcast initial(const Allocation &alloc, const Instance &inst);
    double max_cost() const;
};

struct AgentState
{
    std::size_t id = 0;
    std::vector<double> cost;
    std::vector<BidderId> bidder;
    std::optional<Resource> previous;
};

AgentState make_agent(std::size_t id, const AuctionBroadcast &broadcast);

inline std::size_t resource_index(Resource r, std::size_t levels)
{
    return r.rb * levels + r.level;
}

inline Resource resource_at(std::size_t index, std::size_t levels)
{
    return {index / levels, index % levels};
}

// nu1 * W log2(1 + SINR) with k on r and everyone else as in broadcast.alloc.
double benefit(std::size_t k, Resource r, const AuctionBroadcast &broadcast, const Instance &inst,
               const AuctionParams &params);

// Clamped interference excess on RB r.rb if k joined it at level r.level,
// in utility units: max(0, nu2 * cost_scale * (g_ref p + I_others - I_TH)).
double cost_of(std::size_t k, Resource r, const AuctionBroadcast &broadcast, const Instance &inst,
               const AuctionParams &params);

// Utility B - C seen by agent k: C is the agent's price for the resource plus
// the interference cost.
double utility(std::size_t k, Resource r, const std::vector<double> &price, const AuctionBroadcast &broadcast,
               const Instance &inst, const AuctionParams &params);

// Per-resource max of local and broadcast cost; the bidder follows whichever
// side attains the max, broadcast on ties.
AgentState merge_cost_and_bidder(const AgentState &agent, const AuctionBroadcast &broadcast);

// Gap between the best utility and the best utility over the remaining
// resources, plus epsilon. Throws std::invalid_argument if `chosen` does
// not attain the maximum or the list is empty.
double bid_increment(const std::vector<double> &utilities, std::size_t chosen, const AuctionParams &params);

struct LocalOutcome
{
    AgentState agent;                // merged tables, own bid applied
    std::optional<Resource> assignment;
    bool bid = false;
    std::optional<Resource> bid_resource;
    double increment = 0.0;
    double estimated_interference = 0.0; // only meaningful when a bid was attempted
    bool attempted = false;              // outbid branch taken
};

// One run of the per-transmitter bidding procedure.
LocalOutcome local_step(const AgentState &agent, const AuctionBroadcast &broadcast, const Instance &inst,
                        const AuctionParams &params);

struct RoundRecord
{
    std::size_t round = 0;
    Allocation alloc;
    double sum_rate_bps = 0.0;
    std::size_t changed_agents = 0;
    double max_cost = 0.0;
    std::vector<std::size_t> bids; // successful bids per resource this round
    std::vector<double> cost;      // broadcast cost table after the round
    std::vector<BidderId> bidder;  // broadcast bidder table after the round
};

struct RoundTrace
{
    std::vector<RoundRecord> rounds; // rounds[0] is the random initial assignment

    std::vector<std::size_t> total_bids() const;
};

struct AuctionResult
{
    Allocation alloc;
    AuctionBroadcast broadcast;
    RoundTrace trace;
    bool converged = false;
    std::size_t rounds = 0; // update rounds executed
};

// Phase I random assignment, Phase II rounds until X stays unchanged for
// `window` consecutive rounds or t_max rounds have run.
AuctionResult run_auction(const Instance &inst, const AuctionParams &params, RandomSeed seed);

// Same, starting from a given fully assigned allocation.
AuctionResult run_auction_from(const Instance &inst, const AuctionParams &params, const Allocation &start);

struct EquilibriumReport
{
    std::vector<double> slack; // U(assigned) - max U, per agent
    double worst_slack = 0.0;
    bool holds = true;         // every slack >= -epsilon
};

EquilibriumReport equilibrium_check(const AuctionBroadcast &final_broadcast, const Instance &inst,
                                    const AuctionParams &params);

// Benefit envelope per (k, n, l): the interference-free value (only the MBS
// interferes) and the worst case (every other transmitter co-channel at the
// highest level). Any benefit seen during a run lies inside it.
struct BenefitTable
{
    std::vector<double> best;  // [(k * N + n) * L + l]
    std::vector<double> worst; // same layout
};

BenefitTable benefit_table(const Instance &inst, const AuctionParams &params);

} // namespace hetnet::auction

#endif
