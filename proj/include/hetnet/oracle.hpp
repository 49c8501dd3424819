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

#ifndef HETNET_ORACLE_HPP
#define HETNET_ORACLE_HPP

#include "hetnet/auction.hpp"
#include "hetnet/model.hpp"

#include <cstdint>
#include <stdexcept>

namespace hetnet::oracle
{

class InstanceTooLarge : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// No allocation keeps every RB strictly under its threshold.
class Infeasible : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct OracleResult
{
    Allocation best_alloc;
    double best_weighted_rate = 0.0; // nu1 * sum rate
    std::uint64_t feasible_count = 0;
    std::uint64_t evaluated_count = 0;
};

inline constexpr std::uint64_t default_limit = 10'000'000;

// (N L)^K, saturating at UINT64_MAX.
std::uint64_t search_space(const ScenarioDims &dims);

// Exhaustive search over every one-hot allocation. Candidates are visited in
// lexicographic order (transmitter 0 most significant) and only a strictly
// better objective replaces the incumbent, so ties resolve to the smallest
// allocation. `jobs` > 1 splits the search on transmitter 0's choice.
OracleResult exhaustive_optimum(const Instance &inst, const auction::AuctionParams &params,
                                std::uint64_t limit = default_limit, unsigned jobs = 1);

struct GapReport
{
    double gap = 0.0;   // nu1 R_oracle - nu1 R_auction
    double bound = 0.0; // K epsilon
    bool within_bound = true;
};

GapReport k_epsilon_gap(double auction_weighted_rate, const OracleResult &oracle_result,
                        const auction::AuctionParams &params, const ScenarioDims &dims);

struct IterationBound
{
    std::uint64_t per_resource = 0; // ceil((max B - min B) / epsilon)
    double rounds_order = 0.0;      // K N L per_resource
};

IterationBound iteration_bound(const std::vector<double> &benefits, const auction::AuctionParams &params,
                               const ScenarioDims &dims);

// Bound from the benefit envelope of an instance (see auction::benefit_table).
IterationBound iteration_bound(const Instance &inst, const auction::AuctionParams &params);

enum class Feasibility
{
    feasible,
    infeasible,
    unknown, // node budget exhausted
};

struct FeasibilityResult
{
    Feasibility status = Feasibility::unknown;
    std::optional<Allocation> witness; // set when feasible, every level 0
};

// Decides whether any allocation meets every threshold. Lowering a power
// level never adds interference, so it suffices to search RB choices at the
// lowest level; depth-first with pruning, most constrained transmitter first.
FeasibilityResult find_feasible(const Instance &inst, std::uint64_t node_budget = 50'000'000);

// Random-restart steepest-ascent search over single-transmitter moves. Not
// exact; intended for instances beyond the exhaustive limit.
OracleResult hill_climb(const Instance &inst, const auction::AuctionParams &params, std::size_t restarts,
                        std::uint64_t seed);

} // namespace hetnet::oracle

#endif
