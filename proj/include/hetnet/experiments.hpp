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

#ifndef HETNET_EXPERIMENTS_HPP
#define HETNET_EXPERIMENTS_HPP

#include "hetnet/oracle.hpp"
#include "hetnet/scenario.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

// Monte-Carlo drivers: convergence-time CDFs over many drops, and
// auction-versus-oracle efficiency over time slots of a fixed drop.
namespace hetnet::experiments
{

// One (S, D, L) combination of a plan; the rest comes from the base config.
struct ScenarioPoint
{
    std::size_t sbs = 3;
    std::size_t d2d = 2;
    std::vector<double> levels_dbm{3.0, 5.0};
};

struct ExperimentPlan
{
    std::vector<ScenarioPoint> scenarios{ScenarioPoint{}};
    std::size_t realizations = 50;
    std::size_t slots = 1;              // comparison study only
    bool require_feasible = false;      // redraw drops without any feasible allocation
    std::size_t max_redraws = 1000;     // per realization, when require_feasible
    bool refresh_shadowing = false;     // comparison study: new shadowing every slot

    void validate() const;
};

// Fraction of samples <= j. Throws std::invalid_argument on an empty input.
double empirical_cdf(const std::vector<double> &samples, double j);

// R_prop / R_max. Throws std::invalid_argument unless r_max > 0.
double efficiency(double r_prop, double r_max);

ScenarioConfig apply_point(const ScenarioConfig &base, const ScenarioPoint &point);

// Seed of realization r (global index) under plan seed `seed`, redraw `attempt`.
RandomSeed realization_seed(std::uint64_t seed, std::size_t realization, std::size_t attempt);

struct ConvergenceSample
{
    std::size_t realization_id = 0; // unique across all points of the plan
    std::size_t point = 0;
    std::size_t nodes = 0; // underlay nodes, 2 (S + D)
    std::size_t sbs = 0;
    std::size_t d2d = 0;
    std::size_t levels = 0;
    std::size_t redraws = 0;
    oracle::Feasibility instance = oracle::Feasibility::unknown;
    bool converged = false;
    std::size_t rounds = 0;      // update rounds executed
    bool final_feasible = false; // final allocation meets every threshold
    bool equilibrium = false;    // epsilon-slackness on the final broadcast
    double worst_slack = 0.0;
    std::uint64_t max_bids = 0;       // most successful bids on any one resource
    std::uint64_t bid_bound = 0;      // ceil((max B - min B) / epsilon)
    double sum_rate_bps = 0.0;
    std::vector<auction::RoundRecord> trace;
};

struct ConvergenceStudy
{
    std::vector<ConvergenceSample> samples;
    std::size_t t_max = 0;
};

ConvergenceStudy run_convergence_study(const ScenarioConfig &base, const ExperimentPlan &plan, std::uint64_t seed,
                                       unsigned jobs = 1);

struct ComparisonSample
{
    std::size_t realization_id = 0;
    std::size_t slot = 0;
    std::size_t point = 0;
    std::size_t redraws = 0;
    bool instance_feasible = false; // the exhaustive search found a feasible allocation
    bool oracle_feasible = false;   // its optimum passes the independent feasibility check
    bool converged = false;
    std::size_t rounds = 0;
    bool auction_feasible = false;
    bool equilibrium = false;
    double worst_slack = 0.0;
    double r_prop_bps = 0.0;
    std::optional<double> r_max_bps; // when instance_feasible
    std::optional<double> eta;       // when instance and auction result are feasible
    std::optional<double> gap;       // nu1 (R_max - R_prop), when instance_feasible
    double gap_bound = 0.0;          // K epsilon
    std::uint64_t max_bids = 0;
    std::uint64_t bid_bound = 0;
};

struct ComparisonStudy
{
    std::vector<ComparisonSample> samples;
};

// Per realization the drop (topology and, unless refresh_shadowing, the
// shadowing) is fixed and each slot draws fresh fast fading. Every slot is
// solved by the auction and the exhaustive oracle.
ComparisonStudy run_comparison_study(const ScenarioConfig &base, const ExperimentPlan &plan, std::uint64_t seed,
                                     unsigned jobs = 1);

// Invariant checks over finished studies. A count of zero violations for
// every line means the study is consistent with the model's guarantees.
struct CheckLine
{
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
};

struct Validation
{
    std::vector<CheckLine> lines;
    bool ok() const;
};

Validation validate(const ConvergenceStudy &study);
Validation validate(const ComparisonStudy &study);

// CSV writers; formats are fixed so repeated runs are byte-identical.
void write_convergence_csv(const ConvergenceStudy &study, std::ostream &os);
void write_cdf_csv(const ConvergenceStudy &study, std::ostream &os);
void write_trace_csv(const ConvergenceStudy &study, std::ostream &os);
void write_trace_csv(std::size_t realization_id, const auction::AuctionResult &result, const Instance &inst,
                     std::ostream &os, bool header = true);
void write_comparison_csv(const ComparisonStudy &study, std::ostream &os);
void write_slot_means_csv(const ComparisonStudy &study, std::ostream &os);
void write_validation(const Validation &v, std::ostream &os);

} // namespace hetnet::experiments

#endif
