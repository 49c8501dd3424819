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

#include "hetnet/experiments.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <stdexcept>

namespace hetnet::experiments
{

namespace
{

// Budget for the instance feasibility test in the convergence study, where
// instances can be too large for exhaustive search.
constexpr std::uint64_t feasibility_budget = 2'000'000;

// Relative slack for comparisons between rates computed along different
// summation orders.
constexpr double rate_tolerance = 1e-9;

// Runs fn(i) for i in [0, count) on up to `jobs` threads; results keep index
// order regardless of scheduling.
template <typename T, typename F> std::vector<T> parallel_map(std::size_t count, unsigned jobs, F fn)
{
    std::vector<T> out(count);
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count < 2)
    {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = fn(i);
        return out;
    }
    std::vector<std::future<void>> workers;
    for (unsigned j = 0; j < jobs; ++j)
        workers.push_back(std::async(std::launch::async, [&, j] {
            for (std::size_t i = j; i < count; i += jobs)
                out[i] = fn(i);
        }));
    for (auto &w : workers)
        w.get();
    return out;
}

std::uint64_t max_bids(const auction::AuctionResult &result)
{
    const auto totals = result.trace.total_bids();
    return totals.empty() ? 0 : *std::max_element(totals.begin(), totals.end());
}

std::string flag(bool b)
{
    return b ? "1" : "0";
}

std::string opt(const std::optional<double> &v, const char *spec)
{
    return v ? fmt::format(fmt::runtime(spec), *v) : std::string();
}

const char *feasibility_name(oracle::Feasibility f)
{
    switch (f)
    {
    case oracle::Feasibility::feasible:
        return "feasible";
    case oracle::Feasibility::infeasible:
        return "infeasible";
    case oracle::Feasibility::unknown:
        break;
    }
    return "unknown";
}

struct PointRef
{
    std::size_t point;
    std::size_t local;
};

PointRef locate(std::size_t id, const ExperimentPlan &plan)
{
    return {id / plan.realizations, id % plan.realizations};
}

} // namespace

void ExperimentPlan::validate() const
{
    if (scenarios.empty())
        throw std::invalid_argument("plan.scenarios: at least one scenario is required");
    for (std::size_t i = 0; i < scenarios.size(); ++i)
    {
        const auto &p = scenarios[i];
        if (p.sbs + p.d2d == 0)
            throw std::invalid_argument(fmt::format("plan.scenarios[{}]: S + D must be positive", i));
        if (p.levels_dbm.empty())
            throw std::invalid_argument(fmt::format("plan.scenarios[{}].levels_dbm: must not be empty", i));
    }
    if (realizations == 0)
        throw std::invalid_argument("plan.realizations: must be positive");
    if (slots == 0)
        throw std::invalid_argument("plan.slots: must be positive");
    if (require_feasible && max_redraws == 0)
        throw std::invalid_argument("plan.max_redraws: must be positive");
}

double empirical_cdf(const std::vector<double> &samples, double j)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_cdf: no samples");
    const auto below = std::count_if(samples.begin(), samples.end(), [j](double s) { return s <= j; });
    return static_cast<double>(below) / static_cast<double>(samples.size());
}

double efficiency(double r_prop, double r_max)
{
    if (!(r_max > 0.0))
        throw std::invalid_argument("efficiency: the optimal rate must be positive");
    return r_prop / r_max;
}

ScenarioConfig apply_point(const ScenarioConfig &base, const ScenarioPoint &point)
{
    ScenarioConfig cfg = base;
    cfg.sbs = point.sbs;
    cfg.d2d = point.d2d;
    cfg.levels_dbm = point.levels_dbm;
    return cfg;
}

RandomSeed realization_seed(std::uint64_t seed, std::size_t realization, std::size_t attempt)
{
    return RandomSeed{seed}.child(realization).child(attempt);
}

ConvergenceStudy run_convergence_study(const ScenarioConfig &base, const ExperimentPlan &plan, std::uint64_t seed,
                                       unsigned jobs)
{
    plan.validate();
    std::vector<ScenarioConfig> configs;
    for (const auto &p : plan.scenarios)
    {
        configs.push_back(apply_point(base, p));
        configs.back().validate();
    }

    const std::size_t total = plan.scenarios.size() * plan.realizations;
    ConvergenceStudy study;
    study.t_max = base.auction.t_max;
    study.samples = parallel_map<ConvergenceSample>(total, jobs, [&](std::size_t id) {
        const auto where = locate(id, plan);
        const ScenarioConfig &cfg = configs[where.point];
        const std::size_t attempts = plan.require_feasible ? plan.max_redraws : 1;

        ConvergenceSample s;
        s.realization_id = id;
        s.point = where.point;
        s.sbs = cfg.sbs;
        s.d2d = cfg.d2d;
        s.nodes = 2 * (cfg.sbs + cfg.d2d); // transmitters and receivers
        s.levels = cfg.levels_dbm.size();

        std::optional<Realization> real;
        RandomSeed rs;
        for (std::size_t a = 0; a < attempts; ++a)
        {
            rs = realization_seed(seed, id, a);
            real = realize(cfg, rs);
            s.redraws = a;
            s.instance = oracle::find_feasible(real->instance, feasibility_budget).status;
            if (s.instance == oracle::Feasibility::feasible)
                break;
        }
        if (plan.require_feasible && s.instance != oracle::Feasibility::feasible)
            throw std::runtime_error(
                fmt::format("realization {}: no feasible drop within {} redraws", id, plan.max_redraws));

        const Instance &inst = real->instance;
        const auto result = auction::run_auction(inst, cfg.auction, rs);
        const auto eq = auction::equilibrium_check(result.broadcast, inst, cfg.auction);
        s.converged = result.converged;
        s.rounds = result.rounds;
        s.final_feasible = check_feasibility(result.alloc, inst).feasible();
        s.equilibrium = eq.holds;
        s.worst_slack = eq.worst_slack;
        s.max_bids = max_bids(result);
        s.bid_bound = oracle::iteration_bound(inst, cfg.auction).per_resource;
        s.sum_rate_bps = sum_rate(result.alloc, inst);
        s.trace = result.trace.rounds;
        return s;
    });
    return study;
}

ComparisonStudy run_comparison_study(const ScenarioConfig &base, const ExperimentPlan &plan, std::uint64_t seed,
                                     unsigned jobs)
{
    plan.validate();
    std::vector<ScenarioConfig> configs;
    for (const auto &p : plan.scenarios)
    {
        configs.push_back(apply_point(base, p));
        configs.back().validate();
        const auto space = oracle::search_space(configs.back().dims());
        if (space > oracle::default_limit)
            throw oracle::InstanceTooLarge(fmt::format(
                "plan.scenarios: S={} D={} L={} needs {} oracle evaluations per slot, above the limit of {}",
                p.sbs, p.d2d, p.levels_dbm.size(), space, oracle::default_limit));
    }

    const std::size_t total = plan.scenarios.size() * plan.realizations;
    auto per_realization = parallel_map<std::vector<ComparisonSample>>(total, jobs, [&](std::size_t id) {
        const auto where = locate(id, plan);
        const ScenarioConfig &cfg = configs[where.point];
        const auto dims = cfg.dims();
        const std::size_t attempts = plan.require_feasible ? plan.max_redraws : 1;

        // the drop: topology and shadowing; with require_feasible, redraw it
        // until the slot-0 channel admits a feasible allocation
        RandomSeed rs;
        Topology topo;
        LinkShadowing shadow;
        std::size_t redraws = 0;
        for (std::size_t a = 0; a < attempts; ++a)
        {
            rs = realization_seed(seed, id, a);
            topo = generate_topology(dims, cfg.propagation, rs);
            shadow = draw_shadowing(dims, cfg.propagation, rs);
            redraws = a;
            if (!plan.require_feasible)
                break;
            const auto probe = make_instance(cfg, realize_gains(topo, dims, cfg.propagation, shadow, rs, {true, 0}));
            if (oracle::find_feasible(probe).status == oracle::Feasibility::feasible)
                break;
            if (a + 1 == attempts)
                throw std::runtime_error(
                    fmt::format("realization {}: no feasible drop within {} redraws", id, plan.max_redraws));
        }

        std::vector<ComparisonSample> rows;
        for (std::size_t slot = 0; slot < plan.slots; ++slot)
        {
            const LinkShadowing slot_shadow =
                plan.refresh_shadowing && slot > 0 ? draw_shadowing(dims, cfg.propagation, rs.child(slot)) : shadow;
            const Instance inst =
                make_instance(cfg, realize_gains(topo, dims, cfg.propagation, slot_shadow, rs, {true, slot}));

            ComparisonSample s;
            s.realization_id = id;
            s.slot = slot;
            s.point = where.point;
            s.redraws = redraws;
            s.gap_bound = static_cast<double>(dims.transmitters()) * cfg.auction.epsilon;

            const auto result =
                auction::run_auction(inst, cfg.auction, RandomSeed{rs.derive(Stream::auction_init, slot)});
            const auto eq = auction::equilibrium_check(result.broadcast, inst, cfg.auction);
            s.converged = result.converged;
            s.rounds = result.rounds;
            s.auction_feasible = check_feasibility(result.alloc, inst).feasible();
            s.equilibrium = eq.holds;
            s.worst_slack = eq.worst_slack;
            s.r_prop_bps = sum_rate(result.alloc, inst);
            s.max_bids = max_bids(result);
            s.bid_bound = oracle::iteration_bound(inst, cfg.auction).per_resource;

            try
            {
                const auto best = oracle::exhaustive_optimum(inst, cfg.auction);
                s.instance_feasible = true;
                s.oracle_feasible = check_feasibility(best.best_alloc, inst).feasible();
                s.r_max_bps = best.best_weighted_rate / cfg.auction.nu1;
                s.gap = oracle::k_epsilon_gap(cfg.auction.nu1 * s.r_prop_bps, best, cfg.auction, dims).gap;
                if (s.auction_feasible)
                    s.eta = efficiency(s.r_prop_bps, *s.r_max_bps);
            }
            catch (const oracle::Infeasible &)
            {
                s.instance_feasible = false;
            }
            rows.push_back(s);
        }
        return rows;
    });

    ComparisonStudy study;
    for (auto &rows : per_realization)
        study.samples.insert(study.samples.end(), rows.begin(), rows.end());
    return study;
}

bool Validation::ok() const
{
    return std::all_of(lines.begin(), lines.end(), [](const CheckLine &l) { return l.violations == 0; });
}

Validation validate(const ConvergenceStudy &study)
{
    CheckLine bids{"bids per resource within the iteration bound", 0, 0};
    CheckLine feasible{"converged allocation feasible (feasible drops)", 0, 0};
    CheckLine slack{"epsilon-slackness at convergence", 0, 0};
    for (const auto &s : study.samples)
    {
        ++bids.checked;
        if (s.max_bids > s.bid_bound)
            ++bids.violations;
        if (!s.converged)
            continue;
        ++slack.checked;
        if (!s.equilibrium)
            ++slack.violations;
        if (s.instance == oracle::Feasibility::feasible)
        {
            ++feasible.checked;
            if (!s.final_feasible)
                ++feasible.violations;
        }
    }
    return Validation{{bids, feasible, slack}};
}

Validation validate(const ComparisonStudy &study)
{
    CheckLine eta{"efficiency at most 1", 0, 0};
    CheckLine bids{"bids per resource within the iteration bound", 0, 0};
    CheckLine feasible{"converged allocation feasible (feasible slots)", 0, 0};
    CheckLine slack{"epsilon-slackness at convergence", 0, 0};
    CheckLine gap{"optimality gap within K epsilon (converged, feasible)", 0, 0};
    CheckLine optimum{"oracle optimum feasible", 0, 0};
    for (const auto &s : study.samples)
    {
        ++bids.checked;
        if (s.instance_feasible)
        {
            ++optimum.checked;
            if (!s.oracle_feasible)
                ++optimum.violations;
        }
        if (s.max_bids > s.bid_bound)
            ++bids.violations;
        if (s.eta)
        {
            ++eta.checked;
            if (*s.eta > 1.0 + rate_tolerance)
                ++eta.violations;
        }
        if (!s.converged)
            continue;
        ++slack.checked;
        if (!s.equilibrium)
            ++slack.violations;
        if (s.instance_feasible)
        {
            ++feasible.checked;
            if (!s.auction_feasible)
                ++feasible.violations;
        }
        if (s.instance_feasible && s.auction_feasible)
        {
            ++gap.checked;
            if (*s.gap > s.gap_bound)
                ++gap.violations;
        }
    }
    return Validation{{eta, bids, feasible, slack, gap, optimum}};
}

void write_convergence_csv(const ConvergenceStudy &study, std::ostream &os)
{
    fmt::print(os, "realization_id,nodes,S,D,L,rounds,converged,instance,redraws,final_feasible,equilibrium,"
                   "worst_slack,max_bids,bid_bound,sum_rate_bps\n");
    for (const auto &s : study.samples)
        fmt::print(os, "{},{},{},{},{},{},{},{},{},{},{},{:.6f},{},{},{:.6f}\n", s.realization_id, s.nodes, s.sbs,
                   s.d2d, s.levels, s.converged ? std::to_string(s.rounds) : std::string("inf"), flag(s.converged),
                   feasibility_name(s.instance), s.redraws, flag(s.final_feasible), flag(s.equilibrium),
                   s.worst_slack, s.max_bids, s.bid_bound, s.sum_rate_bps);
}

void write_cdf_csv(const ConvergenceStudy &study, std::ostream &os)
{
    std::map<std::size_t, std::vector<double>> by_nodes;
    for (const auto &s : study.samples)
        by_nodes[s.nodes].push_back(s.converged ? static_cast<double>(s.rounds)
                                                : std::numeric_limits<double>::infinity());
    fmt::print(os, "nodes,j,cdf\n");
    for (const auto &[nodes, samples] : by_nodes)
        for (std::size_t j = 1; j <= study.t_max; ++j)
            fmt::print(os, "{},{},{:.6f}\n", nodes, j, empirical_cdf(samples, static_cast<double>(j)));
}

namespace
{

void write_trace_rows(std::size_t realization_id, const std::vector<auction::RoundRecord> &rounds, bool converged,
                      std::ostream &os)
{
    for (std::size_t i = 0; i < rounds.size(); ++i)
    {
        const auto &r = rounds[i];
        const bool last = i + 1 == rounds.size();
        fmt::print(os, "{},{},{:.6f},{},{:.6f},{}\n", realization_id, r.round, r.sum_rate_bps, r.changed_agents,
                   r.max_cost, flag(last && converged));
    }
}

constexpr const char *trace_header = "realization_id,round,sum_rate_bps,changed_agents,max_cost,converged\n";

} // namespace

void write_trace_csv(const ConvergenceStudy &study, std::ostream &os)
{
    os << trace_header;
    for (const auto &s : study.samples)
        write_trace_rows(s.realization_id, s.trace, s.converged, os);
}

void write_trace_csv(std::size_t realization_id, const auction::AuctionResult &result, const Instance &,
                     std::ostream &os, bool header)
{
    if (header)
        os << trace_header;
    write_trace_rows(realization_id, result.trace.rounds, result.converged, os);
}

void write_comparison_csv(const ComparisonStudy &study, std::ostream &os)
{
    fmt::print(os, "realization_id,slot,r_prop_bps,r_max_bps,eta,converged,rounds,feasible,instance_feasible,"
                   "equilibrium,gap,gap_bound,k_eps_ok\n");
    for (const auto &s : study.samples)
    {
        const bool gap_checked = s.gap && s.auction_feasible;
        const bool gap_ok = gap_checked && *s.gap <= s.gap_bound;
        fmt::print(os, "{},{},{:.6f},{},{},{},{},{},{},{},{},{:.6f},{}\n", s.realization_id, s.slot, s.r_prop_bps,
                   opt(s.r_max_bps, "{:.6f}"), opt(s.eta, "{:.9f}"), flag(s.converged), s.rounds,
                   flag(s.auction_feasible), flag(s.instance_feasible), flag(s.equilibrium), opt(s.gap, "{:.6f}"),
                   s.gap_bound, gap_checked ? flag(gap_ok) : std::string());
    }
}

void write_slot_means_csv(const ComparisonStudy &study, std::ostream &os)
{
    struct Acc
    {
        double prop = 0.0, max = 0.0, eta = 0.0;
        std::size_t n = 0;
    };
    std::map<std::size_t, Acc> by_slot;
    for (const auto &s : study.samples)
    {
        if (!s.eta)
            continue;
        auto &a = by_slot[s.slot];
        a.prop += s.r_prop_bps;
        a.max += *s.r_max_bps;
        a.eta += *s.eta;
        ++a.n;
    }
    fmt::print(os, "slot,mean_r_prop_bps,mean_r_max_bps,mean_eta,count\n");
    for (const auto &[slot, a] : by_slot)
        fmt::print(os, "{},{:.6f},{:.6f},{:.9f},{}\n", slot, a.prop / a.n, a.max / a.n, a.eta / a.n, a.n);
}

void write_validation(const Validation &v, std::ostream &os)
{
    for (const auto &l : v.lines)
        fmt::print(os, "{:<56} {:>6} checked {:>6} violations\n", l.name, l.checked, l.violations);
}

} // namespace hetnet::experiments
