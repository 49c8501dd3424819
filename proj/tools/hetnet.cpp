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

// Command-line front end:
//
//   hetnet run          [--channel FILE]   one drop, auction only
//   hetnet oracle       [--channel FILE]   one drop, auction and exhaustive search
//   hetnet convergence  [--plan FILE]      convergence-time study
//   hetnet compare      [--plan FILE]      auction-versus-oracle efficiency study
//   hetnet dump-channel                    write a channel snapshot
//   hetnet load-channel FILE               replay a snapshot through the auction
//
// Exit codes: 0 success, 1 runtime error, 2 invalid arguments or config,
// 3 a study finished but violated one of its invariant checks.

#include "hetnet/channel_io.hpp"
#include "hetnet/config.hpp"
#include "hetnet/experiments.hpp"
#include "hetnet/oracle.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

using namespace hetnet;
using nlohmann::json;
namespace fs = std::filesystem;

constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;
constexpr int exit_validation = 3;

struct Options
{
    std::string config_path;
    std::string plan_path;
    std::string channel_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "text";
    unsigned jobs = 1;
    bool self_exclude = false;
    bool sequential = false;
    bool rebid_unhappy = false;
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Config effective_config(const Options &o)
{
    Config cfg = o.config_path.empty() ? Config{} : load_config(o.config_path);
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.self_exclude)
        cfg.scenario.auction.self_exclude = true;
    if (o.sequential)
        cfg.scenario.auction.mode = auction::Mode::sequential;
    if (o.rebid_unhappy)
        cfg.scenario.auction.rebid_unhappy = true;
    return cfg;
}

fs::path out_dir(const Options &o)
{
    fs::path dir(o.out);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path &path, const std::string &text)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    out << text;
}

template <typename F> void write_with(const fs::path &path, F fn)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    fn(out);
}

// The echo goes to stderr so stdout stays a pure function of the inputs.
void echo_config(const Config &cfg, const Options &o)
{
    std::cerr << "effective config: " << config_to_json(cfg, -1) << '\n';
    if (!o.out.empty())
        write_text(out_dir(o) / "effective_config.json", config_to_json(cfg) + "\n");
}

// The drop used by run / oracle / dump-channel: either a snapshot or a fresh
// realization from the seed.
ChannelSnapshot obtain_channel(const Options &o, Config cfg)
{
    if (!o.channel_path.empty())
    {
        ChannelSnapshot snap = load_snapshot(o.channel_path);
        // command-line auction switches still apply to a replayed channel
        if (o.seed)
            snap.config.seed = *o.seed;
        if (o.self_exclude)
            snap.config.scenario.auction.self_exclude = true;
        if (o.sequential)
            snap.config.scenario.auction.mode = auction::Mode::sequential;
        if (o.rebid_unhappy)
            snap.config.scenario.auction.rebid_unhappy = true;
        return snap;
    }
    cfg.scenario.validate();
    auto real = realize(cfg.scenario, RandomSeed{cfg.seed});
    return ChannelSnapshot{cfg, std::move(real.topology), std::move(real.instance.gains)};
}

std::string alloc_json_string(const Allocation &a)
{
    json arr = json::array();
    for (std::size_t k = 0; k < a.size(); ++k)
        arr.push_back(a[k] ? json{{"rb", a[k]->rb}, {"level", a[k]->level}} : json(nullptr));
    return arr.dump();
}

json run_summary(const ChannelSnapshot &snap, const auction::AuctionResult &res, const Instance &inst)
{
    const auto &params = snap.config.scenario.auction;
    const auto feas = check_feasibility(res.alloc, inst);
    const auto eq = auction::equilibrium_check(res.broadcast, inst, params);
    const auto totals = res.trace.total_bids();
    json j;
    j["seed"] = snap.config.seed;
    j["allocation"] = json::parse(alloc_json_string(res.alloc));
    j["sum_rate_bps"] = sum_rate(res.alloc, inst);
    j["converged"] = res.converged;
    j["rounds"] = res.rounds;
    j["feasible"] = feas.feasible();
    j["overloaded_rbs"] = feas.overloaded_rbs;
    j["equilibrium"] = eq.holds;
    j["worst_slack"] = eq.worst_slack;
    j["max_bids_per_resource"] = totals.empty() ? 0 : *std::max_element(totals.begin(), totals.end());
    j["bid_bound"] = oracle::iteration_bound(inst, params).per_resource;
    return j;
}

void print_run_text(const json &j, std::ostream &os)
{
    fmt::print(os, "seed            {}\n", j["seed"].get<std::uint64_t>());
    fmt::print(os, "allocation      {}\n", j["allocation"].dump());
    fmt::print(os, "sum rate        {:.3f} bit/s\n", j["sum_rate_bps"].get<double>());
    fmt::print(os, "converged       {} after {} rounds\n", j["converged"].get<bool>() ? "yes" : "no",
               j["rounds"].get<std::size_t>());
    fmt::print(os, "feasible        {}\n", j["feasible"].get<bool>() ? "yes" : "no");
    fmt::print(os, "eps-slackness   {} (worst slack {:.3f})\n", j["equilibrium"].get<bool>() ? "holds" : "violated",
               j["worst_slack"].get<double>());
    fmt::print(os, "bids/resource   {} (bound {})\n", j["max_bids_per_resource"].get<std::uint64_t>(),
               j["bid_bound"].get<std::uint64_t>());
}

int cmd_run(const Options &o)
{
    const Config cfg = effective_config(o);
    const ChannelSnapshot snap = obtain_channel(o, cfg);
    echo_config(snap.config, o);
    const Instance inst = snap.instance();
    const auto res = auction::run_auction(inst, snap.config.scenario.auction, RandomSeed{snap.config.seed});
    const json summary = run_summary(snap, res, inst);

    if (o.format == "json")
        std::cout << summary.dump(2) << '\n';
    else if (o.format == "csv")
        experiments::write_trace_csv(0, res, inst, std::cout);
    else
        print_run_text(summary, std::cout);

    if (!o.out.empty())
    {
        const auto dir = out_dir(o);
        write_with(dir / "trace.csv", [&](std::ostream &os) { experiments::write_trace_csv(0, res, inst, os); });
        write_text(dir / "result.json", summary.dump(2) + "\n");
    }
    return 0;
}

int cmd_oracle(const Options &o)
{
    const Config cfg = effective_config(o);
    const ChannelSnapshot snap = obtain_channel(o, cfg);
    echo_config(snap.config, o);
    const Instance inst = snap.instance();
    const auto &params = snap.config.scenario.auction;
    const auto res = auction::run_auction(inst, params, RandomSeed{snap.config.seed});
    json j = run_summary(snap, res, inst);

    try
    {
        const auto best = oracle::exhaustive_optimum(inst, params, oracle::default_limit, o.jobs);
        const double r_prop = sum_rate(res.alloc, inst);
        const auto gap = oracle::k_epsilon_gap(params.nu1 * r_prop, best, params, inst.dims);
        j["oracle_allocation"] = json::parse(alloc_json_string(best.best_alloc));
        j["r_max_bps"] = best.best_weighted_rate / params.nu1;
        j["feasible_allocations"] = best.feasible_count;
        j["eta"] = check_feasibility(res.alloc, inst).feasible() ? json(experiments::efficiency(r_prop, best.best_weighted_rate / params.nu1)) : json(nullptr);
        j["gap"] = gap.gap;
        j["gap_bound"] = gap.bound;
        j["within_bound"] = gap.within_bound;
    }
    catch (const oracle::Infeasible &)
    {
        j["r_max_bps"] = nullptr;
        j["oracle"] = "no feasible allocation exists";
    }

    if (o.format == "json")
    {
        std::cout << j.dump(2) << '\n';
    }
    else
    {
        print_run_text(j, std::cout);
        if (j["r_max_bps"].is_null())
        {
            std::cout << "oracle          no feasible allocation exists\n";
        }
        else
        {
            fmt::print(std::cout, "oracle          {} ({:.3f} bit/s, {} feasible allocations)\n",
                       j["oracle_allocation"].dump(), j["r_max_bps"].get<double>(),
                       j["feasible_allocations"].get<std::uint64_t>());
            if (j["eta"].is_null())
                std::cout << "efficiency      n/a (auction allocation infeasible)\n";
            else
                fmt::print(std::cout, "efficiency      {:.6f}\n", j["eta"].get<double>());
            fmt::print(std::cout, "gap             {:.3f} (K eps = {:.3f}, {})\n", j["gap"].get<double>(),
                       j["gap_bound"].get<double>(), j["within_bound"].get<bool>() ? "within" : "exceeded");
        }
    }
    if (!o.out.empty())
        write_text(out_dir(o) / "result.json", j.dump(2) + "\n");
    return 0;
}

experiments::ExperimentPlan plan_for(const Options &o, const experiments::ExperimentPlan &base)
{
    return o.plan_path.empty() ? base : parse_plan(read_file(o.plan_path), base);
}

int finish_validation(const experiments::Validation &v, const fs::path &dir)
{
    experiments::write_validation(v, std::cout);
    write_with(dir / "validation.txt", [&](std::ostream &os) { experiments::write_validation(v, os); });
    return v.ok() ? 0 : exit_validation;
}

int cmd_convergence(const Options &o)
{
    Config cfg = effective_config(o);
    cfg.convergence = plan_for(o, cfg.convergence);
    echo_config(cfg, o);
    const auto study = experiments::run_convergence_study(cfg.scenario, cfg.convergence, cfg.seed, o.jobs);
    const auto dir = out_dir(o);
    write_with(dir / "convergence.csv", [&](std::ostream &os) { experiments::write_convergence_csv(study, os); });
    write_with(dir / "cdf.csv", [&](std::ostream &os) { experiments::write_cdf_csv(study, os); });
    write_with(dir / "trace.csv", [&](std::ostream &os) { experiments::write_trace_csv(study, os); });
    return finish_validation(experiments::validate(study), dir);
}

int cmd_compare(const Options &o)
{
    Config cfg = effective_config(o);
    cfg.comparison = plan_for(o, cfg.comparison);
    echo_config(cfg, o);
    const auto study = experiments::run_comparison_study(cfg.scenario, cfg.comparison, cfg.seed, o.jobs);
    const auto dir = out_dir(o);
    write_with(dir / "comparison.csv", [&](std::ostream &os) { experiments::write_comparison_csv(study, os); });
    write_with(dir / "slot_means.csv", [&](std::ostream &os) { experiments::write_slot_means_csv(study, os); });
    return finish_validation(experiments::validate(study), dir);
}

int cmd_dump(const Options &o)
{
    const Config cfg = effective_config(o);
    const ChannelSnapshot snap = obtain_channel(o, cfg);
    echo_config(snap.config, o);
    if (o.out.empty())
        std::cout << snapshot_to_json(snap, 1) << '\n';
    else
        save_snapshot(snap, (out_dir(o) / "channel.json").string());
    return 0;
}

void add_common(CLI::App *sub, Options &o, bool with_channel)
{
    sub->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "master seed (overrides the config)");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_flag("--self-exclude", o.self_exclude, "drop the agent's own contribution from its interference estimate");
    sub->add_flag("--sequential", o.sequential, "one agent per round instead of synchronous rounds");
    sub->add_flag("--rebid-unhappy", o.rebid_unhappy,
                  "also bid when the held resource trails the best one by more than epsilon");
    if (with_channel)
        sub->add_option("--channel", o.channel_path, "channel snapshot instead of a fresh drop")
            ->check(CLI::ExistingFile);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Auction-based RB and power allocation for D2D-enabled two-tier networks"};
    app.require_subcommand(1);
    Options o;

    auto *run = app.add_subcommand("run", "run the auction on one drop");
    add_common(run, o, true);
    auto *orc = app.add_subcommand("oracle", "run the auction and the exhaustive optimum on one drop");
    add_common(orc, o, true);
    auto *conv = app.add_subcommand("convergence", "convergence-time study");
    add_common(conv, o, false);
    conv->add_option("--plan", o.plan_path, "experiment plan JSON")->check(CLI::ExistingFile);
    conv->get_option("--out")->required();
    auto *cmp = app.add_subcommand("compare", "auction-versus-oracle efficiency study");
    add_common(cmp, o, false);
    cmp->add_option("--plan", o.plan_path, "experiment plan JSON")->check(CLI::ExistingFile);
    cmp->get_option("--out")->required();
    auto *dump = app.add_subcommand("dump-channel", "write a channel snapshot (stdout, or OUT/channel.json)");
    add_common(dump, o, false);
    auto *load = app.add_subcommand("load-channel", "run the auction on a channel snapshot");
    add_common(load, o, false);
    load->add_option("file", o.channel_path, "channel snapshot")->required()->check(CLI::ExistingFile);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e); // prints help or the error
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (run->parsed() || load->parsed())
            return cmd_run(o);
        if (orc->parsed())
            return cmd_oracle(o);
        if (conv->parsed())
            return cmd_convergence(o);
        if (cmp->parsed())
            return cmd_compare(o);
        if (dump->parsed())
            return cmd_dump(o);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_usage;
}
