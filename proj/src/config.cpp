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

#include "hetnet/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hetnet
{

using nlohmann::json;

namespace
{

[[noreturn]] void fail(const std::string &path, const std::string &what)
{
    throw ConfigError(path + ": " + what);
}

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported with their full path.
class Section
{
  public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            fail(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string at(const std::string &key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    const json *get(const std::string &key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end() || it->is_null())
            return nullptr;
        return &*it;
    }

    void number(const std::string &key, double &out)
    {
        if (const json *v = get(key))
        {
            if (!v->is_number())
                fail(at(key), "expected a number");
            out = v->get<double>();
            if (!std::isfinite(out))
                fail(at(key), "must be finite");
        }
    }

    void positive(const std::string &key, double &out)
    {
        number(key, out);
        if (!(out > 0.0))
            fail(at(key), "must be positive");
    }

    void non_negative(const std::string &key, double &out)
    {
        number(key, out);
        if (!(out >= 0.0))
            fail(at(key), "must be >= 0");
    }

    void optional_number(const std::string &key, std::optional<double> &out)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end())
            return;
        if (it->is_null())
        {
            out.reset();
            return;
        }
        double v = 0.0;
        number(key, v);
        out = v;
    }

    template <typename T> void count(const std::string &key, T &out, std::uint64_t min)
    {
        if (const json *v = get(key))
        {
            if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned()))
                fail(at(key), "expected a non-negative integer");
            const auto u = v->get<std::uint64_t>();
            if (u < min)
                fail(at(key), "must be at least " + std::to_string(min));
            out = static_cast<T>(u);
        }
    }

    void boolean(const std::string &key, bool &out)
    {
        if (const json *v = get(key))
        {
            if (!v->is_boolean())
                fail(at(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                fail(at(it.key()), "unknown key");
    }

  private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

std::vector<double> parse_levels(const json &v, const std::string &path)
{
    if (!v.is_array() || v.empty())
        fail(path, "expected a non-empty array of dBm values");
    std::vector<double> levels;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
            fail(path + "[" + std::to_string(i) + "]", "expected a finite number");
        levels.push_back(v[i].get<double>());
    }
    std::sort(levels.begin(), levels.end());
    if (std::adjacent_find(levels.begin(), levels.end()) != levels.end())
        fail(path, "duplicate power level");
    return levels;
}

void parse_propagation(const json &j, const std::string &path, PropagationParams &p)
{
    Section s(j, path);
    s.non_negative("shadow_std_macro_d2d_db", p.shadow_std_macro_d2d_db);
    s.non_negative("shadow_std_small_db", p.shadow_std_small_db);
    s.non_negative("wall_loss_db", p.wall_loss_db);
    s.positive("d2d_pair_distance_m", p.d2d_pair_distance_m);
    s.positive("macro_radius_m", p.macro_radius_m);
    s.positive("small_radius_m", p.small_radius_m);
    s.positive("area_side_m", p.area_side_m);
    s.positive("min_distance_m", p.min_distance_m);
    s.finish();
}

void parse_scenario(const json &j, ScenarioConfig &c)
{
    Section s(j, "scenario");
    s.count("M", c.mues, 1);
    s.count("S", c.sbs, 0);
    s.count("D", c.d2d, 0);
    s.count("N", c.rbs, 1);
    if (const json *v = s.get("levels_dbm"))
        c.levels_dbm = parse_levels(*v, s.at("levels_dbm"));
    s.number("mbs_total_dbm", c.mbs_total_dbm);
    s.optional_number("mbs_per_rb_dbm", c.mbs_per_rb_dbm);
    if (const json *v = s.get("threshold_dbm"))
    {
        if (v->is_number())
        {
            c.threshold_dbm = {v->get<double>()};
        }
        else if (v->is_array() && !v->empty())
        {
            c.threshold_dbm.clear();
            for (const auto &x : *v)
            {
                if (!x.is_number())
                    fail(s.at("threshold_dbm"), "expected numbers");
                c.threshold_dbm.push_back(x.get<double>());
            }
        }
        else
        {
            fail(s.at("threshold_dbm"), "expected a number or a non-empty array");
        }
        for (double t : c.threshold_dbm)
            if (!std::isfinite(t))
                fail(s.at("threshold_dbm"), "must be finite");
    }
    s.number("noise_psd_dbm_hz", c.noise_psd_dbm_hz);
    s.positive("bandwidth_hz", c.bandwidth_hz);
    s.optional_number("rb_bandwidth_hz", c.rb_bandwidth_hz);
    if (c.rb_bandwidth_hz && !(*c.rb_bandwidth_hz > 0.0))
        fail(s.at("rb_bandwidth_hz"), "must be positive");
    if (const json *v = s.get("propagation"))
        parse_propagation(*v, s.at("propagation"), c.propagation);
    s.finish();

    if (c.sbs + c.d2d == 0)
        fail("scenario", "S + D must be at least 1");
    if (c.threshold_dbm.size() != 1 && c.threshold_dbm.size() != c.rbs)
        fail("scenario.threshold_dbm", "give one value or exactly N values");
}

void parse_auction(const json &j, auction::AuctionParams &a)
{
    Section s(j, "auction");
    s.positive("epsilon", a.epsilon);
    s.non_negative("nu1", a.nu1);
    s.non_negative("nu2", a.nu2);
    s.count("t_max", a.t_max, 2);
    s.count("window", a.window, 2);
    s.positive("cost_scale", a.cost_scale);
    s.boolean("self_exclude", a.self_exclude);
    s.boolean("rebid_unhappy", a.rebid_unhappy);
    if (const json *v = s.get("mode"))
    {
        const std::string m = v->is_string() ? v->get<std::string>() : std::string();
        if (m == "synchronous")
            a.mode = auction::Mode::synchronous;
        else if (m == "sequential")
            a.mode = auction::Mode::sequential;
        else
            fail(s.at("mode"), "expected \"synchronous\" or \"sequential\"");
    }
    s.finish();
}

void parse_plan_into(const json &j, const std::string &path, experiments::ExperimentPlan &p)
{
    Section s(j, path);
    if (const json *v = s.get("scenarios"))
    {
        if (!v->is_array() || v->empty())
            fail(s.at("scenarios"), "expected a non-empty array");
        p.scenarios.clear();
        for (std::size_t i = 0; i < v->size(); ++i)
        {
            const std::string ip = s.at("scenarios") + "[" + std::to_string(i) + "]";
            Section e((*v)[i], ip);
            experiments::ScenarioPoint pt;
            e.count("S", pt.sbs, 0);
            e.count("D", pt.d2d, 0);
            if (const json *l = e.get("levels_dbm"))
                pt.levels_dbm = parse_levels(*l, e.at("levels_dbm"));
            e.finish();
            if (pt.sbs + pt.d2d == 0)
                fail(ip, "S + D must be at least 1");
            p.scenarios.push_back(pt);
        }
    }
    s.count("realizations", p.realizations, 1);
    s.count("slots", p.slots, 1);
    s.boolean("require_feasible", p.require_feasible);
    s.count("max_redraws", p.max_redraws, 1);
    s.boolean("refresh_shadowing", p.refresh_shadowing);
    s.finish();
}

json parse_text(const std::string &text)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
    }
}

json plan_to_json(const experiments::ExperimentPlan &p)
{
    json scenarios = json::array();
    for (const auto &pt : p.scenarios)
        scenarios.push_back({{"S", pt.sbs}, {"D", pt.d2d}, {"levels_dbm", pt.levels_dbm}});
    return {{"scenarios", scenarios},
            {"realizations", p.realizations},
            {"slots", p.slots},
            {"require_feasible", p.require_feasible},
            {"max_redraws", p.max_redraws},
            {"refresh_shadowing", p.refresh_shadowing}};
}

json optional_json(const std::optional<double> &v)
{
    return v ? json(*v) : json(nullptr);
}

} // namespace

experiments::ExperimentPlan Config::default_convergence_plan()
{
    experiments::ExperimentPlan p;
    p.scenarios = {{6, 4, {3.0, 5.0, 7.0}}, {9, 6, {3.0, 5.0, 7.0}}};
    p.realizations = 100;
    p.slots = 1;
    return p;
}

experiments::ExperimentPlan Config::default_comparison_plan()
{
    experiments::ExperimentPlan p;
    p.scenarios = {{3, 2, {3.0, 5.0}}};
    p.realizations = 50;
    p.slots = 50;
    p.require_feasible = true;
    return p;
}

Config parse_config(const std::string &json_text)
{
    const json root = parse_text(json_text);
    Config cfg;
    Section s(root, "");
    if (const json *v = s.get("seed"))
    {
        if (!v->is_number_unsigned())
            fail("seed", "expected a non-negative integer");
        cfg.seed = v->get<std::uint64_t>();
    }
    if (const json *v = s.get("scenario"))
        parse_scenario(*v, cfg.scenario);
    if (const json *v = s.get("auction"))
        parse_auction(*v, cfg.scenario.auction);
    if (const json *v = s.get("convergence"))
        parse_plan_into(*v, "convergence", cfg.convergence);
    if (const json *v = s.get("comparison"))
        parse_plan_into(*v, "comparison", cfg.comparison);
    s.finish();

    // backstop for cross-field constraints not covered above
    try
    {
        cfg.scenario.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    return cfg;
}

Config load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open configuration file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

experiments::ExperimentPlan parse_plan(const std::string &json_text, const experiments::ExperimentPlan &defaults)
{
    const json root = parse_text(json_text);
    experiments::ExperimentPlan plan = defaults;
    parse_plan_into(root, "plan", plan);
    return plan;
}

std::string config_to_json(const Config &cfg, int indent)
{
    const auto &c = cfg.scenario;
    const auto &p = c.propagation;
    const auto &a = c.auction;
    json threshold = c.threshold_dbm.size() == 1 ? json(c.threshold_dbm.front()) : json(c.threshold_dbm);
    json root = {
        {"seed", cfg.seed},
        {"scenario",
         {{"M", c.mues},
          {"S", c.sbs},
          {"D", c.d2d},
          {"N", c.rbs},
          {"levels_dbm", c.levels_dbm},
          {"mbs_total_dbm", c.mbs_total_dbm},
          {"mbs_per_rb_dbm", optional_json(c.mbs_per_rb_dbm)},
          {"threshold_dbm", threshold},
          {"noise_psd_dbm_hz", c.noise_psd_dbm_hz},
          {"bandwidth_hz", c.bandwidth_hz},
          {"rb_bandwidth_hz", optional_json(c.rb_bandwidth_hz)},
          {"propagation",
           {{"shadow_std_macro_d2d_db", p.shadow_std_macro_d2d_db},
            {"shadow_std_small_db", p.shadow_std_small_db},
            {"wall_loss_db", p.wall_loss_db},
            {"d2d_pair_distance_m", p.d2d_pair_distance_m},
            {"macro_radius_m", p.macro_radius_m},
            {"small_radius_m", p.small_radius_m},
            {"area_side_m", p.area_side_m},
            {"min_distance_m", p.min_distance_m}}}}},
        {"auction",
         {{"epsilon", a.epsilon},
          {"nu1", a.nu1},
          {"nu2", a.nu2},
          {"t_max", a.t_max},
          {"window", a.window},
          {"cost_scale", a.cost_scale},
          {"self_exclude", a.self_exclude},
          {"rebid_unhappy", a.rebid_unhappy},
          {"mode", a.mode == auction::Mode::synchronous ? "synchronous" : "sequential"}}},
        {"convergence", plan_to_json(cfg.convergence)},
        {"comparison", plan_to_json(cfg.comparison)},
    };
    return root.dump(indent);
}

} // namespace hetnet
