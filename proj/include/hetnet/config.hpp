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

#ifndef HETNET_CONFIG_HPP
#define HETNET_CONFIG_HPP

#include "hetnet/experiments.hpp"
#include "hetnet/scenario.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

// JSON configuration. Every field is optional and falls back to the
// reference setup; unknown keys are rejected so typos do not pass silently.
//
//   {
//     "seed": 1,
//     "scenario": { "M": 6, "S": 3, "D": 2, "N": 6, "levels_dbm": [3, 5],
//                   "mbs_total_dbm": 43, "mbs_per_rb_dbm": null,
//                   "threshold_dbm": -70, "noise_psd_dbm_hz": -174,
//                   "bandwidth_hz": 1.08e6, "rb_bandwidth_hz": null,
//                   "propagation": { ... } },
//     "auction": { "epsilon": 100, "nu1": 1, "nu2": 1, "t_max": 500,
//                  "window": 2, "cost_scale": 1e13, "self_exclude": false,
//                  "rebid_unhappy": false, "mode": "synchronous" },
//     "convergence": <plan>, "comparison": <plan>
//   }
//
// A plan is { "scenarios": [{"S":..,"D":..,"levels_dbm":[..]}],
// "realizations": .., "slots": .., "require_feasible": ..,
// "max_redraws": .., "refresh_shadowing": .. }.
namespace hetnet
{

// Parse or validation failure; the message starts with the field path.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Config
{
    std::uint64_t seed = 1;
    ScenarioConfig scenario;
    experiments::ExperimentPlan convergence = default_convergence_plan();
    experiments::ExperimentPlan comparison = default_comparison_plan();

    static experiments::ExperimentPlan default_convergence_plan();
    static experiments::ExperimentPlan default_comparison_plan();
};

Config parse_config(const std::string &json_text);
Config load_config(const std::string &path);

// A bare plan document, as accepted by --plan.
experiments::ExperimentPlan parse_plan(const std::string &json_text, const experiments::ExperimentPlan &defaults);

// Complete, explicit JSON of the effective configuration; parsing it back
// yields an identical Config.
std::string config_to_json(const Config &cfg, int indent = 2);

} // namespace hetnet

#endif
