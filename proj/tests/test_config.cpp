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

#include "hetnet/channel_io.hpp"
#include "hetnet/config.hpp"

#include <doctest.h>

#include <stdexcept>
#include <string>

using namespace hetnet;

namespace
{

std::string error_of(const std::string &json)
{
    try
    {
        parse_config(json);
    }
    catch (const ConfigError &e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("config")
{

TEST_CASE("empty document gives the reference setup")
{
    const auto cfg = parse_config("{}");
    const auto &s = cfg.scenario;
    CHECK(s.rbs == 6);
    CHECK(s.mues == 6);
    CHECK(s.threshold_dbm == std::vector<double>{-70.0});
    CHECK(s.auction.epsilon == 100.0);
    CHECK(s.auction.nu1 == 1.0);
    CHECK(s.auction.nu2 == 1.0);
    CHECK(s.mbs_total_dbm == 43.0);
    CHECK(s.noise_psd_dbm_hz == -174.0);
    CHECK(s.bandwidth_hz == 1.08e6);
    CHECK(s.propagation.macro_radius_m == 300.0);
    CHECK(s.propagation.small_radius_m == 30.0);
    CHECK(s.propagation.d2d_pair_distance_m == 15.0);
    CHECK(s.propagation.shadow_std_macro_d2d_db == 8.0);
    CHECK(s.propagation.shadow_std_small_db == 4.0);
    CHECK(s.propagation.wall_loss_db == 30.0);
    CHECK(s.interference_spec().rb_bandwidth_hz() == doctest::Approx(180e3));
}

TEST_CASE("power levels are ordered; duplicates rejected")
{
    const auto cfg = parse_config(R"({"scenario": {"levels_dbm": [7, 3, 5]}})");
    CHECK(cfg.scenario.levels_dbm == std::vector<double>{3.0, 5.0, 7.0});
    CHECK(error_of(R"({"scenario": {"levels_dbm": [3, 3]}})").find("scenario.levels_dbm") == 0);
}

TEST_CASE("validation errors name the field")
{
    CHECK(error_of(R"({"scenario": {"bandwidth_hz": -1}})").find("scenario.bandwidth_hz") == 0);
    CHECK(error_of(R"({"auction": {"epsilon": 0}})").find("auction.epsilon") == 0);
    CHECK(error_of(R"({"auction": {"mode": "async"}})").find("auction.mode") == 0);
    CHECK(error_of(R"({"scenario": {"propagation": {"wall_loss_db": -3}}})")
              .find("scenario.propagation.wall_loss_db") == 0);
    CHECK(error_of(R"({"scenario": {"N": 0}})").find("scenario.N") == 0);
    CHECK(error_of(R"({"scenario": {"threshold_dbm": [-70, -71]}})").find("scenario.threshold_dbm") == 0);
    CHECK(error_of(R"({"comparison": {"scenarios": [{"S": 0, "D": 0}]}})").find("comparison.scenarios[0]") == 0);
    CHECK(error_of(R"({"scenario": {"typo": 1}})").find("scenario.typo") == 0);
    CHECK(error_of(R"({"seed": -4})").find("seed") == 0);
    CHECK(error_of("{not json").find("<root>") == 0);
}

TEST_CASE("the echo reproduces the configuration")
{
    const auto cfg = parse_config(R"({"seed": 17, "scenario": {"S": 4, "threshold_dbm": [-70,-71,-72,-73,-74,-75]},
                                      "auction": {"mode": "sequential", "self_exclude": true},
                                      "convergence": {"realizations": 7}})");
    const std::string echo = config_to_json(cfg);
    const auto again = parse_config(echo);
    CHECK(config_to_json(again) == echo);
    CHECK(again.seed == 17);
    CHECK(again.scenario.auction.mode == auction::Mode::sequential);
    CHECK(again.convergence.realizations == 7);
}

TEST_CASE("plan documents")
{
    const auto plan = parse_plan(R"({"realizations": 3, "scenarios": [{"S": 2, "D": 1, "levels_dbm": [5, 3]}]})",
                                 Config::default_comparison_plan());
    CHECK(plan.realizations == 3);
    CHECK(plan.slots == 50);
    REQUIRE(plan.scenarios.size() == 1);
    CHECK(plan.scenarios[0].levels_dbm == std::vector<double>{3.0, 5.0});
}

TEST_CASE("channel snapshots round-trip exactly")
{
    Config cfg;
    cfg.seed = 12;
    auto real = realize(cfg.scenario, RandomSeed{cfg.seed});
    const ChannelSnapshot snap{cfg, real.topology, real.instance.gains};
    const auto back = snapshot_from_json(snapshot_to_json(snap));
    CHECK(back.gains == snap.gains);
    REQUIRE(back.topology);
    CHECK(*back.topology == real.topology);
    CHECK(config_to_json(back.config) == config_to_json(cfg));

    CHECK_THROWS_AS(snapshot_from_json(R"({"format": "other", "version": 1})"), ConfigError);
}

} // TEST_SUITE
