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

#include "fixtures.hpp"

#include "hetnet/model.hpp"
#include "hetnet/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace hetnet;

TEST_SUITE("model")
{

TEST_CASE("noise power of a 180 kHz RB at -174 dBm/Hz")
{
    const InterferenceSpec spec({-70.0}, -174.0, 180e3);
    const double expected_dbm = -174.0 + 10.0 * std::log10(180000.0);
    CHECK(watt_to_dbm(noise_power(spec)) == doctest::Approx(expected_dbm).epsilon(1e-12));
    CHECK(std::abs(watt_to_dbm(noise_power(spec)) - (-121.45)) < 0.01);
    CHECK(noise_power(spec) == doctest::Approx(7.16e-16).epsilon(1e-3));
}

TEST_CASE("noise power identities")
{
    CHECK(noise_power(InterferenceSpec({0.0}, 0.0, 1.0)) == doctest::Approx(1e-3));
    const double one = noise_power(InterferenceSpec({0.0}, -174.0, 180e3));
    const double two = noise_power(InterferenceSpec({0.0}, -174.0, 360e3));
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-12));
}

TEST_CASE("rate of a 180 kHz RB at SINR 5")
{
    const InterferenceSpec spec({0.0}, -174.0, 180e3);
    const double expected = 180000.0 * std::log(6.0) / std::log(2.0);
    CHECK(std::abs(rate(5.0, spec) - expected) < 1.0);
    CHECK(rate(0.0, spec) == 0.0);
    CHECK(rate(1.0, InterferenceSpec({0.0}, 0.0, 1.0)) == doctest::Approx(1.0));
}

TEST_CASE("SINR hand example: 1e-6 mW over 1e-7 + 1e-7 mW")
{
    fixtures::Builder b;
    b.dims = fixtures::dims(1, 1, 0, 1);
    b.levels_dbm = {0.0};          // 1 mW
    b.mbs_dbm = 20.0;              // 100 mW
    b.noise_psd_dbm_hz = -70.0;    // 1e-7 mW over 1 Hz
    auto inst = b.build();
    inst.gains.direct(0, 0) = 1e-6;
    inst.gains.mbs_to_underlay(0, 0) = 1e-9;
    Allocation alloc(1);
    CHECK(sinr(0, {0, 0}, alloc, inst) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("SINR without interferers reduces to g p / noise")
{
    fixtures::Builder b;
    b.dims = fixtures::dims(1, 2, 0, 2);
    b.levels_dbm = {0.0};
    auto inst = b.build();
    inst.gains.direct(0, 1) = 3.0;
    Allocation alloc(2);
    alloc.assign(1, {0, 0}); // other transmitter on a different RB
    inst.gains.cross(1, 0, 1) = 100.0;
    CHECK(sinr(0, {1, 0}, alloc, inst) == doctest::Approx(3.0 * 1e-3 / 1e-3));
}

TEST_CASE("SINR monotonicity")
{
    fixtures::Builder b;
    b.dims = fixtures::dims(2, 2, 1, 2);
    b.levels_dbm = {0.0, 3.0, 6.0};
    b.fill = 1e-3;
    auto inst = b.build();
    Allocation alloc(3);
    alloc.assign(1, {0, 0});
    alloc.clear(2);

    SUBCASE("strictly increasing in own level")
    {
        double prev = 0.0;
        for (std::size_t l = 0; l < 3; ++l)
        {
            const double g = sinr(0, {0, l}, alloc, inst);
            CHECK(g > prev);
            prev = g;
        }
    }
    SUBCASE("adding or raising a co-channel interferer lowers SINR")
    {
        const double base = sinr(0, {0, 0}, alloc, inst);
        Allocation more = alloc;
        more.assign(2, {0, 0});
        const double with_third = sinr(0, {0, 0}, more, inst);
        CHECK(with_third < base);
        more.assign(2, {0, 2});
        CHECK(sinr(0, {0, 0}, more, inst) < with_third);
        more.assign(2, {1, 2}); // moved off-channel
        CHECK(sinr(0, {0, 0}, more, inst) == doctest::Approx(base));
    }
}

TEST_CASE("SINR rejects out-of-range indices")
{
    fixtures::Builder b;
    b.dims = fixtures::dims(1, 1, 0, 1);
    const auto inst = b.build();
    Allocation alloc(1);
    CHECK_THROWS_AS(sinr(3, {0, 0}, alloc, inst), std::out_of_range);
    CHECK_THROWS_AS(sinr(0, {2, 0}, alloc, inst), std::out_of_range);
    CHECK_THROWS_AS(sinr(0, {0, 5}, alloc, inst), std::out_of_range);
}

TEST_CASE("reference user is the strongest MUE, lowest index on ties")
{
    fixtures::Builder b;
    b.dims = fixtures::dims(3, 1, 0, 2);
    auto inst = b.build();
    inst.gains.to_mue(0, 0, 0) = 1e-9;
    inst.gains.to_mue(0, 1, 0) = 3e-9;
    inst.gains.to_mue(0, 2, 0) = 2e-9;
    CHECK(reference_user(0, 0, inst.gains) == 1); // second MUE
    CHECK(reference_gain(0, 0, inst.gains) == 3e-9);
    for (std::size_t m = 0; m < 3; ++m)
        inst.gains.to_mue(0, m, 1) = 5e-9;
    CHECK(reference_user(0, 1, inst.gains) == 0);

    fixtures::Builder single;
    single.dims = fixtures::dims(1, 1, 0, 1);
    CHECK(reference_user(0, 0, single.build().gains) == 0);
}

TEST_CASE("aggregated interference")
{
    fixtures::Builder b;
    b.dims = fixtures::dims(1, 2, 0, 2);
    b.levels_dbm = {10.0 * std::log10(2.0)}; // 2 mW
    auto inst = b.build();
    inst.gains.to_mue(0, 0, 0) = 1e-9;
    inst.gains.to_mue(1, 0, 0) = 4e-9;
    Allocation alloc(2);
    CHECK(aggregated_interference(0, alloc, inst) == 0.0);
    alloc.assign(0, {0, 0});
    CHECK(aggregated_interference(0, alloc, inst) == doctest::Approx(2e-12).epsilon(1e-12));
    alloc.assign(1, {0, 0});
    CHECK(aggregated_interference(0, alloc, inst) == doctest::Approx(2e-12 + 8e-12).epsilon(1e-12));
    CHECK(aggregated_interference(1, alloc, inst) == 0.0);
}

TEST_CASE("incremental interference matches full recomputation")
{
    std::mt19937_64 rng(11);
    ScenarioConfig cfg;
    cfg.sbs = 6;
    cfg.d2d = 4;
    cfg.levels_dbm = {3.0, 5.0, 7.0};
    auto real = realize(cfg, RandomSeed{5});
    const auto &inst = real.instance;
    const std::size_t K = inst.dims.transmitters();
    std::uniform_int_distribution<std::size_t> rb(0, inst.dims.rbs - 1), lv(0, inst.dims.levels - 1);

    Allocation alloc(K);
    std::vector<double> running(inst.dims.rbs, 0.0);
    std::vector<double> peak(inst.dims.rbs, 0.0); // rounding scales with the largest sum seen
    for (int step = 0; step < 2000; ++step)
    {
        const std::size_t k = step % K;
        if (alloc[k])
            running[alloc[k]->rb] -= reference_gain(k, alloc[k]->rb, inst.gains) * inst.power.level_watt(alloc[k]->level);
        const Resource r{rb(rng), lv(rng)};
        alloc.assign(k, r);
        running[r.rb] += reference_gain(k, r.rb, inst.gains) * inst.power.level_watt(r.level);
        peak[r.rb] = std::max(peak[r.rb], running[r.rb]);
        for (std::size_t n = 0; n < inst.dims.rbs; ++n)
        {
            const double full = aggregated_interference(n, alloc, inst);
            CHECK(std::abs(running[n] - full) <= 1e-12 * peak[n]);
        }
    }
}

TEST_CASE("dBm round trip")
{
    for (double dbm : {-174.0, -121.45, -70.0, 0.0, 3.0, 35.2, 43.0})
        CHECK(std::abs(watt_to_dbm(dbm_to_watt(dbm)) - dbm) < 1e-9);
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
}

TEST_CASE("feasibility: strict threshold and one-hot")
{
    fixtures::Builder b;
    b.dims = fixtures::dims(1, 2, 0, 1);
    b.levels_dbm = {0.0};     // 1e-3 W
    b.threshold_dbm = -30.0;  // 1e-6 W
    auto inst = b.build();

    Allocation none(2);
    auto report = check_feasibility(none, inst);
    CHECK(report.unassigned_transmitters == std::vector<std::size_t>{0, 1});
    CHECK_FALSE(report.feasible());

    Allocation alloc(2);
    alloc.assign(0, {0, 0});
    alloc.assign(1, {0, 0});
    // total interference exactly at the threshold: 2 * 5e-4 * 1e-3 = 1e-6 W
    inst.gains.to_mue(0, 0, 0) = 5e-4;
    inst.gains.to_mue(1, 0, 0) = 5e-4;
    const double total = aggregated_interference(0, alloc, inst);
    const double threshold = inst.interference.threshold_watt(0);
    REQUIRE(total == threshold);
    report = check_feasibility(alloc, inst);
    CHECK(report.overloaded_rbs == std::vector<std::size_t>{0});

    inst.gains.to_mue(1, 0, 0) = 4e-4;
    CHECK(check_feasibility(alloc, inst).feasible());
}

TEST_CASE("sum rate")
{
    fixtures::Builder b;
    b.dims = fixtures::dims(1, 2, 0, 2);
    b.levels_dbm = {0.0};
    auto inst = b.build();
    inst.gains.direct(0, 0) = 2.0;
    inst.gains.direct(1, 1) = 5.0;
    Allocation alloc(2);
    alloc.assign(0, {0, 0});
    CHECK_THROWS_AS(sum_rate(alloc, inst), std::invalid_argument);
    alloc.assign(1, {1, 0});
    // disjoint RBs, zero cross gains: independent Shannon rates at SINR = g
    CHECK(sum_rate(alloc, inst) == doctest::Approx(fixtures::shannon(1.0, 2.0) + fixtures::shannon(1.0, 5.0)));

    Allocation one(1);
    fixtures::Builder single;
    single.dims = fixtures::dims(1, 1, 0, 1);
    auto s = single.build();
    s.gains.direct(0, 0) = 7.0;
    one.assign(0, {0, 0});
    CHECK(sum_rate(one, s) == rate(sinr(0, {0, 0}, one, s), s.interference));
}

TEST_CASE("power table and dims validation")
{
    CHECK_THROWS_AS(PowerLevelTable({}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerLevelTable({5.0, 3.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerLevelTable({3.0, 3.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(InterferenceSpec({-70.0}, -174.0, -1.0), std::invalid_argument);
    ScenarioDims d;
    d.sbs = d.d2d = 0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("default MBS power per RB is the even split of 43 dBm")
{
    ScenarioConfig cfg;
    CHECK(cfg.power_table().mbs_power_per_rb_dbm() == doctest::Approx(43.0 - 10.0 * std::log10(6.0)));
    CHECK(cfg.interference_spec().rb_bandwidth_hz() == doctest::Approx(180e3));
}

} // TEST_SUITE
