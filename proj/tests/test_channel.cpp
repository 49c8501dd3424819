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

#include "hetnet/channel.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace hetnet;

namespace
{

ScenarioDims fig3_dims()
{
    ScenarioDims d;
    d.sbs = 3;
    d.d2d = 2;
    return d;
}

bool inside(Point p, double side)
{
    return p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side;
}

double sample_std(const std::vector<double> &v)
{
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (v.size() - 1));
}

} // namespace

TEST_SUITE("channel")
{

TEST_CASE("path loss reference values")
{
    CHECK(std::abs(path_loss_small(30.0) - 68.00) < 0.01);
    CHECK(std::abs(path_loss_macro(300.0, 30.0) - 144.38) < 0.01);
    CHECK(std::abs(path_loss_d2d(15.0, 30.0) - 105.04) < 0.01);
    // independent evaluation of each formula
    CHECK(path_loss_small(30.0) == doctest::Approx(38.46 + 20.0 * std::log10(30.0)));
    CHECK(path_loss_macro(300.0, 30.0) == doctest::Approx(15.3 + 40.0 * std::log10(300.0) + 30.0));
    CHECK(path_loss_d2d(15.0, 30.0) == doctest::Approx(148.0 + 40.0 * std::log10(0.015) + 30.0));
}

TEST_CASE("path loss anchors and slopes")
{
    CHECK(path_loss_small(1.0) == doctest::Approx(38.46));
    CHECK(path_loss_macro(1.0, 0.0) == doctest::Approx(15.3));
    CHECK(path_loss_d2d(1000.0, 0.0) == doctest::Approx(148.0));
    for (double d : {2.0, 17.0, 123.0})
    {
        CHECK(path_loss_small(10 * d) - path_loss_small(d) == doctest::Approx(20.0));
        CHECK(path_loss_macro(10 * d, 30.0) - path_loss_macro(d, 30.0) == doctest::Approx(40.0));
        CHECK(path_loss_d2d(10 * d, 30.0) - path_loss_d2d(d, 30.0) == doctest::Approx(40.0));
    }
    CHECK_THROWS_AS(path_loss_small(0.0), std::invalid_argument);
    CHECK_THROWS_AS(path_loss_macro(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(path_loss_d2d(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("link classes")
{
    const auto d = fig3_dims(); // transmitters 0..2 SBS, 3..4 D2D
    CHECK(direct_link_class(0, d) == LinkClass::small);
    CHECK(direct_link_class(3, d) == LinkClass::d2d);
    CHECK(cross_link_class(1, 4, d) == LinkClass::small); // SBS -> DUE receiver
    CHECK(cross_link_class(3, 0, d) == LinkClass::macro); // D2D -> SUE
    CHECK(cross_link_class(3, 4, d) == LinkClass::d2d);   // D2D -> other DUE receiver
    CHECK(mue_link_class(0, d) == LinkClass::small);
    CHECK(mue_link_class(4, d) == LinkClass::macro);
}

TEST_CASE("topology geometry and determinism")
{
    const auto d = fig3_dims();
    PropagationParams p;
    for (std::uint64_t s = 1; s <= 50; ++s)
    {
        const auto t = generate_topology(d, p, RandomSeed{s});
        CHECK(t.mbs == Point{150.0, 150.0});
        REQUIRE(t.mues.size() == 6);
        REQUIRE(t.sues.size() == 3);
        for (std::size_t i = 0; i < 3; ++i)
        {
            CHECK(distance(t.sbs[i], t.sues[i]) <= p.small_radius_m);
            CHECK(inside(t.sues[i], p.area_side_m));
        }
        for (std::size_t i = 0; i < 2; ++i)
        {
            CHECK(distance(t.d2d_tx[i], t.d2d_rx[i]) == doctest::Approx(15.0).epsilon(1e-12));
            CHECK(inside(t.d2d_rx[i], p.area_side_m));
        }
        for (const auto &m : t.mues)
            CHECK(inside(m, p.area_side_m));
    }
    CHECK(generate_topology(d, p, RandomSeed{9}) == generate_topology(d, p, RandomSeed{9}));
    CHECK_FALSE(generate_topology(d, p, RandomSeed{9}) == generate_topology(d, p, RandomSeed{10}));
}

TEST_CASE("SUE offsets are uniform over the small-cell disk")
{
    ScenarioDims d;
    d.mues = 1;
    d.sbs = 100;
    d.d2d = 0;
    PropagationParams p;
    // keep the SBSs away from the area edges so resampling cannot bias the radius
    p.area_side_m = 1e6;
    p.macro_radius_m = 1e6;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::uint64_t s = 0; s < 100; ++s)
    {
        const auto t = generate_topology(d, p, RandomSeed{1000 + s});
        for (std::size_t i = 0; i < d.sbs; ++i)
        {
            sum += distance(t.sbs[i], t.sues[i]);
            ++count;
        }
    }
    REQUIRE(count == 10000);
    const double expected = 2.0 / 3.0 * p.small_radius_m; // E[R sqrt(U)]
    CHECK(std::abs(sum / count - expected) <= 0.05 * expected);
}

TEST_CASE("shadowing standard deviations")
{
    ScenarioDims d;
    d.mues = 50;
    d.sbs = 100;
    d.d2d = 100;
    PropagationParams p;
    const auto sh = draw_shadowing(d, p, RandomSeed{77});
    std::vector<double> small, macro;
    for (std::size_t k = 0; k < d.transmitters(); ++k)
        for (std::size_t m = 0; m < d.mues; ++m)
            (k < d.sbs ? small : macro).push_back(sh.to_mue[k * d.mues + m]);
    REQUIRE(small.size() >= 5000);
    REQUIRE(macro.size() >= 5000);
    CHECK(std::abs(sample_std(small) - 4.0) <= 0.05 * 4.0);
    CHECK(std::abs(sample_std(macro) - 8.0) <= 0.05 * 8.0);
}

TEST_CASE("fading has unit mean and is drawn per RB")
{
    ScenarioDims d;
    d.mues = 1;
    d.sbs = 1;
    d.d2d = 0;
    d.rbs = 10000;
    PropagationParams p;
    p.shadow_std_macro_d2d_db = p.shadow_std_small_db = 0.0;
    const auto topo = generate_topology(d, p, RandomSeed{3});
    const auto faded = realize_gains(topo, d, p, RandomSeed{3}, {true, 0});
    const auto flat = realize_gains(topo, d, p, RandomSeed{3}, {false, 0});
    double sum = 0.0;
    for (std::size_t n = 0; n < d.rbs; ++n)
        sum += faded.direct(0, n) / flat.direct(0, n);
    CHECK(std::abs(sum / d.rbs - 1.0) <= 0.03);
    CHECK(faded.direct(0, 0) != faded.direct(0, 1));
}

TEST_CASE("deterministic channel equals the bare path loss")
{
    const auto d = fig3_dims();
    PropagationParams p;
    p.shadow_std_macro_d2d_db = p.shadow_std_small_db = 0.0;
    const auto topo = generate_topology(d, p, RandomSeed{21});
    const auto g = realize_gains(topo, d, p, RandomSeed{21}, {false, 0});
    // SBS 0 direct link uses the small-cell formula
    const double d0 = std::max(distance(topo.sbs[0], topo.sues[0]), 1.0);
    CHECK(g.direct(0, 2) == doctest::Approx(std::pow(10.0, -(38.46 + 20.0 * std::log10(d0)) / 10.0)).epsilon(1e-12));
    // D2D pair 0 (transmitter 3) direct link uses the D2D formula with wall loss
    CHECK(g.direct(3, 0) ==
          doctest::Approx(std::pow(10.0, -(148.0 + 40.0 * std::log10(0.015) + 30.0) / 10.0)).epsilon(1e-12));
    // D2D transmitter 4 to MUE 1 uses the macro formula
    const double dm = std::max(distance(topo.d2d_tx[1], topo.mues[1]), 1.0);
    CHECK(g.to_mue(4, 1, 5) ==
          doctest::Approx(std::pow(10.0, -(15.3 + 40.0 * std::log10(dm) + 30.0) / 10.0)).epsilon(1e-12));
    // MBS to the receiver of SBS 1
    const double db = std::max(distance(topo.mbs, topo.sues[1]), 1.0);
    CHECK(g.mbs_to_underlay(1, 0) ==
          doctest::Approx(std::pow(10.0, -(15.3 + 40.0 * std::log10(db) + 30.0) / 10.0)).epsilon(1e-12));
}

TEST_CASE("gains are finite, positive and reproducible")
{
    const auto d = fig3_dims();
    PropagationParams p;
    for (std::uint64_t s = 1; s <= 20; ++s)
    {
        const auto topo = generate_topology(d, p, RandomSeed{s});
        const auto g = realize_gains(topo, d, p, RandomSeed{s});
        CHECK_NOTHROW(g.validate(d));
        for (std::size_t k = 0; k < d.transmitters(); ++k)
            for (std::size_t n = 0; n < d.rbs; ++n)
            {
                CHECK(g.direct(k, n) > 0.0);
                CHECK(std::isfinite(g.direct(k, n)));
                CHECK(g.to_mue(k, 0, n) > 0.0);
            }
        CHECK(g == realize_gains(topo, d, p, RandomSeed{s}));
    }
    const auto topo = generate_topology(d, p, RandomSeed{4});
    CHECK_FALSE(realize_gains(topo, d, p, RandomSeed{4}, {true, 0}) ==
                realize_gains(topo, d, p, RandomSeed{4}, {true, 1}));
}

TEST_CASE("co-located nodes are clamped to the minimum distance")
{
    ScenarioDims d;
    d.mues = 1;
    d.sbs = 1;
    d.d2d = 0;
    d.rbs = 1;
    PropagationParams p;
    p.shadow_std_macro_d2d_db = p.shadow_std_small_db = 0.0;
    Topology t = generate_topology(d, p, RandomSeed{1});
    t.mues[0] = t.sbs[0];
    const auto g = realize_gains(t, d, p, RandomSeed{1}, {false, 0});
    CHECK(g.to_mue(0, 0, 0) == doctest::Approx(std::pow(10.0, -38.46 / 10.0)));
}

TEST_CASE("seed streams are independent")
{
    const RandomSeed s{42};
    CHECK(s.derive(Stream::topology) != s.derive(Stream::shadowing));
    CHECK(s.derive(Stream::fading, 0) != s.derive(Stream::fading, 1));
    CHECK(s.child(0).value != s.child(1).value);
    CHECK(s.derive(Stream::fading, 3) == RandomSeed{42}.derive(Stream::fading, 3));
}

} // TEST_SUITE
