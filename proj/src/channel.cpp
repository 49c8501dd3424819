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

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hetnet
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_positive(double v, const char *field)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("propagation.") + field + ": must be positive");
}

Point transmitter_position(const Topology &topo, std::size_t k, const ScenarioDims &dims)
{
    return k < dims.sbs ? topo.sbs[k] : topo.d2d_tx[k - dims.sbs];
}

Point receiver_position(const Topology &topo, std::size_t k, const ScenarioDims &dims)
{
    return k < dims.sbs ? topo.sues[k] : topo.d2d_rx[k - dims.sbs];
}

bool inside(Point p, double side)
{
    return p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side;
}

} // namespace

void PropagationParams::validate() const
{
    if (!(shadow_std_macro_d2d_db >= 0.0) || !(shadow_std_small_db >= 0.0))
        throw std::invalid_argument("propagation.shadow_std: must be >= 0");
    if (!(wall_loss_db >= 0.0))
        throw std::invalid_argument("propagation.wall_loss_db: must be >= 0");
    require_positive(d2d_pair_distance_m, "d2d_pair_distance_m");
    require_positive(macro_radius_m, "macro_radius_m");
    require_positive(small_radius_m, "small_radius_m");
    require_positive(area_side_m, "area_side_m");
    require_positive(min_distance_m, "min_distance_m");
    if (!(small_radius_m < macro_radius_m))
        throw std::invalid_argument("propagation.small_radius_m: must be smaller than macro_radius_m");
    if (d2d_pair_distance_m >= area_side_m)
        throw std::invalid_argument("propagation.d2d_pair_distance_m: must be smaller than area_side_m");
}

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::uint64_t RandomSeed::derive(Stream stream, std::uint64_t index) const
{
    return splitmix64(splitmix64(value ^ splitmix64(static_cast<std::uint64_t>(stream))) + index);
}

std::mt19937_64 RandomSeed::engine(Stream stream, std::uint64_t index) const
{
    return std::mt19937_64(derive(stream, index));
}

RandomSeed RandomSeed::child(std::uint64_t index) const
{
    return RandomSeed{splitmix64(value + splitmix64(index + 0x5851f42d4c957f2dULL))};
}

double path_loss_small(double dist_m)
{
    if (!(dist_m > 0.0))
        throw std::invalid_argument("path_loss_small: distance must be positive");
    return 38.46 + 20.0 * std::log10(dist_m);
}

double path_loss_macro(double dist_m, double wall_loss_db)
{
    if (!(dist_m > 0.0))
        throw std::invalid_argument("path_loss_macro: distance must be positive");
    return 15.3 + 40.0 * std::log10(dist_m) + wall_loss_db;
}

double path_loss_d2d(double dist_m, double wall_loss_db)
{
    if (!(dist_m > 0.0))
        throw std::invalid_argument("path_loss_d2d: distance must be positive");
    return 148.0 + 40.0 * std::log10(0.001 * dist_m) + wall_loss_db;
}

double class_path_loss(LinkClass c, double dist_m, const PropagationParams &params)
{
    switch (c)
    {
    case LinkClass::small:
        return path_loss_small(dist_m);
    case LinkClass::macro:
        return path_loss_macro(dist_m, params.wall_loss_db);
    case LinkClass::d2d:
        return path_loss_d2d(dist_m, params.wall_loss_db);
    }
    throw std::logic_error("unknown link class");
}

double shadow_std(LinkClass c, const PropagationParams &params)
{
    return c == LinkClass::small ? params.shadow_std_small_db : params.shadow_std_macro_d2d_db;
}

LinkClass direct_link_class(std::size_t k, const ScenarioDims &dims)
{
    return k < dims.sbs ? LinkClass::small : LinkClass::d2d;
}

LinkClass cross_link_class(std::size_t from, std::size_t to, const ScenarioDims &dims)
{
    if (from < dims.sbs)
        return LinkClass::small;
    return to < dims.sbs ? LinkClass::macro : LinkClass::d2d;
}

LinkClass mue_link_class(std::size_t k, const ScenarioDims &dims)
{
    return k < dims.sbs ? LinkClass::small : LinkClass::macro;
}

Topology generate_topology(const ScenarioDims &dims, const PropagationParams &params, RandomSeed seed)
{
    dims.validate();
    params.validate();
    auto rng = seed.engine(Stream::topology);
    const double side = params.area_side_m;
    std::uniform_real_distribution<double> coord(0.0, side);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    Topology topo;
    topo.mbs = {side / 2.0, side / 2.0};
    for (std::size_t m = 0; m < dims.mues; ++m)
        topo.mues.push_back({coord(rng), coord(rng)});

    for (std::size_t s = 0; s < dims.sbs; ++s)
    {
        const Point bs{coord(rng), coord(rng)};
        Point ue;
        do
        {
            // uniform in the disk: radius ~ R sqrt(U)
            const double r = params.small_radius_m * std::sqrt(unit(rng));
            const double a = angle(rng);
            ue = {bs.x + r * std::cos(a), bs.y + r * std::sin(a)};
        } while (!inside(ue, side));
        topo.sbs.push_back(bs);
        topo.sues.push_back(ue);
    }

    for (std::size_t d = 0; d < dims.d2d; ++d)
    {
        const Point tx{coord(rng), coord(rng)};
        Point rx;
        do
        {
            const double a = angle(rng);
            rx = {tx.x + params.d2d_pair_distance_m * std::cos(a), tx.y + params.d2d_pair_distance_m * std::sin(a)};
        } while (!inside(rx, side));
        topo.d2d_tx.push_back(tx);
        topo.d2d_rx.push_back(rx);
    }
    return topo;
}

LinkShadowing draw_shadowing(const ScenarioDims &dims, const PropagationParams &params, RandomSeed seed)
{
    const std::size_t K = dims.transmitters();
    auto rng = seed.engine(Stream::shadowing);
    std::normal_distribution<double> unit(0.0, 1.0);
    LinkShadowing sh;
    auto draw = [&](LinkClass c) { return shadow_std(c, params) * unit(rng); };
    for (std::size_t k = 0; k < K; ++k)
        sh.direct.push_back(draw(direct_link_class(k, dims)));
    for (std::size_t from = 0; from < K; ++from)
        for (std::size_t to = 0; to < K; ++to)
            sh.cross.push_back(draw(cross_link_class(from, to, dims)));
    for (std::size_t k = 0; k < K; ++k)
        sh.mbs.push_back(draw(LinkClass::macro));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t m = 0; m < dims.mues; ++m)
            sh.to_mue.push_back(draw(mue_link_class(k, dims)));
    return sh;
}

GainTensor realize_gains(const Topology &topo, const ScenarioDims &dims, const PropagationParams &params,
                         const LinkShadowing &shadowing, RandomSeed seed, FadingOptions fading)
{
    dims.validate();
    params.validate();
    const std::size_t K = dims.transmitters();
    const std::size_t M = dims.mues;
    const std::size_t N = dims.rbs;
    if (topo.mues.size() != M || topo.sbs.size() != dims.sbs || topo.sues.size() != dims.sbs ||
        topo.d2d_tx.size() != dims.d2d || topo.d2d_rx.size() != dims.d2d)
        throw std::invalid_argument("realize_gains: topology does not match the scenario dimensions");

    auto rng = seed.engine(Stream::fading, fading.slot);
    std::exponential_distribution<double> power_gain(1.0);
    auto link = [&](LinkClass c, Point a, Point b, double xi, auto &&store) {
        const double d = std::max(distance(a, b), params.min_distance_m);
        const double loss_db = class_path_loss(c, d, params) + xi;
        const double mean_gain = std::pow(10.0, -loss_db / 10.0);
        for (std::size_t n = 0; n < N; ++n)
        {
            const double f = fading.enabled ? power_gain(rng) : 1.0;
            store(n, f * mean_gain);
        }
    };

    GainTensor g(K, M, N);
    for (std::size_t k = 0; k < K; ++k)
        link(direct_link_class(k, dims), transmitter_position(topo, k, dims), receiver_position(topo, k, dims),
             shadowing.direct[k], [&](std::size_t n, double v) { g.direct(k, n) = v; });
    for (std::size_t from = 0; from < K; ++from)
        for (std::size_t to = 0; to < K; ++to)
        {
            if (from == to)
                continue;
            link(cross_link_class(from, to, dims), transmitter_position(topo, from, dims),
                 receiver_position(topo, to, dims), shadowing.cross[from * K + to],
                 [&](std::size_t n, double v) { g.cross(from, to, n) = v; });
        }
    for (std::size_t k = 0; k < K; ++k)
        link(LinkClass::macro, topo.mbs, receiver_position(topo, k, dims), shadowing.mbs[k],
             [&](std::size_t n, double v) { g.mbs_to_underlay(k, n) = v; });
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t m = 0; m < M; ++m)
            link(mue_link_class(k, dims), transmitter_position(topo, k, dims), topo.mues[m],
                 shadowing.to_mue[k * M + m], [&](std::size_t n, double v) { g.to_mue(k, m, n) = v; });
    return g;
}

GainTensor realize_gains(const Topology &topo, const ScenarioDims &dims, const PropagationParams &params,
                         RandomSeed seed, FadingOptions fading)
{
    return realize_gains(topo, dims, params, draw_shadowing(dims, params, seed), seed, fading);
}

} // namespace hetnet
