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

#ifndef HETNET_CHANNEL_HPP
#define HETNET_CHANNEL_HPP

#include "hetnet/model.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hetnet
{

struct PropagationParams
{
    double shadow_std_macro_d2d_db = 8.0;
    double shadow_std_small_db = 4.0;
    double wall_loss_db = 30.0;
    double d2d_pair_distance_m = 15.0;
    double macro_radius_m = 300.0;
    double small_radius_m = 30.0;
    double area_side_m = 300.0;
    // Distances are clamped to this before entering a path-loss formula so
    // that co-located nodes do not produce unbounded gains.
    double min_distance_m = 1.0;

    void validate() const;
};

struct Point
{
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point &) const = default;
};

double distance(Point a, Point b);

struct Topology
{
    Point mbs;
    std::vector<Point> mues;
    std::vector<Point> sbs;
    std::vector<Point> sues;
    std::vector<Point> d2d_tx;
    std::vector<Point> d2d_rx;

    bool operator==(const Topology &) const = default;
};

// Independent sub-streams derived from one 64-bit seed. A realization or
// time-slot index further splits a stream so that Monte Carlo points never
// share random numbers.
enum class Stream : std::uint64_t
{
    topology = 1,
    shadowing = 2,
    fading = 3,
    auction_init = 4,
};

struct RandomSeed
{
    std::uint64_t value = 1;

    std::uint64_t derive(Stream stream, std::uint64_t index = 0) const;
    std::mt19937_64 engine(Stream stream, std::uint64_t index = 0) const;
    RandomSeed child(std::uint64_t index) const;
};

// Deterministic path-loss components in dB. Throw std::invalid_argument for
// a nonpositive distance.
double path_loss_small(double dist_m);
double path_loss_macro(double dist_m, double wall_loss_db);
double path_loss_d2d(double dist_m, double wall_loss_db);

enum class LinkClass
{
    small, // psi_S
    macro, // psi_M
    d2d,   // psi_D
};

Topology generate_topology(const ScenarioDims &dims, const PropagationParams &params, RandomSeed seed);

// Large-scale (path loss + shadowing) part of every link, in dB of loss,
// and the per-RB small-scale fading draws are kept apart so that time slots
// can refresh fading over a fixed topology.
struct LinkShadowing
{
    std::vector<double> direct;   // [k]
    std::vector<double> cross;    // [from * K + to]
    std::vector<double> mbs;      // [k]
    std::vector<double> to_mue;   // [k * M + m]
};

LinkShadowing draw_shadowing(const ScenarioDims &dims, const PropagationParams &params, RandomSeed seed);

struct FadingOptions
{
    bool enabled = true;  // false forces the power gain to 1
    std::uint64_t slot = 0;
};

// Linear gains gain = fading * 10^(-(psi + xi)/10), psi by link class,
// xi ~ N(0, sigma_class) fixed per link, fading ~ Exp(1) per link and RB.
GainTensor realize_gains(const Topology &topo, const ScenarioDims &dims, const PropagationParams &params,
                         const LinkShadowing &shadowing, RandomSeed seed, FadingOptions fading = {});

// Convenience overload drawing shadowing from the same seed.
GainTensor realize_gains(const Topology &topo, const ScenarioDims &dims, const PropagationParams &params,
                         RandomSeed seed, FadingOptions fading = {});

// Link class used for each gain family; exposed for documentation and tests.
LinkClass direct_link_class(std::size_t k, const ScenarioDims &dims);
LinkClass cross_link_class(std::size_t from, std::size_t to, const ScenarioDims &dims);
LinkClass mue_link_class(std::size_t k, const ScenarioDims &dims);

double shadow_std(LinkClass c, const PropagationParams &params);
double class_path_loss(LinkClass c, double dist_m, const PropagationParams &params);

} // namespace hetnet

#endif
