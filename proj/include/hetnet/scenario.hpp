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

#ifndef HETNET_SCENARIO_HPP
#define HETNET_SCENARIO_HPP

#include "hetnet/auction.hpp"
#include "hetnet/channel.hpp"
#include "hetnet/model.hpp"

#include <optional>
#include <vector>

namespace hetnet
{

// Everything needed to realize and solve one scenario. Defaults reproduce
// the reference simulation setup: 6 RBs over 1.08 MHz, -70 dBm threshold on
// every RB, 43 dBm MBS power split evenly over the RBs.
struct ScenarioConfig
{
    std::size_t mues = 6;
    std::size_t sbs = 3;
    std::size_t d2d = 2;
    std::size_t rbs = 6;
    std::vector<double> levels_dbm{3.0, 5.0};

    double mbs_total_dbm = 43.0;
    std::optional<double> mbs_per_rb_dbm; // overrides the even split

    std::vector<double> threshold_dbm{-70.0}; // one value for all RBs, or one per RB
    double noise_psd_dbm_hz = -174.0;
    double bandwidth_hz = 1.08e6;
    std::optional<double> rb_bandwidth_hz; // overrides bandwidth / N

    PropagationParams propagation;
    auction::AuctionParams auction;

    ScenarioDims dims() const;
    PowerLevelTable power_table() const;
    InterferenceSpec interference_spec() const;

    // Throws std::invalid_argument with a field path.
    void validate() const;
};

Instance make_instance(const ScenarioConfig &cfg, GainTensor gains);

// Fresh topology and gains for one realization.
struct Realization
{
    Topology topology;
    Instance instance;
};

Realization realize(const ScenarioConfig &cfg, RandomSeed seed);

} // namespace hetnet

#endif
