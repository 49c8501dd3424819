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

#include "hetnet/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace hetnet
{

ScenarioDims ScenarioConfig::dims() const
{
    return ScenarioDims{mues, sbs, d2d, rbs, levels_dbm.size()};
}

PowerLevelTable ScenarioConfig::power_table() const
{
    const double per_rb = mbs_per_rb_dbm ? *mbs_per_rb_dbm : watt_to_dbm(dbm_to_watt(mbs_total_dbm) / rbs);
    return PowerLevelTable(levels_dbm, per_rb);
}

InterferenceSpec ScenarioConfig::interference_spec() const
{
    std::vector<double> per_rb = threshold_dbm;
    if (per_rb.size() == 1)
        per_rb.assign(rbs, threshold_dbm.front());
    const double w = rb_bandwidth_hz ? *rb_bandwidth_hz : bandwidth_hz / static_cast<double>(rbs);
    return InterferenceSpec(per_rb, noise_psd_dbm_hz, w);
}

void ScenarioConfig::validate() const
{
    dims().validate();
    if (threshold_dbm.size() != 1 && threshold_dbm.size() != rbs)
        throw std::invalid_argument("interference.threshold_dbm: give one value or one per RB");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("interference.bandwidth_hz: must be positive");
    if (rb_bandwidth_hz && (!(*rb_bandwidth_hz > 0.0) || !std::isfinite(*rb_bandwidth_hz)))
        throw std::invalid_argument("interference.rb_bandwidth_hz: must be positive");
    if (!std::isfinite(mbs_total_dbm))
        throw std::invalid_argument("power.mbs_total_dbm: must be finite");
    power_table();
    interference_spec();
    propagation.validate();
    auction.validate();
}

Instance make_instance(const ScenarioConfig &cfg, GainTensor gains)
{
    Instance inst{cfg.dims(), std::move(gains), cfg.power_table(), cfg.interference_spec()};
    inst.validate();
    return inst;
}

Realization realize(const ScenarioConfig &cfg, RandomSeed seed)
{
    const auto dims = cfg.dims();
    auto topo = generate_topology(dims, cfg.propagation, seed);
    auto gains = realize_gains(topo, dims, cfg.propagation, seed);
    return Realization{std::move(topo), make_instance(cfg, std::move(gains))};
}

} // namespace hetnet
