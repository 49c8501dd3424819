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

#ifndef HETNET_TESTS_FIXTURES_HPP
#define HETNET_TESTS_FIXTURES_HPP

#include "hetnet/model.hpp"

#include <cmath>
#include <vector>

namespace fixtures
{

// Instance with every gain set to `fill`, thresholds `threshold_dbm` on every
// RB, 1 Hz RBs and a 0 dBm/Hz noise density (noise power 1 mW) unless
// overridden. Tests then poke the gains they care about.
struct Builder
{
    hetnet::ScenarioDims dims;
    std::vector<double> levels_dbm{0.0};
    double mbs_dbm = 0.0;
    double threshold_dbm = 0.0;
    double noise_psd_dbm_hz = 0.0;
    double rb_bandwidth_hz = 1.0;
    double fill = 0.0;

    hetnet::Instance build() const
    {
        hetnet::ScenarioDims d = dims;
        d.levels = levels_dbm.size();
        hetnet::Instance inst{d, hetnet::GainTensor(d.transmitters(), d.mues, d.rbs),
                              hetnet::PowerLevelTable(levels_dbm, mbs_dbm),
                              hetnet::InterferenceSpec(std::vector<double>(d.rbs, threshold_dbm), noise_psd_dbm_hz,
                                                       rb_bandwidth_hz)};
        const std::size_t K = d.transmitters();
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t n = 0; n < d.rbs; ++n)
            {
                inst.gains.direct(k, n) = fill;
                inst.gains.mbs_to_underlay(k, n) = fill;
                for (std::size_t j = 0; j < K; ++j)
                    inst.gains.cross(k, j, n) = fill;
                for (std::size_t m = 0; m < d.mues; ++m)
                    inst.gains.to_mue(k, m, n) = fill;
            }
        return inst;
    }
};

inline hetnet::ScenarioDims dims(std::size_t mues, std::size_t sbs, std::size_t d2d, std::size_t rbs)
{
    hetnet::ScenarioDims d;
    d.mues = mues;
    d.sbs = sbs;
    d.d2d = d2d;
    d.rbs = rbs;
    return d;
}

// Shannon rate computed independently of the library.
inline double shannon(double bandwidth_hz, double sinr)
{
    return bandwidth_hz * std::log2(1.0 + sinr);
}

} // namespace fixtures

#endif
