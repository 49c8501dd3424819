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

#include "hetnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hetnet
{

double dbm_to_watt(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watt_to_dbm(double watt)
{
    return 10.0 * std::log10(watt) + 30.0;
}

void ScenarioDims::validate() const
{
    if (mues == 0)
        throw std::invalid_argument("dims.M: at least one MUE is required");
    if (sbs + d2d == 0)
        throw std::invalid_argument("dims: at least one underlay transmitter (S + D) is required");
    if (rbs == 0)
        throw std::invalid_argument("dims.N: at least one RB is required");
    if (levels == 0)
        throw std::invalid_argument("dims.L: at least one power level is required");
}

PowerLevelTable::PowerLevelTable(std::vector<double> levels_dbm, double mbs_power_per_rb_dbm)
    : levels_dbm_(std::move(levels_dbm)), mbs_dbm_(mbs_power_per_rb_dbm)
{
    if (levels_dbm_.empty())
        throw std::invalid_argument("power.levels_dbm: at least one level is required");
    for (std::size_t l = 0; l < levels_dbm_.size(); ++l)
    {
        if (!std::isfinite(levels_dbm_[l]))
            throw std::invalid_argument("power.levels_dbm: non-finite level");
        if (l > 0 && !(levels_dbm_[l] > levels_dbm_[l - 1]))
            throw std::invalid_argument("power.levels_dbm: levels must be strictly increasing");
        levels_w_.push_back(dbm_to_watt(levels_dbm_[l]));
    }
    if (!std::isfinite(mbs_dbm_))
        throw std::invalid_argument("power.mbs_per_rb_dbm: non-finite value");
    mbs_w_ = dbm_to_watt(mbs_dbm_);
}

InterferenceSpec::InterferenceSpec(std::vector<double> thresholds_dbm, double noise_psd_dbm_hz, double rb_bandwidth_hz)
    : thresholds_dbm_(std::move(thresholds_dbm)), noise_psd_dbm_hz_(noise_psd_dbm_hz), rb_bandwidth_hz_(rb_bandwidth_hz)
{
    if (thresholds_dbm_.empty())
        throw std::invalid_argument("interference.threshold_dbm: one threshold per RB is required");
    for (double t : thresholds_dbm_)
    {
        if (!std::isfinite(t))
            throw std::invalid_argument("interference.threshold_dbm: non-finite threshold");
        thresholds_w_.push_back(dbm_to_watt(t));
    }
    if (!std::isfinite(noise_psd_dbm_hz_))
        throw std::invalid_argument("interference.noise_psd_dbm_hz: non-finite value");
    if (!(rb_bandwidth_hz_ > 0.0) || !std::isfinite(rb_bandwidth_hz_))
        throw std::invalid_argument("interference.bandwidth_hz: must be positive");
}

GainTensor::GainTensor(std::size_t transmitters, std::size_t mues, std::size_t rbs)
    : k_(transmitters), m_(mues), n_(rbs), direct_(k_ * n_, 0.0), cross_(k_ * k_ * n_, 0.0), mbs_(k_ * n_, 0.0),
      to_mue_(k_ * m_ * n_, 0.0)
{
}

void GainTensor::validate(const ScenarioDims &dims) const
{
    if (k_ != dims.transmitters() || m_ != dims.mues || n_ != dims.rbs)
        throw std::invalid_argument("gains: dimensions do not match the scenario");
    auto check = [](const std::vector<double> &v, const char *name) {
        for (double g : v)
            if (!std::isfinite(g) || g < 0.0)
                throw std::invalid_argument(std::string("gains.") + name + ": entries must be finite and >= 0");
    };
    check(direct_, "direct");
    check(cross_, "cross");
    check(mbs_, "mbs_to_underlay");
    check(to_mue_, "underlay_to_mue");
}

bool Allocation::fully_assigned() const
{
    return std::all_of(slots_.begin(), slots_.end(), [](const auto &s) { return s.has_value(); });
}

std::string Allocation::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t k = 0; k < slots_.size(); ++k)
    {
        if (k)
            os << ' ';
        if (slots_[k])
            os << '(' << slots_[k]->rb << ',' << slots_[k]->level << ')';
        else
            os << '-';
    }
    os << ']';
    return os.str();
}

void Instance::validate() const
{
    dims.validate();
    gains.validate(dims);
    if (power.size() != dims.levels)
        throw std::invalid_argument("power.levels_dbm: length must equal L");
    if (interference.rbs() != dims.rbs)
        throw std::invalid_argument("interference.threshold_dbm: length must equal N");
}

double noise_power(const InterferenceSpec &spec)
{
    return dbm_to_watt(spec.noise_psd_dbm_hz()) * spec.rb_bandwidth_hz();
}

double sinr(std::size_t k, Resource r, const Allocation &alloc, const Instance &inst)
{
    const auto &g = inst.gains;
    if (k >= g.transmitters() || r.rb >= g.rbs() || r.level >= inst.power.size() || alloc.size() != g.transmitters())
        throw std::out_of_range("sinr: index out of range");

    double denom = g.mbs_to_underlay(k, r.rb) * inst.power.mbs_power_per_rb_watt();
    for (std::size_t other = 0; other < alloc.size(); ++other)
    {
        if (other == k || !alloc.on_rb(other, r.rb))
            continue;
        denom += g.cross(other, k, r.rb) * inst.power.level_watt(alloc[other]->level);
    }
    denom += noise_power(inst.interference);
    return g.direct(k, r.rb) * inst.power.level_watt(r.level) / denom;
}

double rate(double sinr, const InterferenceSpec &spec)
{
    return spec.rb_bandwidth_hz() * std::log2(1.0 + sinr);
}

std::size_t reference_user(std::size_t k, std::size_t n, const GainTensor &gains)
{
    std::size_t best = 0;
    for (std::size_t m = 1; m < gains.mues(); ++m)
        if (gains.to_mue(k, m, n) > gains.to_mue(k, best, n))
            best = m;
    return best;
}

double reference_gain(std::size_t k, std::size_t n, const GainTensor &gains)
{
    return gains.to_mue(k, reference_user(k, n, gains), n);
}

double aggregated_interference(std::size_t n, const Allocation &alloc, const Instance &inst)
{
    double total = 0.0;
    for (std::size_t k = 0; k < alloc.size(); ++k)
        if (alloc.on_rb(k, n))
            total += reference_gain(k, n, inst.gains) * inst.power.level_watt(alloc[k]->level);
    return total;
}

double sum_rate(const Allocation &alloc, const Instance &inst)
{
    double total = 0.0;
    for (std::size_t k = 0; k < alloc.size(); ++k)
    {
        if (!alloc[k])
            throw std::invalid_argument("sum_rate: transmitter " + std::to_string(k) + " is unassigned");
        total += rate(sinr(k, *alloc[k], alloc, inst), inst.interference);
    }
    return total;
}

FeasibilityReport check_feasibility(const Allocation &alloc, const Instance &inst)
{
    FeasibilityReport report;
    for (std::size_t k = 0; k < alloc.size(); ++k)
        if (!alloc[k])
            report.unassigned_transmitters.push_back(k);
    for (std::size_t n = 0; n < inst.dims.rbs; ++n)
    {
        const double i = aggregated_interference(n, alloc, inst);
        report.interference.push_back(i);
        // strict: I == I_TH is a violation
        if (!(i < inst.interference.threshold_watt(n)))
            report.overloaded_rbs.push_back(n);
    }
    return report;
}

} // namespace hetnet
