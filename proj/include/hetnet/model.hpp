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

#ifndef HETNET_MODEL_HPP
#define HETNET_MODEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

// Network objects of the two-tier underlay model and the evaluation of SINR,
// rate, aggregated interference at the reference users, the sum-rate
// objective and its constraints.
//
// Indexing is 0-based throughout. Underlay transmitters 0..S-1 are SBSs,
// S..S+D-1 are D2D transmitters. All arithmetic is in linear watts; dBm only
// appears in the configuration-facing types.
namespace hetnet
{

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

struct ScenarioDims
{
    std::size_t mues = 6;       // M
    std::size_t sbs = 3;        // S
    std::size_t d2d = 2;        // D
    std::size_t rbs = 6;        // N
    std::size_t levels = 2;     // L

    std::size_t transmitters() const { return sbs + d2d; }
    std::size_t resources() const { return rbs * levels; }

    // Throws std::invalid_argument naming the offending count.
    void validate() const;

    bool operator==(const ScenarioDims &) const = default;
};

class PowerLevelTable
{
  public:
    PowerLevelTable() = default;

    // levels must be strictly increasing (dBm); mbs power is per RB.
    PowerLevelTable(std::vector<double> levels_dbm, double mbs_power_per_rb_dbm);

    std::size_t size() const { return levels_dbm_.size(); }
    double level_dbm(std::size_t l) const { return levels_dbm_.at(l); }
    double level_watt(std::size_t l) const { return levels_w_.at(l); }
    double max_watt() const { return levels_w_.back(); }
    const std::vector<double> &levels_dbm() const { return levels_dbm_; }

    double mbs_power_per_rb_dbm() const { return mbs_dbm_; }
    double mbs_power_per_rb_watt() const { return mbs_w_; }

  private:
    std::vector<double> levels_dbm_;
    std::vector<double> levels_w_;
    double mbs_dbm_ = 0.0;
    double mbs_w_ = 0.0;
};

class InterferenceSpec
{
  public:
    InterferenceSpec() = default;
    InterferenceSpec(std::vector<double> thresholds_dbm, double noise_psd_dbm_hz, double rb_bandwidth_hz);

    std::size_t rbs() const { return thresholds_dbm_.size(); }
    double threshold_dbm(std::size_t n) const { return thresholds_dbm_.at(n); }
    double threshold_watt(std::size_t n) const { return thresholds_w_.at(n); }
    const std::vector<double> &thresholds_dbm() const { return thresholds_dbm_; }
    double noise_psd_dbm_hz() const { return noise_psd_dbm_hz_; }
    double rb_bandwidth_hz() const { return rb_bandwidth_hz_; }

  private:
    std::vector<double> thresholds_dbm_;
    std::vector<double> thresholds_w_;
    double noise_psd_dbm_hz_ = -174.0;
    double rb_bandwidth_hz_ = 180e3;
};

// Linear channel gains of every link the model touches, per RB.
class GainTensor
{
  public:
    GainTensor() = default;
    GainTensor(std::size_t transmitters, std::size_t mues, std::size_t rbs);

    std::size_t transmitters() const { return k_; }
    std::size_t mues() const { return m_; }
    std::size_t rbs() const { return n_; }

    // g_{k,u_k}: transmitter k to its own receiver.
    double &direct(std::size_t k, std::size_t n) { return direct_[k * n_ + n]; }
    double direct(std::size_t k, std::size_t n) const { return direct_[k * n_ + n]; }

    // g_{k',u_k}: transmitter `from` to the receiver of transmitter `to`.
    double &cross(std::size_t from, std::size_t to, std::size_t n) { return cross_[(from * k_ + to) * n_ + n]; }
    double cross(std::size_t from, std::size_t to, std::size_t n) const { return cross_[(from * k_ + to) * n_ + n]; }

    // g_{m,u_k}: MBS to the receiver of transmitter k.
    double &mbs_to_underlay(std::size_t k, std::size_t n) { return mbs_[k * n_ + n]; }
    double mbs_to_underlay(std::size_t k, std::size_t n) const { return mbs_[k * n_ + n]; }

    // g_{k,m}: transmitter k to MUE m.
    double &to_mue(std::size_t k, std::size_t m, std::size_t n) { return to_mue_[(k * m_ + m) * n_ + n]; }
    double to_mue(std::size_t k, std::size_t m, std::size_t n) const { return to_mue_[(k * m_ + m) * n_ + n]; }

    // Throws std::invalid_argument on a negative or non-finite entry or a
    // dimension mismatch.
    void validate(const ScenarioDims &dims) const;

    bool operator==(const GainTensor &) const = default;

  private:
    std::size_t k_ = 0, m_ = 0, n_ = 0;
    std::vector<double> direct_;
    std::vector<double> cross_;
    std::vector<double> mbs_;
    std::vector<double> to_mue_;
};

// A transmission alignment: one RB and one power level.
struct Resource
{
    std::size_t rb = 0;
    std::size_t level = 0;

    auto operator<=>(const Resource &) const = default;
};

// One-hot choice per transmitter; std::nullopt means unassigned.
class Allocation
{
  public:
    Allocation() = default;
    explicit Allocation(std::size_t transmitters) : slots_(transmitters) {}

    std::size_t size() const { return slots_.size(); }
    const std::optional<Resource> &operator[](std::size_t k) const { return slots_.at(k); }
    void assign(std::size_t k, Resource r) { slots_.at(k) = r; }
    void clear(std::size_t k) { slots_.at(k).reset(); }
    bool assigned(std::size_t k) const { return slots_.at(k).has_value(); }
    bool fully_assigned() const;
    bool on_rb(std::size_t k, std::size_t n) const { return slots_[k] && slots_[k]->rb == n; }

    // Lexicographic over transmitters; unassigned sorts first.
    auto operator<=>(const Allocation &) const = default;
    bool operator==(const Allocation &) const = default;

    std::string to_string() const;

  private:
    std::vector<std::optional<Resource>> slots_;
};

// Everything the evaluation functions need about one problem instance.
struct Instance
{
    ScenarioDims dims;
    GainTensor gains;
    PowerLevelTable power;
    InterferenceSpec interference;

    // Throws std::invalid_argument when the parts disagree on dimensions.
    void validate() const;
};

double noise_power(const InterferenceSpec &spec);

// SINR of transmitter k's receiver when k transmits on (n, l); every other
// assigned transmitter on RB n interferes, k's own entry in alloc is ignored.
double sinr(std::size_t k, Resource r, const Allocation &alloc, const Instance &inst);

double rate(double sinr, const InterferenceSpec &spec);

// MUE with the largest gain from transmitter k on RB n; lowest index on ties.
std::size_t reference_user(std::size_t k, std::size_t n, const GainTensor &gains);

// g_{k,m_k*} on RB n.
double reference_gain(std::size_t k, std::size_t n, const GainTensor &gains);

// Sum over transmitters on RB n of reference gain times transmit power.
double aggregated_interference(std::size_t n, const Allocation &alloc, const Instance &inst);

// Sum over transmitters of W log2(1 + SINR). Throws std::invalid_argument if
// any transmitter is unassigned.
double sum_rate(const Allocation &alloc, const Instance &inst);

struct FeasibilityReport
{
    std::vector<std::size_t> overloaded_rbs;         // I >= I_TH
    std::vector<std::size_t> unassigned_transmitters; // one-hot violated
    std::vector<double> interference;                 // I per RB, watts

    bool feasible() const { return overloaded_rbs.empty() && unassigned_transmitters.empty(); }
};

FeasibilityReport check_feasibility(const Allocation &alloc, const Instance &inst);

} // namespace hetnet

#endif
