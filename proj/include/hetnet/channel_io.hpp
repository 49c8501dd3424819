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

#ifndef HETNET_CHANNEL_IO_HPP
#define HETNET_CHANNEL_IO_HPP

#include "hetnet/config.hpp"
#include "hetnet/scenario.hpp"

#include <optional>
#include <string>

// Channel snapshots: a realized topology and gain tensor together with the
// configuration that produced them, so a run can be replayed exactly.
// Doubles are written in shortest round-trip form.
namespace hetnet
{

inline constexpr const char *channel_format = "hetnet-channel";
inline constexpr int channel_format_version = 1;

struct ChannelSnapshot
{
    Config config;
    std::optional<Topology> topology; // absent for hand-made channels
    GainTensor gains;

    Instance instance() const;
};

std::string snapshot_to_json(const ChannelSnapshot &snap, int indent = -1);

// Throws ConfigError with a field path on malformed input.
ChannelSnapshot snapshot_from_json(const std::string &text);

void save_snapshot(const ChannelSnapshot &snap, const std::string &path);
ChannelSnapshot load_snapshot(const std::string &path);

} // namespace hetnet

#endif
