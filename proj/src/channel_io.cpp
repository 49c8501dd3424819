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

#include "hetnet/channel_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace hetnet
{

using nlohmann::json;

namespace
{

[[noreturn]] void fail(const std::string &path, const std::string &what)
{
    throw ConfigError(path + ": " + what);
}

json points(const std::vector<Point> &pts)
{
    json a = json::array();
    for (const auto &p : pts)
        a.push_back({p.x, p.y});
    return a;
}

Point point_from(const json &j, const std::string &path)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(path, "expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point> points_from(const json &j, const std::string &path, std::size_t expected)
{
    if (!j.is_array() || j.size() != expected)
        fail(path, "expected " + std::to_string(expected) + " points");
    std::vector<Point> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(point_from(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

const json &member(const json &j, const std::string &key, const std::string &path)
{
    auto it = j.find(key);
    if (it == j.end())
        fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

double leaf(const json &j, const std::string &path)
{
    if (!j.is_number())
        fail(path, "expected a number");
    return j.get<double>();
}

void expect_size(const json &j, std::size_t n, const std::string &path)
{
    if (!j.is_array() || j.size() != n)
        fail(path, "expected an array of length " + std::to_string(n));
}

std::string idx(const std::string &path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

} // namespace

Instance ChannelSnapshot::instance() const
{
    return make_instance(config.scenario, gains);
}

std::string snapshot_to_json(const ChannelSnapshot &snap, int indent)
{
    const auto dims = snap.config.scenario.dims();
    const std::size_t K = dims.transmitters(), M = dims.mues, N = dims.rbs;
    json direct = json::array(), mbs = json::array(), cross = json::array(), to_mue = json::array();
    for (std::size_t k = 0; k < K; ++k)
    {
        json d = json::array(), b = json::array(), c = json::array(), u = json::array();
        for (std::size_t n = 0; n < N; ++n)
        {
            d.push_back(snap.gains.direct(k, n));
            b.push_back(snap.gains.mbs_to_underlay(k, n));
        }
        for (std::size_t to = 0; to < K; ++to)
        {
            json row = json::array();
            for (std::size_t n = 0; n < N; ++n)
                row.push_back(snap.gains.cross(k, to, n));
            c.push_back(row);
        }
        for (std::size_t m = 0; m < M; ++m)
        {
            json row = json::array();
            for (std::size_t n = 0; n < N; ++n)
                row.push_back(snap.gains.to_mue(k, m, n));
            u.push_back(row);
        }
        direct.push_back(d);
        mbs.push_back(b);
        cross.push_back(c);
        to_mue.push_back(u);
    }

    json root;
    root["format"] = channel_format;
    root["version"] = channel_format_version;
    root["config"] = json::parse(config_to_json(snap.config, -1));
    if (snap.topology)
    {
        const auto &t = *snap.topology;
        root["topology"] = {{"mbs", {t.mbs.x, t.mbs.y}}, {"mues", points(t.mues)},     {"sbs", points(t.sbs)},
                            {"sues", points(t.sues)},      {"d2d_tx", points(t.d2d_tx)}, {"d2d_rx", points(t.d2d_rx)}};
    }
    else
    {
        root["topology"] = nullptr;
    }
    root["gains"] = {{"direct", direct}, {"cross", cross}, {"mbs_to_underlay", mbs}, {"to_mue", to_mue}};
    return root.dump(indent);
}

ChannelSnapshot snapshot_from_json(const std::string &text)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        fail("<root>", "expected an object");
    const json &format = member(root, "format", "");
    if (!format.is_string() || format.get<std::string>() != channel_format)
        fail("format", std::string("expected \"") + channel_format + "\"");
    const json &version = member(root, "version", "");
    if (!version.is_number_integer() || version.get<int>() != channel_format_version)
        fail("version", "unsupported version");

    ChannelSnapshot snap;
    snap.config = parse_config(member(root, "config", "").dump());
    const auto dims = snap.config.scenario.dims();
    const std::size_t K = dims.transmitters(), M = dims.mues, N = dims.rbs;

    const json &topo = member(root, "topology", "");
    if (!topo.is_null())
    {
        Topology t;
        t.mbs = point_from(member(topo, "mbs", "topology"), "topology.mbs");
        t.mues = points_from(member(topo, "mues", "topology"), "topology.mues", M);
        t.sbs = points_from(member(topo, "sbs", "topology"), "topology.sbs", dims.sbs);
        t.sues = points_from(member(topo, "sues", "topology"), "topology.sues", dims.sbs);
        t.d2d_tx = points_from(member(topo, "d2d_tx", "topology"), "topology.d2d_tx", dims.d2d);
        t.d2d_rx = points_from(member(topo, "d2d_rx", "topology"), "topology.d2d_rx", dims.d2d);
        snap.topology = t;
    }

    const json &g = member(root, "gains", "");
    const json &direct = member(g, "direct", "gains");
    const json &cross = member(g, "cross", "gains");
    const json &mbs = member(g, "mbs_to_underlay", "gains");
    const json &to_mue = member(g, "to_mue", "gains");
    expect_size(direct, K, "gains.direct");
    expect_size(cross, K, "gains.cross");
    expect_size(mbs, K, "gains.mbs_to_underlay");
    expect_size(to_mue, K, "gains.to_mue");
    snap.gains = GainTensor(K, M, N);
    for (std::size_t k = 0; k < K; ++k)
    {
        const std::string dk = idx("gains.direct", k), bk = idx("gains.mbs_to_underlay", k);
        expect_size(direct[k], N, dk);
        expect_size(mbs[k], N, bk);
        for (std::size_t n = 0; n < N; ++n)
        {
            snap.gains.direct(k, n) = leaf(direct[k][n], idx(dk, n));
            snap.gains.mbs_to_underlay(k, n) = leaf(mbs[k][n], idx(bk, n));
        }
        const std::string ck = idx("gains.cross", k);
        expect_size(cross[k], K, ck);
        for (std::size_t to = 0; to < K; ++to)
        {
            expect_size(cross[k][to], N, idx(ck, to));
            for (std::size_t n = 0; n < N; ++n)
                snap.gains.cross(k, to, n) = leaf(cross[k][to][n], idx(idx(ck, to), n));
        }
        const std::string uk = idx("gains.to_mue", k);
        expect_size(to_mue[k], M, uk);
        for (std::size_t m = 0; m < M; ++m)
        {
            expect_size(to_mue[k][m], N, idx(uk, m));
            for (std::size_t n = 0; n < N; ++n)
                snap.gains.to_mue(k, m, n) = leaf(to_mue[k][m][n], idx(idx(uk, m), n));
        }
    }
    try
    {
        snap.gains.validate(dims);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    return snap;
}

void save_snapshot(const ChannelSnapshot &snap, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    out << snapshot_to_json(snap, 1) << '\n';
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

ChannelSnapshot load_snapshot(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open channel file");
    std::stringstream buf;
    buf << in.rdbuf();
    return snapshot_from_json(buf.str());
}

} // namespace hetnet
