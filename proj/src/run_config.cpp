// SPDX-License-Identifier: Apache-2.0
//
// dbbeam - dual-band channel synthesis and hybrid beam selection toolkit
// Copyright (C) 2026 The dbbeam authors
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

#include "dbbeam/run_config.hpp"

#include "dbbeam/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

namespace dbbeam
{

namespace
{
std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(std::string_view(s).substr(start, pos - start)));
        if (pos == std::string::npos)
            return parts;
        start = pos + 1;
    }
}

struct Context
{
    std::string key;
    std::size_t line;

    [[noreturn]] void fail(const std::string &what) const
    {
        throw ConfigError("line " + std::to_string(line) + ": " + key + ": " + what, key, line);
    }
};

double to_double(const std::string &v, const Context &ctx)
{
    if (v == "inf" || v == "+inf")
        return std::numeric_limits<double>::infinity();
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || std::isnan(x))
        ctx.fail("expected a number, got '" + v + "'");
    return x;
}

double to_finite(const std::string &v, const Context &ctx)
{
    const double x = to_double(v, ctx);
    if (!std::isfinite(x))
        ctx.fail("expected a finite number, got '" + v + "'");
    return x;
}

std::uint64_t to_u64(const std::string &v, const Context &ctx)
{
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        ctx.fail("expected a non-negative integer, got '" + v + "'");
    return x;
}

std::size_t to_size(const std::string &v, const Context &ctx)
{
    const std::uint64_t x = to_u64(v, ctx);
    if (x > std::numeric_limits<std::size_t>::max())
        ctx.fail("value too large");
    return static_cast<std::size_t>(x);
}

Panel to_panel(const std::string &v, const Context &ctx)
{
    const auto x = v.find_first_of("xX");
    if (x == std::string::npos)
        ctx.fail("expected ROWSxCOLS, got '" + v + "'");
    Panel p{to_size(trim(v.substr(0, x)), ctx), to_size(trim(v.substr(x + 1)), ctx)};
    if (p.rows == 0 || p.cols == 0)
        ctx.fail("panel dimensions must be positive");
    return p;
}

using Setter = std::function<void(RunConfig &, const std::string &, const Context &)>;

const std::vector<std::pair<std::string, Setter>> &setters()
{
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"seed", [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.seed = to_u64(v, x); }},
        {"sub6_carrier_hz",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.sub6_carrier_hz = to_finite(v, x); }},
        {"mmwave_carrier_hz",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.mmwave_carrier_hz = to_finite(v, x); }},
        {"sub6_bandwidth_hz",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.sub6_bandwidth_hz = to_finite(v, x); }},
        {"mmwave_bandwidth_hz", [](RunConfig &c, const std::string &v, const Context &x)
         { c.scenario.mmwave_bandwidth_hz = to_finite(v, x); }},
        {"sub6_subcarriers",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.sub6_subcarriers = to_size(v, x); }},
        {"mmwave_subcarriers",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.mmwave_subcarriers = to_size(v, x); }},
        {"bs_sub6_panel",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.bs_sub6_panel = to_panel(v, x); }},
        {"bs_mmwave_panel",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.bs_mmwave_panel = to_panel(v, x); }},
        {"ue_mmwave_panel",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.ue_mmwave_panel = to_panel(v, x); }},
        {"rf_chains", [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.rf_chains = to_size(v, x); }},
        {"streams", [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.streams = to_size(v, x); }},
        {"codebook_size",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.codebook_size = to_size(v, x); }},
        {"codebook_elevation_beams", [](RunConfig &c, const std::string &v, const Context &x)
         { c.scenario.codebook_elevation_beams = to_size(v, x); }},
        {"codebook_azimuth_beams", [](RunConfig &c, const std::string &v, const Context &x)
         { c.scenario.codebook_azimuth_beams = to_size(v, x); }},
        {"sequence_length",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.sequence_length = to_size(v, x); }},
        {"ue_speed_kmh",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.ue_speed_mps = to_finite(v, x) / 3.6; }},
        {"ue_speed_mps",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.ue_speed_mps = to_finite(v, x); }},
        {"sample_interval_s",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.sample_interval_s = to_finite(v, x); }},
        {"cluster_count",
         [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.cluster_count = to_size(v, x); }},
        {"xpr_db", [](RunConfig &c, const std::string &v, const Context &x) { c.scenario.xpr_db = to_double(v, x); }},
        {"max_angle_drift_rad_per_m", [](RunConfig &c, const std::string &v, const Context &x)
         { c.scenario.max_angle_drift_rad_per_m = to_finite(v, x); }},
        {"sample_count", [](RunConfig &c, const std::string &v, const Context &x) { c.sample_count = to_size(v, x); }},
        {"input_snr_db",
         [](RunConfig &c, const std::string &v, const Context &x)
         {
             c.input_snr_db.clear();
             for (const auto &item : split(v, ','))
             {
                 const double snr = to_double(item, x);
                 if (snr == -std::numeric_limits<double>::infinity())
                     x.fail("-inf is not a valid SNR");
                 c.input_snr_db.push_back(snr);
             }
         }},
        {"label_snr_db", [](RunConfig &c, const std::string &v, const Context &x) { c.label_snr_db = to_finite(v, x); }},
        {"evaluation_snr_db",
         [](RunConfig &c, const std::string &v, const Context &x) { c.evaluation_snr_db = to_finite(v, x); }},
        {"output_prefix",
         [](RunConfig &c, const std::string &v, const Context &x)
         {
             if (v.empty())
                 x.fail("must not be empty");
             c.output_prefix = v;
         }},
        {"samples_per_trajectory",
         [](RunConfig &c, const std::string &v, const Context &x) { c.samples_per_trajectory = to_size(v, x); }},
        {"n_list",
         [](RunConfig &c, const std::string &v, const Context &x)
         {
             c.n_list.clear();
             for (const auto &item : split(v, ','))
                 c.n_list.push_back(to_size(item, x));
         }},
        {"threads", [](RunConfig &c, const std::string &v, const Context &x) { c.threads = to_size(v, x); }},
    };
    return table;
}
} // namespace

void RunConfig::validate() const
{
    scenario.validate();
    if (input_snr_db.empty())
        throw ConfigError("input_snr_db: list must not be empty", "input_snr_db");
    if (sample_count > std::numeric_limits<std::uint32_t>::max())
        throw ConfigError("sample_count: too large for the dataset format", "sample_count");
    if (samples_per_trajectory < 1 || samples_per_trajectory > 255)
        throw ConfigError("samples_per_trajectory: must lie in [1, 255]", "samples_per_trajectory");
    if (n_list.empty())
        throw ConfigError("n_list: list must not be empty", "n_list");
    for (std::size_t i = 0; i < n_list.size(); ++i)
    {
        if (n_list[i] < 1 || n_list[i] > scenario.codebook_size)
            throw ConfigError("n_list: entries must lie in [1, codebook_size]", "n_list");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw ConfigError("n_list: entries must be strictly ascending", "n_list");
    }
}

RunConfig parse_run_config(std::istream &in)
{
    RunConfig cfg;
    std::map<std::string, std::size_t> seen;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", {}, line_no);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const Context ctx{key, line_no};

        const auto &table = setters();
        const auto it = std::find_if(table.begin(), table.end(), [&](const auto &e) { return e.first == key; });
        if (it == table.end())
            ctx.fail("unknown key");
        if (!seen.emplace(key, line_no).second)
            ctx.fail("duplicate key (first set on line " + std::to_string(seen[key]) + ")");
        if (value.empty())
            ctx.fail("missing value");
        if ((key == "ue_speed_kmh" && seen.count("ue_speed_mps")) ||
            (key == "ue_speed_mps" && seen.count("ue_speed_kmh")))
            ctx.fail("the UE speed is already set in other units");
        it->second(cfg, value, ctx);
    }
    if (in.bad())
        throw IoError("failed to read configuration");

    try
    {
        cfg.validate();
    }
    catch (const ConfigError &e)
    {
        // Point at the line that set the key, if the file set it.
        auto it = seen.find(e.key());
        if (it == seen.end() && e.key() == "ue_speed_mps")
            it = seen.find("ue_speed_kmh");
        if (it != seen.end())
            throw ConfigError("line " + std::to_string(it->second) + ": " + e.what(), e.key(), it->second);
        throw;
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open configuration " + path.string());
    return parse_run_config(in);
}

const std::vector<std::string> &run_config_keys()
{
    static const std::vector<std::string> keys = []
    {
        std::vector<std::string> k;
        for (const auto &e : setters())
            k.push_back(e.first);
        return k;
    }();
    return keys;
}

} // namespace dbbeam
