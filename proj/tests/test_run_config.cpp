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

#include "dbbeam/errors.hpp"
#include "dbbeam/run_config.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <sstream>

using namespace dbbeam;

namespace
{
RunConfig parse(const std::string &text)
{
    std::istringstream in(text);
    return parse_run_config(in);
}

ConfigError config_error_of(const std::string &text)
{
    try
    {
        parse(text);
    }
    catch (const ConfigError &e)
    {
        return e;
    }
    FAIL("expected a ConfigError for:\n" << text);
    throw std::logic_error("unreachable");
}
} // namespace

TEST_CASE("Run config - Defaults", "[run_config]")
{
    const RunConfig c = parse("");
    CHECK(c.sample_count == 1000);
    REQUIRE(c.input_snr_db.size() == 1);
    CHECK(std::isinf(c.input_snr_db[0]));
    CHECK(c.label_snr_db == 30.0);
    CHECK(c.evaluation_snr_db == 30.0);
    CHECK(c.n_list == std::vector<std::size_t>{1, 3, 5});
    CHECK(c.samples_per_trajectory == 1);
    CHECK(c.scenario.codebook_size == 32);
    CHECK(c.scenario.mmwave_subcarriers == 512);
}

TEST_CASE("Run config - Parsing", "[run_config]")
{
    const RunConfig c = parse("# comment line\n"
                              "\n"
                              "seed = 99\n"
                              "  bs_mmwave_panel=4x8   # trailing comment\n"
                              "ue_mmwave_panel = 1X2\n"
                              "codebook_size = 16\n"
                              "input_snr_db = inf, 20, -7.5\n"
                              "n_list = 1,2, 16\n"
                              "ue_speed_kmh = 36\n"
                              "xpr_db = inf\n"
                              "output_prefix = runs/a\n"
                              "threads = 3\n");
    CHECK(c.scenario.seed == 99);
    CHECK(c.scenario.bs_mmwave_panel.rows == 4);
    CHECK(c.scenario.bs_mmwave_panel.cols == 8);
    CHECK(c.scenario.ue_mmwave_panel.rows == 1);
    CHECK(c.scenario.ue_mmwave_panel.cols == 2);
    CHECK(c.scenario.codebook_size == 16);
    REQUIRE(c.input_snr_db.size() == 3);
    CHECK(std::isinf(c.input_snr_db[0]));
    CHECK(c.input_snr_db[1] == 20.0);
    CHECK(c.input_snr_db[2] == -7.5);
    CHECK(c.n_list == std::vector<std::size_t>{1, 2, 16});
    CHECK(c.scenario.ue_speed_mps == 10.0);
    CHECK(std::isinf(c.scenario.xpr_db));
    CHECK(c.output_prefix == "runs/a");
    CHECK(c.threads == 3);
}

TEST_CASE("Run config - Errors carry key and line", "[run_config]")
{
    SECTION("Unknown key")
    {
        const auto e = config_error_of("seed = 1\n\ncodebok_size = 8\n");
        CHECK(e.key() == "codebok_size");
        CHECK(e.line() == 3);
    }
    SECTION("Duplicate key")
    {
        const auto e = config_error_of("seed = 1\nseed = 2\n");
        CHECK(e.key() == "seed");
        CHECK(e.line() == 2);
    }
    SECTION("Missing value")
    {
        const auto e = config_error_of("codebook_size =\n");
        CHECK(e.key() == "codebook_size");
        CHECK(e.line() == 1);
    }
    SECTION("Not a key-value pair")
    {
        CHECK(config_error_of("# x\ncodebook_size 8\n").line() == 2);
    }
    SECTION("Malformed numbers")
    {
        CHECK(config_error_of("codebook_size = 8.5\n").key() == "codebook_size");
        CHECK(config_error_of("codebook_size = -1\n").key() == "codebook_size");
        CHECK(config_error_of("sub6_carrier_hz = abc\n").key() == "sub6_carrier_hz");
        CHECK(config_error_of("sub6_carrier_hz = inf\n").key() == "sub6_carrier_hz");
        CHECK(config_error_of("input_snr_db = 10, -inf\n").key() == "input_snr_db");
        CHECK(config_error_of("input_snr_db = 10,\n").key() == "input_snr_db");
        CHECK(config_error_of("input_snr_db = nan\n").key() == "input_snr_db");
    }
    SECTION("Malformed panels")
    {
        CHECK(config_error_of("bs_mmwave_panel = 8\n").key() == "bs_mmwave_panel");
        CHECK(config_error_of("bs_mmwave_panel = 0x8\n").key() == "bs_mmwave_panel");
        CHECK(config_error_of("bs_mmwave_panel = 8x\n").key() == "bs_mmwave_panel");
    }
    SECTION("Validation points at the defining line")
    {
        const auto e = config_error_of("seed = 3\nbs_mmwave_panel = 3x4\nrf_chains = 5\n");
        CHECK(e.key() == "rf_chains");
        CHECK(e.line() == 3);

        const auto n = config_error_of("codebook_size = 4\nn_list = 1, 5\n");
        CHECK(n.key() == "n_list");
        CHECK(n.line() == 2);

        CHECK(config_error_of("n_list = 3, 1\n").key() == "n_list");
        CHECK(config_error_of("samples_per_trajectory = 256\n").key() == "samples_per_trajectory");
        CHECK(config_error_of("samples_per_trajectory = 0\n").key() == "samples_per_trajectory");
        CHECK(config_error_of("streams = 3\n").key() == "streams");
        CHECK(config_error_of("codebook_size = 0\n").key() == "codebook_size");
        CHECK(config_error_of("codebook_elevation_beams = 4\n").key() == "codebook_elevation_beams");
        CHECK(config_error_of("ue_speed_kmh = -1\n").line() == 1);
    }
    SECTION("Conflicting speed units")
    {
        const auto e = config_error_of("ue_speed_kmh = 30\nue_speed_mps = 8\n");
        CHECK(e.key() == "ue_speed_mps");
        CHECK(e.line() == 2);
    }
    SECTION("Missing file")
    {
        CHECK_THROWS_AS(load_run_config("/nonexistent/dbbeam.cfg"), IoError);
    }
}

TEST_CASE("Run config - Shipped configurations", "[run_config]")
{
    const std::string dir = DBBEAM_CONFIG_DIR;

    const RunConfig t = load_run_config(dir + "/reference.cfg");
    const ScenarioConfig defaults;
    CHECK(t.scenario.sub6_carrier_hz == defaults.sub6_carrier_hz);
    CHECK(t.scenario.mmwave_carrier_hz == defaults.mmwave_carrier_hz);
    CHECK(t.scenario.sub6_bandwidth_hz == defaults.sub6_bandwidth_hz);
    CHECK(t.scenario.mmwave_bandwidth_hz == defaults.mmwave_bandwidth_hz);
    CHECK(t.scenario.sub6_subcarriers == 32);
    CHECK(t.scenario.mmwave_subcarriers == 512);
    CHECK(t.scenario.bs_sub6_panel.size() == 16);
    CHECK(t.scenario.bs_mmwave_panel.size() == 64);
    CHECK(t.scenario.ue_mmwave_panel.size() == 4);
    CHECK(t.scenario.rf_chains == 2);
    CHECK(t.scenario.streams == 2);
    CHECK(t.scenario.codebook_size == 32);
    CHECK(t.scenario.sequence_length == 5);
    CHECK(std::abs(t.scenario.ue_speed_mps - 30.0 / 3.6) < 1e-12);
    CHECK(t.scenario.sample_interval_s == 0.1);
    CHECK(t.input_snr_db.size() == 5);
    CHECK(t.n_list == std::vector<std::size_t>{1, 3, 5});

    const RunConfig d = load_run_config(dir + "/desk.cfg");
    CHECK(d.scenario.codebook_size == 8);
    CHECK(d.scenario.mmwave_subcarriers == 16);
    CHECK(d.sample_count == 2400);
    CHECK(d.output_prefix == "desk");
}

TEST_CASE("Run config - Key list", "[run_config]")
{
    const auto &keys = run_config_keys();
    const std::set<std::string> unique(keys.begin(), keys.end());
    CHECK(unique.size() == keys.size());
    for (const char *k : {"seed", "codebook_size", "input_snr_db", "n_list", "threads", "output_prefix"})
        CHECK(unique.count(k) == 1);

    // Every listed key is accepted by the parser.
    for (const auto &k : keys)
    {
        INFO(k);
        std::istringstream in(k + " = 1\n");
        try
        {
            parse_run_config(in);
        }
        catch (const ConfigError &e)
        {
            CHECK(std::string(e.what()).find("unknown key") == std::string::npos);
        }
    }
}
