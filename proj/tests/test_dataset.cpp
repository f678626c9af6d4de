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

#include "dbbeam/dataset.hpp"
#include "dbbeam/errors.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <set>

using namespace dbbeam;

namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

ScenarioConfig desk_config()
{
    ScenarioConfig cfg;
    cfg.codebook_size = 8;
    cfg.mmwave_subcarriers = 16;
    cfg.seed = 7;
    return cfg;
}

// Smaller geometry for format tests.
ScenarioConfig small_config()
{
    ScenarioConfig cfg;
    cfg.bs_sub6_panel = {2, 2};
    cfg.bs_mmwave_panel = {2, 4};
    cfg.ue_mmwave_panel = {1, 2};
    cfg.sub6_subcarriers = 4;
    cfg.mmwave_subcarriers = 3;
    cfg.codebook_size = 4;
    cfg.sequence_length = 2;
    cfg.seed = 11;
    return cfg;
}

std::uint32_t le32(const std::vector<std::uint8_t> &b, std::size_t at)
{
    return std::uint32_t(b[at]) | std::uint32_t(b[at + 1]) << 8 | std::uint32_t(b[at + 2]) << 16 |
           std::uint32_t(b[at + 3]) << 24;
}

std::uint16_t le16(const std::vector<std::uint8_t> &b, std::size_t at)
{
    return std::uint16_t(b[at] | b[at + 1] << 8);
}

std::size_t sample_bytes(const ScenarioConfig &cfg)
{
    const std::size_t T = cfg.sequence_length;
    return T * cfg.sub6_subcarriers * 2 * cfg.bs_sub6_panel.size() * 8 + T * 3 * 4 +
           cfg.mmwave_subcarriers * 2 * cfg.ue_mmwave_panel.size() * 2 * cfg.bs_mmwave_panel.size() * 8 +
           2 * cfg.rf_chains * 2 + 8;
}

template <typename Fn>
FormatError format_error_of(Fn &&fn)
{
    try
    {
        fn();
    }
    catch (const FormatError &e)
    {
        return e;
    }
    FAIL("expected a FormatError");
    throw std::logic_error("unreachable");
}

std::filesystem::path temp_path(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("dbbeam_test_" + name);
}
} // namespace

TEST_CASE("Dataset - Empty dataset", "[dataset]")
{
    const Dataset d = generate_dataset(small_config(), 0, inf);
    CHECK(d.size() == 0);
    CHECK(d.header.sample_count == 0);
    const auto bytes = serialize_dataset(d);
    CHECK(bytes.size() == 48);
    const Dataset back = deserialize_dataset(bytes);
    CHECK(back.header == d.header);
    CHECK(back.size() == 0);
}

TEST_CASE("Dataset - Byte layout", "[dataset]")
{
    const ScenarioConfig cfg = small_config();
    const Dataset d = generate_dataset(cfg, 2, 12.5);
    const auto b = serialize_dataset(d);
    REQUIRE(b.size() == 48 + 2 * sample_bytes(cfg));

    CHECK(std::memcmp(b.data(), "DBBP", 4) == 0);
    CHECK(le16(b, 4) == 1);
    CHECK(le16(b, 6) == 0x7);
    CHECK(le32(b, 8) == 2);   // T
    CHECK(le32(b, 12) == 4);  // K
    CHECK(le32(b, 16) == 3);  // Kbar
    CHECK(le32(b, 20) == 4);  // N_tx sub-6
    CHECK(le32(b, 24) == 8);  // N_tx
    CHECK(le32(b, 28) == 2);  // N_rx
    CHECK(le32(b, 32) == 2);  // N_rf
    CHECK(le32(b, 36) == 4);  // |C|
    CHECK(le32(b, 40) == 2);  // samples
    CHECK(std::int32_t(le32(b, 44)) == 1250);

    const ChannelSample &s = d.samples[0];
    // Sub-6 block: t-major, then subcarrier, then port, (re, im) pairs.
    CHECK(le32(b, 48) == std::bit_cast<std::uint32_t>(s.sub6_seq[0](0, 0).real()));
    CHECK(le32(b, 52) == std::bit_cast<std::uint32_t>(s.sub6_seq[0](0, 0).imag()));
    CHECK(le32(b, 56) == std::bit_cast<std::uint32_t>(s.sub6_seq[0](1, 0).real()));
    const std::size_t port_stride = 8;
    const std::size_t k_stride = 8 * port_stride;
    CHECK(le32(b, 48 + k_stride) == std::bit_cast<std::uint32_t>(s.sub6_seq[0](0, 1).real()));
    const std::size_t t_stride = 4 * k_stride;
    CHECK(le32(b, 48 + t_stride) == std::bit_cast<std::uint32_t>(s.sub6_seq[1](0, 0).real()));

    // Locations follow.
    const std::size_t loc = 48 + 2 * t_stride;
    CHECK(le32(b, loc) == std::bit_cast<std::uint32_t>(s.locations[0][0]));
    CHECK(le32(b, loc + 8) == std::bit_cast<std::uint32_t>(s.locations[0][2]));
    CHECK(le32(b, loc + 12) == std::bit_cast<std::uint32_t>(s.locations[1][0]));

    // mmWave block: subcarrier-major, then rx, then tx.
    const std::size_t mm = loc + 2 * 12;
    CHECK(le32(b, mm) == std::bit_cast<std::uint32_t>(s.mmwave_target[0](0, 0).real()));
    CHECK(le32(b, mm + 8) == std::bit_cast<std::uint32_t>(s.mmwave_target[0](0, 1).real()));
    CHECK(le32(b, mm + 16 * 8) == std::bit_cast<std::uint32_t>(s.mmwave_target[0](1, 0).real()));
    CHECK(le32(b, mm + 4 * 16 * 8) == std::bit_cast<std::uint32_t>(s.mmwave_target[1](0, 0).real()));

    // Labels: plus45 chains, minus45 chains, then the objective as f64.
    const std::size_t lab = mm + 3 * 4 * 16 * 8;
    CHECK(le16(b, lab) == s.label->selection.plus45[0]);
    CHECK(le16(b, lab + 2) == s.label->selection.plus45[1]);
    CHECK(le16(b, lab + 4) == s.label->selection.minus45[0]);
    CHECK(le16(b, lab + 6) == s.label->selection.minus45[1]);
    const std::uint64_t mi = std::uint64_t(le32(b, lab + 8)) | std::uint64_t(le32(b, lab + 12)) << 32;
    CHECK(mi == std::bit_cast<std::uint64_t>(s.label->optimal_mi));
    CHECK(lab + 16 == 48 + sample_bytes(cfg));
}

TEST_CASE("Dataset - SNR encoding", "[dataset]")
{
    CHECK(snr_to_millibel(10.0) == 1000);
    CHECK(snr_to_millibel(-5.5) == -550);
    CHECK(snr_to_millibel(inf) == std::numeric_limits<std::int32_t>::min());
    DatasetHeader h;
    h.input_snr_millibel = -550;
    CHECK(h.input_snr_db() == -5.5);
    h.input_snr_millibel = snr_infinite_millibel;
    CHECK(h.input_snr_db() == inf);
}

TEST_CASE("Dataset - Round trip", "[dataset]")
{
    const ScenarioConfig cfg = small_config();
    const std::vector<double> snrs{inf, 0.0};
    const auto sets = generate_datasets(cfg, 5, snrs);
    for (const auto &d : sets)
    {
        const auto bytes = serialize_dataset(d);
        const Dataset back = deserialize_dataset(bytes);
        CHECK(back.header == d.header);
        REQUIRE(back.size() == d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
        {
            CHECK(back.samples[i].sub6_seq == d.samples[i].sub6_seq);
            CHECK(back.samples[i].mmwave_target == d.samples[i].mmwave_target);
            CHECK(back.samples[i].locations == d.samples[i].locations);
            CHECK(back.samples[i].label->selection == d.samples[i].label->selection);
            CHECK(std::bit_cast<std::uint64_t>(back.samples[i].label->optimal_mi) ==
                  std::bit_cast<std::uint64_t>(d.samples[i].label->optimal_mi));
        }
        CHECK(serialize_dataset(back) == bytes);

        const auto path = temp_path("roundtrip.dbbp");
        write_dataset(d, path);
        CHECK(read_file(path) == bytes);
        CHECK(identical(read_dataset(path), d));
        std::filesystem::remove(path);
    }
}

TEST_CASE("Dataset - Malformed files", "[dataset]")
{
    const ScenarioConfig cfg = small_config();
    const auto bytes = serialize_dataset(generate_dataset(cfg, 4, inf));

    SECTION("Corrupted magic")
    {
        auto b = bytes;
        b[1] = 'X';
        const auto e = format_error_of([&] { deserialize_dataset(b); });
        CHECK(e.offset() == 0);
    }

    SECTION("Unsupported version")
    {
        auto b = bytes;
        b[4] = 2;
        CHECK(format_error_of([&] { deserialize_dataset(b); }).offset() == 4);
    }

    SECTION("Truncated header")
    {
        const std::vector<std::uint8_t> b(bytes.begin(), bytes.begin() + 20);
        CHECK(format_error_of([&] { deserialize_dataset(b); }).offset() == 20);
    }

    SECTION("Truncated sample")
    {
        for (std::size_t cut : {std::size_t{0}, std::size_t{1}, std::size_t{2}, std::size_t{3}})
        {
            const std::size_t end = 48 + cut * sample_bytes(cfg) + 17;
            const std::vector<std::uint8_t> b(bytes.begin(), bytes.begin() + std::ptrdiff_t(end));
            const auto e = format_error_of([&] { deserialize_dataset(b); });
            REQUIRE(e.sample_index().has_value());
            CHECK(*e.sample_index() == cut);
            CHECK(e.offset() == 48 + cut * sample_bytes(cfg));
        }
    }

    SECTION("Missing last byte")
    {
        const std::vector<std::uint8_t> b(bytes.begin(), bytes.end() - 1);
        CHECK(format_error_of([&] { deserialize_dataset(b); }).sample_index() == 3u);
    }

    SECTION("Trailing bytes")
    {
        auto b = bytes;
        b.push_back(0);
        CHECK(format_error_of([&] { deserialize_dataset(b); }).offset() == bytes.size());
    }

    SECTION("Label out of range")
    {
        auto b = bytes;
        const std::size_t lab = 48 + sample_bytes(cfg) - 16;
        b[lab] = 4;
        const auto e = format_error_of([&] { deserialize_dataset(b); });
        CHECK(e.offset() == lab);
        CHECK(e.sample_index() == 0u);
    }

    SECTION("Missing file")
    {
        CHECK_THROWS_AS(read_dataset(temp_path("does_not_exist.dbbp")), IoError);
    }
}

TEST_CASE("Dataset - Deterministic generation", "[dataset]")
{
    const ScenarioConfig cfg = small_config();
    const std::vector<double> snrs{inf, 5.0};
    GenerationOptions one, many;
    many.threads = 3;
    const auto a = generate_datasets(cfg, 7, snrs, one);
    const auto b = generate_datasets(cfg, 7, snrs, many);
    for (std::size_t s = 0; s < snrs.size(); ++s)
        CHECK(serialize_dataset(a[s]) == serialize_dataset(b[s]));

    ScenarioConfig other = cfg;
    other.seed = 12;
    CHECK(serialize_dataset(generate_dataset(other, 7, inf)) != serialize_dataset(a[0]));

    // A dataset generated on its own matches the same SNR in a batch.
    CHECK(serialize_dataset(generate_dataset(cfg, 7, 5.0)) == serialize_dataset(a[1]));
}

TEST_CASE("Dataset - Noise affects only the sub-6 inputs", "[dataset]")
{
    const ScenarioConfig cfg = small_config();
    const std::vector<double> snrs{inf, 10.0};
    const auto sets = generate_datasets(cfg, 20, snrs);
    double noise = 0.0, signal = 0.0;
    for (std::size_t i = 0; i < 20; ++i)
    {
        const auto &clean = sets[0].samples[i];
        const auto &noisy = sets[1].samples[i];
        CHECK(clean.mmwave_target == noisy.mmwave_target);
        CHECK(clean.locations == noisy.locations);
        CHECK(clean.label->selection == noisy.label->selection);
        for (std::size_t t = 0; t < clean.sub6_seq.size(); ++t)
        {
            noise += (noisy.sub6_seq[t] - clean.sub6_seq[t]).cast<std::complex<double>>().squaredNorm();
            signal += clean.sub6_seq[t].cast<std::complex<double>>().squaredNorm();
        }
    }
    // 20 samples x 2 steps x 32 entries; the ratio is near 0.1.
    CHECK(noise / signal > 0.08);
    CHECK(noise / signal < 0.12);
}

TEST_CASE("Dataset - Sample structure", "[dataset]")
{
    const ScenarioConfig cfg = small_config();
    const Dataset d = generate_dataset(cfg, 10, inf);
    for (const auto &s : d.samples)
    {
        REQUIRE(s.sub6_seq.size() == cfg.sequence_length);
        REQUIRE(s.locations.size() == cfg.sequence_length);
        REQUIRE(s.mmwave_target.size() == cfg.mmwave_subcarriers);
        CHECK(s.sub6_seq[0].rows() == 8);
        CHECK(s.sub6_seq[0].cols() == 4);
        CHECK(s.mmwave_target[0].rows() == 4);
        CHECK(s.mmwave_target[0].cols() == 16);
        for (std::size_t t = 1; t < s.locations.size(); ++t)
        {
            const double dx = double(s.locations[t][0]) - double(s.locations[t - 1][0]);
            const double dy = double(s.locations[t][1]) - double(s.locations[t - 1][1]);
            const double dz = double(s.locations[t][2]) - double(s.locations[t - 1][2]);
            // Single-precision coordinates of a route within 250 m.
            CHECK(std::abs(std::sqrt(dx * dx + dy * dy + dz * dz) - cfg.step_length_m()) < 1e-4);
        }

        REQUIRE(s.label.has_value());
        const LabelVector v = one_hot(s.label->selection, cfg.codebook_size);
        REQUIRE(v.rows.size() == 4);
        std::size_t ones = 0;
        for (std::size_t r = 0; r < 4; ++r)
        {
            CHECK(s.label->selection.output(r) < cfg.codebook_size);
            for (std::size_t i = 0; i < cfg.codebook_size; ++i)
            {
                CHECK(v.rows[r][i] == (i == s.label->selection.output(r) ? 1 : 0));
                ones += v.rows[r][i];
            }
        }
        CHECK(ones == 4);
    }

    GenerationOptions unlabeled;
    unlabeled.with_labels = false;
    const Dataset u = generate_dataset(cfg, 3, inf, unlabeled);
    CHECK_FALSE(u.header.has_labels());
    for (const auto &s : u.samples)
        CHECK_FALSE(s.label.has_value());
    CHECK(serialize_dataset(u).size() == 48 + 3 * (sample_bytes(cfg) - 16));
    CHECK(identical(deserialize_dataset(serialize_dataset(u)), u));
}

TEST_CASE("Dataset - Trajectory-linked samples", "[dataset]")
{
    const ScenarioConfig cfg = small_config();
    GenerationOptions opts;
    opts.samples_per_trajectory = 3;
    const Dataset d = generate_dataset(cfg, 7, inf, opts);
    CHECK(d.header.samples_per_trajectory() == 3);
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
    {
        const bool same_route = (i + 1) % 3 != 0;
        const auto &a = d.samples[i];
        const auto &b = d.samples[i + 1];
        if (same_route)
        {
            CHECK(b.locations[0] == a.locations[1]);
            CHECK(b.sub6_seq[0] == a.sub6_seq[1]);
        }
        else
        {
            CHECK_FALSE(b.locations[0] == a.locations[1]);
        }
    }
    CHECK(deserialize_dataset(serialize_dataset(d)).header.samples_per_trajectory() == 3);
}

TEST_CASE("Dataset - Labels match naive enumeration", "[dataset]")
{
    const ScenarioConfig cfg = desk_config();
    const Codebook cb = build_codebook(cfg);
    const Dataset d = generate_dataset(cfg, 100, inf);
    std::set<std::vector<std::size_t>> distinct;
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        const auto &s = d.samples[i];
        const auto ref = oracle::naive_exhaustive_cached(to_channel(s.mmwave_target), cb, 64, 2, 1000.0);
        INFO("sample " << i);
        CHECK(ref.evaluated == 4096);
        CHECK(s.label->selection.plus45 == ref.plus);
        CHECK(s.label->selection.minus45 == ref.minus);
        CHECK(std::abs(s.label->optimal_mi - ref.mi) < 1e-9);
        std::vector<std::size_t> key = ref.plus;
        key.insert(key.end(), ref.minus.begin(), ref.minus.end());
        distinct.insert(key);
    }
    // Labels vary across routes.
    CHECK(distinct.size() > 10);
}

TEST_CASE("Dataset - Split", "[dataset]")
{
    const ScenarioConfig cfg = small_config();
    GenerationOptions opts;
    opts.with_labels = false;
    opts.samples_per_trajectory = 2;
    const Dataset d = generate_dataset(cfg, 120, inf, opts);

    const auto [train, test] = split_dataset(d, 95.0 / 114.0, 3);
    CHECK(train.size() == 100);
    CHECK(test.size() == 20);
    CHECK(train.header.sample_count == 100);
    CHECK(test.header.sample_count == 20);
    CHECK(train.header.samples_per_trajectory() == 1);

    // Disjoint and exhaustive: every sample appears exactly once.
    auto key = [](const ChannelSample &s) { return std::make_pair(s.locations[0][0], s.locations[0][1]); };
    std::multiset<std::pair<float, float>> all, parts;
    for (const auto &s : d.samples)
        all.insert(key(s));
    for (const auto *part : {&train, &test})
        for (const auto &s : part->samples)
            parts.insert(key(s));
    CHECK(all == parts);

    const auto again = split_dataset(d, 95.0 / 114.0, 3);
    CHECK(identical(again.first, train));
    CHECK(identical(again.second, test));
    CHECK_FALSE(identical(split_dataset(d, 95.0 / 114.0, 4).first, train));

    Dataset one = d;
    one.samples.resize(1);
    one.header.sample_count = 1;
    const auto [a, b] = split_dataset(one, 0.5, 1);
    CHECK(a.size() == 1);
    CHECK(b.size() == 0);

    CHECK_THROWS_AS(split_dataset(d, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_dataset(d, 1.0, 1), std::invalid_argument);
}

TEST_CASE("Scores file - Round trip and validation", "[dataset]")
{
    ScoresFile f;
    f.rf_chains = 2;
    f.codebook_size = 3;
    Rng rng(8);
    for (int i = 0; i < 5; ++i)
    {
        PredictionScores s(4, 3);
        for (float &v : s.values())
            v = float(rng.uniform());
        f.samples.push_back(s);
    }
    f.samples[2].at(1, 2) = 1.0f;
    f.samples[3].at(0, 0) = 0.0f;

    const auto bytes = serialize_scores(f);
    REQUIRE(bytes.size() == 18 + 5 * 12 * 4);
    CHECK(std::memcmp(bytes.data(), "DBPR", 4) == 0);
    CHECK(le16(bytes, 4) == 1);
    CHECK(le32(bytes, 6) == 5);
    CHECK(le32(bytes, 10) == 2);
    CHECK(le32(bytes, 14) == 3);
    // Sample-major, output-major, codeword-minor.
    CHECK(le32(bytes, 18 + 12 * 4 * 1 + 4 * 4) == std::bit_cast<std::uint32_t>(f.samples[1].at(1, 1)));

    const ScoresFile back = deserialize_scores(bytes);
    CHECK(back.rf_chains == 2);
    CHECK(back.codebook_size == 3);
    CHECK(back.samples == f.samples);
    CHECK(serialize_scores(back) == bytes);

    const auto path = temp_path("roundtrip.dbpr");
    write_scores(f, path);
    CHECK(read_file(path) == bytes);
    CHECK(read_scores(path).samples == f.samples);
    std::filesystem::remove(path);

    auto bad = bytes;
    bad[0] = 'X';
    CHECK(format_error_of([&] { deserialize_scores(bad); }).offset() == 0);

    const std::vector<std::uint8_t> cut(bytes.begin(), bytes.end() - 3);
    CHECK(format_error_of([&] { deserialize_scores(cut); }).sample_index() == 4u);

    auto out_of_range = bytes;
    const float big = 1.5f;
    std::memcpy(out_of_range.data() + 18 + 8, &big, 4);
    CHECK(format_error_of([&] { deserialize_scores(out_of_range); }).sample_index() == 0u);

    auto trailing = bytes;
    trailing.push_back(1);
    CHECK_THROWS_AS(deserialize_scores(trailing), FormatError);
}
