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

#include "binary_io.hpp"
#include "dbbeam/codebook.hpp"
#include "dbbeam/errors.hpp"
#include "dbbeam/parallel.hpp"
#include "dbbeam/random.hpp"
#include "dbbeam/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dbbeam
{

namespace
{
constexpr char dataset_magic[4] = {'D', 'B', 'B', 'P'};
constexpr std::size_t header_bytes = 48;
constexpr std::uint64_t noise_stream = 0x6e6f697365; // "noise"
constexpr std::uint64_t route_stream = 0x726f757465; // "route"
constexpr std::uint64_t split_stream = 0x73706c6974; // "split"

std::uint32_t narrow(std::size_t v, const char *what)
{
    if (v > 0xFFFFFFFFu)
        throw std::invalid_argument(std::string(what) + " does not fit the file format");
    return static_cast<std::uint32_t>(v);
}

struct SampleLayout
{
    std::size_t sub6_entries = 0;
    std::size_t location_values = 0;
    std::size_t mmwave_entries = 0;
    std::size_t label_indices = 0;

    explicit SampleLayout(const DatasetHeader &h)
    {
        sub6_entries = std::size_t{h.sequence_length} * h.sub6_subcarriers * 2 * h.bs_sub6_elements;
        location_values = h.has_locations() ? std::size_t{h.sequence_length} * 3 : 0;
        mmwave_entries =
            h.has_mmwave() ? std::size_t{h.mmwave_subcarriers} * 2 * h.ue_mmwave_elements * 2 * h.bs_mmwave_elements
                           : 0;
        label_indices = h.has_labels() ? 2 * std::size_t{h.rf_chains} : 0;
    }

    std::uint64_t bytes() const
    {
        return 8ull * sub6_entries + 4ull * location_values + 8ull * mmwave_entries + 2ull * label_indices +
               (label_indices ? 8ull : 0ull);
    }
};

Eigen::MatrixXcf to_float(const Eigen::MatrixXcd &m)
{
    return m.cast<std::complex<float>>();
}

void check_sample(const DatasetHeader &h, const ChannelSample &s, std::size_t index)
{
    auto fail = [&](const std::string &what)
    { throw std::invalid_argument("sample " + std::to_string(index) + ": " + what + " does not match the header"); };

    const auto ports = static_cast<Eigen::Index>(2 * h.bs_sub6_elements);
    if (s.sub6_seq.size() != h.sequence_length)
        fail("sub-6 sequence length");
    for (const auto &m : s.sub6_seq)
        if (m.rows() != ports || m.cols() != static_cast<Eigen::Index>(h.sub6_subcarriers))
            fail("sub-6 snapshot shape");
    if (h.has_locations() && s.locations.size() != h.sequence_length)
        fail("location count");
    if (h.has_mmwave())
    {
        if (s.mmwave_target.size() != h.mmwave_subcarriers)
            fail("mmWave subcarrier count");
        for (const auto &m : s.mmwave_target)
            if (m.rows() != static_cast<Eigen::Index>(2 * h.ue_mmwave_elements) ||
                m.cols() != static_cast<Eigen::Index>(2 * h.bs_mmwave_elements))
                fail("mmWave channel shape");
    }
    if (h.has_labels())
    {
        if (!s.label || s.label->selection.plus45.size() != h.rf_chains ||
            s.label->selection.minus45.size() != h.rf_chains)
            fail("label");
        for (std::size_t r = 0; r < 2 * h.rf_chains; ++r)
            if (s.label->selection.output(r) >= h.codebook_size)
                fail("label index");
    }
}

// Per-sample products that do not depend on the input SNR.
struct CleanSample
{
    std::vector<Sub6Snapshot> sub6;
    std::vector<std::array<float, 3>> locations;
    std::vector<Eigen::MatrixXcf> mmwave;
    std::optional<Label> label;
    double label_seconds = 0.0;
};

CleanSample synthesize(const ScenarioConfig &cfg, const Codebook &cb, std::size_t index,
                       const GenerationOptions &options)
{
    const std::size_t T = cfg.sequence_length;
    const std::size_t L = std::max<std::size_t>(1, options.samples_per_trajectory);
    const std::size_t route = index / L;
    const std::size_t offset = index % L;

    ScenarioConfig route_cfg = cfg;
    route_cfg.seed = derive_seed(cfg.seed, {route_stream, route});
    const Trajectory traj = generate_trajectory(route_cfg, T + L);

    CleanSample out;
    out.sub6.reserve(T);
    out.locations.reserve(T);
    for (std::size_t t = 0; t < T; ++t)
    {
        const auto &step = traj[offset + t];
        out.sub6.push_back(sub6_channel_at(cfg, step));
        out.locations.push_back({static_cast<float>(step.location.x_m), static_cast<float>(step.location.y_m),
                                 static_cast<float>(step.location.z_m)});
    }

    const MmWaveChannel target = mmwave_channel_at(cfg, traj[offset + T]);
    out.mmwave.reserve(target.subcarriers());
    for (const auto &H : target.H)
        out.mmwave.push_back(to_float(H));

    if (options.with_labels)
    {
        const auto start = std::chrono::steady_clock::now();
        const SearchResult best =
            exhaustive_search(to_channel(out.mmwave), cb, cfg, db_to_linear(options.label_snr_db));
        out.label = Label{best.selection, best.mutual_information};
        out.label_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return out;
}
} // namespace

std::size_t DatasetHeader::samples_per_trajectory() const
{
    const std::size_t v = (flags & dataset_flags::trajectory_mask) >> dataset_flags::trajectory_shift;
    return v == 0 ? 1 : v;
}

double DatasetHeader::input_snr_db() const
{
    if (input_snr_millibel == snr_infinite_millibel)
        return std::numeric_limits<double>::infinity();
    return static_cast<double>(input_snr_millibel) / 100.0;
}

std::int32_t snr_to_millibel(double snr_db)
{
    if (snr_db == std::numeric_limits<double>::infinity())
        return snr_infinite_millibel;
    const double mb = std::round(snr_db * 100.0);
    if (!std::isfinite(mb) || mb <= static_cast<double>(snr_infinite_millibel) || mb > 2147483647.0)
        throw std::invalid_argument("input SNR out of the representable range");
    return static_cast<std::int32_t>(mb);
}

DatasetHeader make_header(const ScenarioConfig &cfg, double input_snr_db, std::uint16_t flags)
{
    DatasetHeader h;
    h.flags = flags;
    h.sequence_length = narrow(cfg.sequence_length, "sequence_length");
    h.sub6_subcarriers = narrow(cfg.sub6_subcarriers, "sub6_subcarriers");
    h.mmwave_subcarriers = narrow(cfg.mmwave_subcarriers, "mmwave_subcarriers");
    h.bs_sub6_elements = narrow(cfg.bs_sub6_panel.size(), "bs_sub6_panel");
    h.bs_mmwave_elements = narrow(cfg.bs_mmwave_panel.size(), "bs_mmwave_panel");
    h.ue_mmwave_elements = narrow(cfg.ue_mmwave_panel.size(), "ue_mmwave_panel");
    h.rf_chains = narrow(cfg.rf_chains, "rf_chains");
    h.codebook_size = narrow(cfg.codebook_size, "codebook_size");
    h.input_snr_millibel = snr_to_millibel(input_snr_db);
    return h;
}

LabelVector one_hot(const RfSelection &sel, std::size_t codebook_size)
{
    LabelVector v;
    v.rows.assign(2 * sel.chains(), std::vector<std::uint8_t>(codebook_size, 0));
    for (std::size_t r = 0; r < v.rows.size(); ++r)
    {
        const std::size_t idx = sel.output(r);
        if (idx >= codebook_size)
            throw std::invalid_argument("label index out of range");
        v.rows[r][idx] = 1;
    }
    return v;
}

MmWaveChannel to_channel(const std::vector<Eigen::MatrixXcf> &target)
{
    MmWaveChannel ch;
    ch.H.reserve(target.size());
    for (const auto &m : target)
        ch.H.push_back(m.cast<std::complex<double>>());
    return ch;
}

std::vector<Dataset> generate_datasets(const ScenarioConfig &cfg, std::size_t sample_count,
                                       std::span<const double> input_snr_db, const GenerationOptions &options,
                                       GenerationStats *stats)
{
    cfg.validate();
    if (options.samples_per_trajectory > 255)
        throw std::invalid_argument("samples_per_trajectory must be at most 255");

    const Codebook cb = build_codebook(cfg);
    const std::size_t L = std::max<std::size_t>(1, options.samples_per_trajectory);

    std::uint16_t flags = dataset_flags::locations | dataset_flags::mmwave;
    if (options.with_labels)
        flags |= dataset_flags::labels;
    if (L > 1)
        flags |= static_cast<std::uint16_t>(L << dataset_flags::trajectory_shift);

    std::vector<Dataset> out(input_snr_db.size());
    for (std::size_t s = 0; s < out.size(); ++s)
    {
        out[s].header = make_header(cfg, input_snr_db[s], flags);
        out[s].header.sample_count = narrow(sample_count, "sample_count");
        out[s].samples.resize(sample_count);
    }

    std::vector<double> label_seconds(sample_count, 0.0);
    parallel_for(sample_count, options.threads,
                 [&](std::size_t begin, std::size_t end, std::size_t)
                 {
                     for (std::size_t i = begin; i < end; ++i)
                     {
                         CleanSample clean = synthesize(cfg, cb, i, options);
                         label_seconds[i] = clean.label_seconds;
                         for (std::size_t s = 0; s < out.size(); ++s)
                         {
                             ChannelSample &dst = out[s].samples[i];
                             const auto mb = static_cast<std::uint64_t>(
                                 static_cast<std::uint32_t>(out[s].header.input_snr_millibel));
                             dst.sub6_seq.reserve(clean.sub6.size());
                             for (std::size_t t = 0; t < clean.sub6.size(); ++t)
                             {
                                 const auto seed = derive_seed(cfg.seed, {noise_stream, i, t, mb});
                                 dst.sub6_seq.push_back(
                                     to_float(add_measurement_noise(clean.sub6[t], input_snr_db[s], seed).h));
                             }
                             dst.locations = clean.locations;
                             dst.mmwave_target = clean.mmwave;
                             dst.label = clean.label;
                         }
                     }
                 });

    if (stats)
        stats->label_seconds = std::accumulate(label_seconds.begin(), label_seconds.end(), 0.0);
    return out;
}

Dataset generate_dataset(const ScenarioConfig &cfg, std::size_t sample_count, double input_snr_db,
                         const GenerationOptions &options, GenerationStats *stats)
{
    const double snr[1] = {input_snr_db};
    return std::move(generate_datasets(cfg, sample_count, snr, options, stats).front());
}

// ----- Serialization ---------------------------------------------------------

std::vector<std::uint8_t> serialize_dataset(const Dataset &d)
{
    DatasetHeader h = d.header;
    h.sample_count = narrow(d.samples.size(), "sample_count");
    const SampleLayout layout(h);

    std::vector<std::uint8_t> out;
    out.reserve(header_bytes + d.samples.size() * layout.bytes());
    detail::ByteWriter w(out);

    w.bytes(dataset_magic, 4);
    w.u16(h.version);
    w.u16(h.flags);
    for (std::uint32_t v : {h.sequence_length, h.sub6_subcarriers, h.mmwave_subcarriers, h.bs_sub6_elements,
                            h.bs_mmwave_elements, h.ue_mmwave_elements, h.rf_chains, h.codebook_size,
                            h.sample_count})
        w.u32(v);
    w.i32(h.input_snr_millibel);

    for (std::size_t i = 0; i < d.samples.size(); ++i)
    {
        const auto &s = d.samples[i];
        check_sample(h, s, i);

        for (const auto &m : s.sub6_seq)
            for (Eigen::Index k = 0; k < m.cols(); ++k)
                for (Eigen::Index p = 0; p < m.rows(); ++p)
                {
                    w.f32(m(p, k).real());
                    w.f32(m(p, k).imag());
                }
        if (h.has_locations())
            for (const auto &loc : s.locations)
                for (float v : loc)
                    w.f32(v);
        if (h.has_mmwave())
            for (const auto &m : s.mmwave_target)
                for (Eigen::Index rx = 0; rx < m.rows(); ++rx)
                    for (Eigen::Index tx = 0; tx < m.cols(); ++tx)
                    {
                        w.f32(m(rx, tx).real());
                        w.f32(m(rx, tx).imag());
                    }
        if (h.has_labels())
        {
            for (std::size_t r = 0; r < 2 * h.rf_chains; ++r)
                w.u16(static_cast<std::uint16_t>(s.label->selection.output(r)));
            w.f64(s.label->optimal_mi);
        }
    }
    return out;
}

Dataset deserialize_dataset(std::span<const std::uint8_t> bytes)
{
    detail::ByteReader r(bytes);
    if (!r.match(dataset_magic, 4))
        throw FormatError("bad magic, expected \"DBBP\"", 0);

    Dataset d;
    DatasetHeader &h = d.header;
    const std::size_t version_offset = r.offset();
    h.version = r.u16();
    if (h.version != 1)
        throw FormatError("unsupported version " + std::to_string(h.version), version_offset);
    h.flags = r.u16();
    h.sequence_length = r.u32();
    h.sub6_subcarriers = r.u32();
    h.mmwave_subcarriers = r.u32();
    h.bs_sub6_elements = r.u32();
    h.bs_mmwave_elements = r.u32();
    h.ue_mmwave_elements = r.u32();
    h.rf_chains = r.u32();
    h.codebook_size = r.u32();
    h.sample_count = r.u32();
    h.input_snr_millibel = r.i32();

    const SampleLayout layout(h);
    const std::uint64_t sample_bytes = layout.bytes();

    d.samples.reserve(std::min<std::uint64_t>(h.sample_count, r.remaining() / std::max<std::uint64_t>(1, sample_bytes)));
    for (std::size_t i = 0; i < h.sample_count; ++i)
    {
        if (r.remaining() < sample_bytes)
            throw FormatError("incomplete sample " + std::to_string(i) + " of " + std::to_string(h.sample_count),
                              r.offset(), i);

        ChannelSample s;
        const auto ports = static_cast<Eigen::Index>(2 * h.bs_sub6_elements);
        s.sub6_seq.reserve(h.sequence_length);
        for (std::size_t t = 0; t < h.sequence_length; ++t)
        {
            Eigen::MatrixXcf m(ports, static_cast<Eigen::Index>(h.sub6_subcarriers));
            for (Eigen::Index k = 0; k < m.cols(); ++k)
                for (Eigen::Index p = 0; p < m.rows(); ++p)
                {
                    const float re = r.f32();
                    m(p, k) = {re, r.f32()};
                }
            s.sub6_seq.push_back(std::move(m));
        }
        if (h.has_locations())
        {
            s.locations.resize(h.sequence_length);
            for (auto &loc : s.locations)
                for (float &v : loc)
                    v = r.f32();
        }
        if (h.has_mmwave())
        {
            s.mmwave_target.reserve(h.mmwave_subcarriers);
            for (std::size_t k = 0; k < h.mmwave_subcarriers; ++k)
            {
                Eigen::MatrixXcf m(static_cast<Eigen::Index>(2 * h.ue_mmwave_elements),
                                   static_cast<Eigen::Index>(2 * h.bs_mmwave_elements));
                for (Eigen::Index rx = 0; rx < m.rows(); ++rx)
                    for (Eigen::Index tx = 0; tx < m.cols(); ++tx)
                    {
                        const float re = r.f32();
                        m(rx, tx) = {re, r.f32()};
                    }
                s.mmwave_target.push_back(std::move(m));
            }
        }
        if (h.has_labels())
        {
            Label label;
            label.selection.plus45.resize(h.rf_chains);
            label.selection.minus45.resize(h.rf_chains);
            for (std::size_t k = 0; k < 2 * std::size_t{h.rf_chains}; ++k)
            {
                const std::size_t at = r.offset();
                const std::uint16_t idx = r.u16();
                if (idx >= h.codebook_size)
                    throw FormatError("label index " + std::to_string(idx) + " out of range", at, i);
                if (k < h.rf_chains)
                    label.selection.plus45[k] = idx;
                else
                    label.selection.minus45[k - h.rf_chains] = idx;
            }
            label.optimal_mi = r.f64();
            s.label = std::move(label);
        }
        d.samples.push_back(std::move(s));
    }

    if (r.remaining() != 0)
        throw FormatError(std::to_string(r.remaining()) + " trailing bytes after the last sample", r.offset());
    return d;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string() + " for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("error while reading " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("error while writing " + path.string());
}

void write_dataset(const Dataset &d, const std::filesystem::path &path)
{
    write_file(path, serialize_dataset(d));
}

Dataset read_dataset(const std::filesystem::path &path)
{
    return deserialize_dataset(read_file(path));
}

bool identical(const Dataset &a, const Dataset &b)
{
    return serialize_dataset(a) == serialize_dataset(b);
}

std::pair<Dataset, Dataset> split_dataset(const Dataset &d, double train_fraction, std::uint64_t seed)
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_fraction must be in (0, 1)");

    std::vector<std::size_t> order(d.samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(seed, {split_stream}));
    for (std::size_t i = order.size(); i > 1; --i)
    {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
        std::swap(order[i - 1], order[std::min(j, i - 1)]);
    }

    const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(order.size()) + 0.5));

    std::pair<Dataset, Dataset> out;
    for (Dataset *part : {&out.first, &out.second})
    {
        part->header = d.header;
        // Shuffled samples no longer form consecutive windows of one route.
        part->header.flags &= static_cast<std::uint16_t>(~dataset_flags::trajectory_mask);
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < n_train ? out.first : out.second).samples.push_back(d.samples[order[i]]);
    out.first.header.sample_count = narrow(out.first.samples.size(), "sample_count");
    out.second.header.sample_count = narrow(out.second.samples.size(), "sample_count");
    return out;
}

} // namespace dbbeam
