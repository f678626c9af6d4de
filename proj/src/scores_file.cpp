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

#include "binary_io.hpp"
#include "dbbeam/dataset.hpp"

#include <stdexcept>
#include <string>

namespace dbbeam
{

namespace
{
constexpr char scores_magic[4] = {'D', 'B', 'P', 'R'};
}

std::vector<std::uint8_t> serialize_scores(const ScoresFile &f)
{
    const std::size_t outputs = 2 * std::size_t{f.rf_chains};
    std::vector<std::uint8_t> out;
    out.reserve(18 + f.samples.size() * outputs * f.codebook_size * 4);
    detail::ByteWriter w(out);

    w.bytes(scores_magic, 4);
    w.u16(1);
    w.u32(static_cast<std::uint32_t>(f.samples.size()));
    w.u32(f.rf_chains);
    w.u32(f.codebook_size);
    for (std::size_t i = 0; i < f.samples.size(); ++i)
    {
        const auto &s = f.samples[i];
        if (s.outputs() != outputs || s.codebook_size() != f.codebook_size)
            throw std::invalid_argument("scores of sample " + std::to_string(i) + " have the wrong shape");
        for (float v : s.values())
            w.f32(v);
    }
    return out;
}

ScoresFile deserialize_scores(std::span<const std::uint8_t> bytes)
{
    detail::ByteReader r(bytes);
    if (!r.match(scores_magic, 4))
        throw FormatError("bad magic, expected \"DBPR\"", 0);
    const std::size_t version_offset = r.offset();
    const std::uint16_t version = r.u16();
    if (version != 1)
        throw FormatError("unsupported version " + std::to_string(version), version_offset);

    ScoresFile f;
    const std::uint32_t count = r.u32();
    f.rf_chains = r.u32();
    f.codebook_size = r.u32();

    const std::size_t outputs = 2 * std::size_t{f.rf_chains};
    const std::uint64_t sample_bytes = 4ull * outputs * f.codebook_size;
    f.samples.reserve(std::min<std::uint64_t>(count, r.remaining() / std::max<std::uint64_t>(1, sample_bytes)));
    for (std::size_t i = 0; i < count; ++i)
    {
        if (r.remaining() < sample_bytes)
            throw FormatError("incomplete scores of sample " + std::to_string(i), r.offset(), i);
        PredictionScores s(outputs, f.codebook_size);
        for (float &v : s.values())
        {
            const std::size_t at = r.offset();
            v = r.f32();
            if (!(v >= 0.0f && v <= 1.0f))
                throw FormatError("score outside [0, 1]", at, i);
        }
        f.samples.push_back(std::move(s));
    }
    if (r.remaining() != 0)
        throw FormatError(std::to_string(r.remaining()) + " trailing bytes after the last sample", r.offset());
    return f;
}

void write_scores(const ScoresFile &f, const std::filesystem::path &path)
{
    write_file(path, serialize_scores(f));
}

ScoresFile read_scores(const std::filesystem::path &path)
{
    return deserialize_scores(read_file(path));
}

} // namespace dbbeam
