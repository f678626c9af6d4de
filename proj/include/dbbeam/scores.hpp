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

#pragma once

#include <cstddef>
#include <vector>

namespace dbbeam
{

// Beam priorities for one sample: 2 N_rf vectors of length |C| with entries
// in [0, 1]. Output r < N_rf belongs to +45 deg chain r, output N_rf + r to
// -45 deg chain r.
class PredictionScores
{
  public:
    PredictionScores() = default;
    PredictionScores(std::size_t outputs, std::size_t codebook_size, float fill = 0.0f)
        : outputs_(outputs), codebook_size_(codebook_size), values_(outputs * codebook_size, fill)
    {
    }

    std::size_t outputs() const { return outputs_; }
    std::size_t codebook_size() const { return codebook_size_; }

    float &at(std::size_t output, std::size_t index) { return values_[output * codebook_size_ + index]; }
    float at(std::size_t output, std::size_t index) const { return values_[output * codebook_size_ + index]; }

    // Output-major, codeword-minor.
    const std::vector<float> &values() const { return values_; }
    std::vector<float> &values() { return values_; }

    // True when every entry is finite and in [0, 1].
    bool in_range() const;

    bool operator==(const PredictionScores &) const = default;

  private:
    std::size_t outputs_ = 0;
    std::size_t codebook_size_ = 0;
    std::vector<float> values_;
};

// Indices of the n largest scores of one output, best first. Equal scores
// rank the smaller codeword index first. Throws std::invalid_argument unless
// 1 <= n <= codebook_size.
std::vector<std::size_t> top_n(const PredictionScores &scores, std::size_t output, std::size_t n);

} // namespace dbbeam
