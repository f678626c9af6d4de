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

#include "dbbeam/scores.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dbbeam
{

bool PredictionScores::in_range() const
{
    return std::all_of(values_.begin(), values_.end(),
                       [](float v) { return std::isfinite(v) && v >= 0.0f && v <= 1.0f; });
}

std::vector<std::size_t> top_n(const PredictionScores &scores, std::size_t output, std::size_t n)
{
    if (output >= scores.outputs())
        throw std::invalid_argument("output " + std::to_string(output) + " out of range");
    if (n < 1 || n > scores.codebook_size())
        throw std::invalid_argument("n must be in [1, " + std::to_string(scores.codebook_size()) + "], got " +
                                    std::to_string(n));

    std::vector<std::size_t> order(scores.codebook_size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores.at(output, a) > scores.at(output, b); });
    order.resize(n);
    return order;
}

} // namespace dbbeam
