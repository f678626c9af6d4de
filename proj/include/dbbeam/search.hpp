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

#include "dbbeam/channel.hpp"
#include "dbbeam/codebook.hpp"
#include "dbbeam/precoding.hpp"
#include "dbbeam/scenario.hpp"
#include "dbbeam/scores.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dbbeam
{

struct SearchOptions
{
    // Worker threads partitioning the candidate space. Results do not
    // depend on this value.
    std::size_t threads = 1;
};

struct SearchResult
{
    RfSelection selection;
    double mutual_information = 0.0;
    std::uint64_t evaluated = 0; // configurations visited
};

/*
Maximizes the RF-only mutual information over a product of per-output
candidate lists (2 N_rf lists of codeword indices, +45 deg chains first).
Ties resolve to the lexicographically smallest RfSelection.

The search caches, per subcarrier and chain, the effective column
H[k] [f_plus; f_minus] of every candidate codeword pair, so each
configuration costs one N_rf x N_rf determinant per subcarrier.
*/
SearchResult restricted_search(const MmWaveChannel &channel, const Codebook &cb, const ScenarioConfig &cfg,
                               double snr_linear, const std::vector<std::vector<std::size_t>> &candidates,
                               const SearchOptions &options = {});

// All |C|^(2 N_rf) configurations.
SearchResult exhaustive_search(const MmWaveChannel &channel, const Codebook &cb, const ScenarioConfig &cfg,
                               double snr_linear, const SearchOptions &options = {});

// The n^(2 N_rf) configurations formed by each output's top-n scores.
// Throws std::invalid_argument unless 1 <= n <= |C|.
SearchResult candidate_set_search(const MmWaveChannel &channel, const Codebook &cb, const ScenarioConfig &cfg,
                                  double snr_linear, const PredictionScores &scores, std::size_t n,
                                  const SearchOptions &options = {});

std::uint64_t configuration_count(std::size_t candidates_per_output, std::size_t rf_chains);

} // namespace dbbeam
