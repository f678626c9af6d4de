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

#include "dbbeam/scenario.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace dbbeam
{

// Everything a command-line run needs: the scenario plus dataset sizes,
// SNR grid, output location, evaluation settings and parallelism.
struct RunConfig
{
    ScenarioConfig scenario;

    std::size_t sample_count = 1000;
    std::vector<double> input_snr_db{std::numeric_limits<double>::infinity()};
    double label_snr_db = 30.0;
    double evaluation_snr_db = 30.0;
    std::string output_prefix = "dataset";
    std::size_t samples_per_trajectory = 1;
    std::vector<std::size_t> n_list{1, 3, 5};
    std::size_t threads = 0; // 0: all hardware threads

    // Throws ConfigError naming the offending key.
    void validate() const;
};

/*
Parses flat "key = value" text. '#' starts a comment, blank lines are
ignored, keys may appear at most once. Panels are written "ROWSxCOLS",
lists are comma separated and SNR values accept "inf". Errors carry the
key and 1-based line number.
*/
RunConfig parse_run_config(std::istream &in);

// Throws IoError if the file cannot be opened.
RunConfig load_run_config(const std::filesystem::path &path);

// Keys accepted by the parser, in documentation order.
const std::vector<std::string> &run_config_keys();

} // namespace dbbeam
