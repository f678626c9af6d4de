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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dbbeam
{

// Process exit codes of the command-line tool.
namespace exit_code
{
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int config = 2;
inline constexpr int io = 3;
inline constexpr int missing_labels = 4;
inline constexpr int misaligned = 5;
inline constexpr int format = 6;
} // namespace exit_code

// Command-line inputs shared by all subcommands. Unset values fall back to
// the configuration file, then to built-in defaults.
struct CommandOptions
{
    std::optional<std::filesystem::path> config;
    std::optional<std::filesystem::path> dataset;
    std::optional<std::filesystem::path> scores;
    std::optional<std::filesystem::path> report;
    std::optional<std::filesystem::path> out;
    std::vector<std::string> predictors;
    std::vector<std::size_t> n_list;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<double> rho_db;
};

// Each command writes key=value lines to `out`, diagnostics to `err`, and
// returns an exit code instead of throwing.
int cmd_generate(const CommandOptions &opts, std::ostream &out, std::ostream &err);
int cmd_evaluate(const CommandOptions &opts, std::ostream &out, std::ostream &err);
int cmd_inspect(const CommandOptions &opts, std::ostream &out, std::ostream &err);
int cmd_codebook_export(const CommandOptions &opts, std::ostream &out, std::ostream &err);

// File name used by generate for one input SNR: <prefix>_snr<value>.dbbp.
std::filesystem::path dataset_path_for(const std::string &prefix, double input_snr_db);

} // namespace dbbeam
