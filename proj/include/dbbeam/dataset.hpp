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
#include "dbbeam/precoding.hpp"
#include "dbbeam/scenario.hpp"
#include "dbbeam/scores.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dbbeam
{

// Flag bits of the dataset header.
namespace dataset_flags
{
inline constexpr std::uint16_t labels = 1u << 0;
inline constexpr std::uint16_t locations = 1u << 1;
inline constexpr std::uint16_t mmwave = 1u << 2;
// Bits 8..15: samples per trajectory when consecutive samples are sliding
// windows over one route (0 or 1 means every sample has its own route).
inline constexpr unsigned trajectory_shift = 8;
inline constexpr std::uint16_t trajectory_mask = 0xFF00;
} // namespace dataset_flags

inline constexpr std::int32_t snr_infinite_millibel = std::numeric_limits<std::int32_t>::min();

struct DatasetHeader
{
    std::uint16_t version = 1;
    std::uint16_t flags = 0;
    std::uint32_t sequence_length = 0; // T
    std::uint32_t sub6_subcarriers = 0;
    std::uint32_t mmwave_subcarriers = 0;
    std::uint32_t bs_sub6_elements = 0; // N_tx_sub6
    std::uint32_t bs_mmwave_elements = 0; // N_tx
    std::uint32_t ue_mmwave_elements = 0; // N_rx
    std::uint32_t rf_chains = 0;
    std::uint32_t codebook_size = 0;
    std::uint32_t sample_count = 0;
    std::int32_t input_snr_millibel = snr_infinite_millibel;

    bool has_labels() const { return flags & dataset_flags::labels; }
    bool has_locations() const { return flags & dataset_flags::locations; }
    bool has_mmwave() const { return flags & dataset_flags::mmwave; }
    std::size_t samples_per_trajectory() const;
    double input_snr_db() const;

    bool operator==(const DatasetHeader &) const = default;
};

// Header describing data generated for cfg at the given input SNR.
DatasetHeader make_header(const ScenarioConfig &cfg, double input_snr_db, std::uint16_t flags);

std::int32_t snr_to_millibel(double snr_db);

struct Label
{
    RfSelection selection;
    double optimal_mi = 0.0;
};

// One record: T noisy sub-6 snapshots (each 2 N_tx_sub6 x K), T locations,
// the noiseless mmWave channel one step later and its optimal beams.
// Values are held in the single precision of the file format.
struct ChannelSample
{
    std::vector<Eigen::MatrixXcf> sub6_seq;
    std::vector<std::array<float, 3>> locations;
    std::vector<Eigen::MatrixXcf> mmwave_target;
    std::optional<Label> label;
};

struct Dataset
{
    DatasetHeader header;
    std::vector<ChannelSample> samples;

    std::size_t size() const { return samples.size(); }
};

// One-hot expansion of a selection: 2 N_rf rows of length |C|.
struct LabelVector
{
    std::vector<std::vector<std::uint8_t>> rows;
};

LabelVector one_hot(const RfSelection &sel, std::size_t codebook_size);

MmWaveChannel to_channel(const std::vector<Eigen::MatrixXcf> &target);

struct GenerationOptions
{
    // Consecutive samples share a route, shifted by one step each. Enables
    // the persistence baseline. 1 gives independent routes per sample.
    std::size_t samples_per_trajectory = 1;
    double label_snr_db = 30.0;
    bool with_labels = true;
    std::size_t threads = 1;
};

struct GenerationStats
{
    double label_seconds = 0.0;
};

/*
Builds one dataset per input SNR over the same routes: noisy sub-6 inputs for
steps 1..T, locations 1..T, the clean mmWave channel at step T+1 and its
exhaustive-search label. Labels are computed from the single-precision
stored channel, so they can be reproduced from a file alone. Output is a pure
function of (cfg, sample_count, snr list, options except threads).
*/
std::vector<Dataset> generate_datasets(const ScenarioConfig &cfg, std::size_t sample_count,
                                       std::span<const double> input_snr_db, const GenerationOptions &options = {},
                                       GenerationStats *stats = nullptr);

Dataset generate_dataset(const ScenarioConfig &cfg, std::size_t sample_count, double input_snr_db,
                         const GenerationOptions &options = {}, GenerationStats *stats = nullptr);

// Little-endian "DBBP" encoding.
std::vector<std::uint8_t> serialize_dataset(const Dataset &d);
Dataset deserialize_dataset(std::span<const std::uint8_t> bytes);

// Throws IoError on file system failures and FormatError on malformed input.
void write_dataset(const Dataset &d, const std::filesystem::path &path);
Dataset read_dataset(const std::filesystem::path &path);

// Exact equality of every stored bit.
bool identical(const Dataset &a, const Dataset &b);

// Deterministic shuffle, then the first round(fraction * size) samples
// (halves rounded up) go to the training set.
std::pair<Dataset, Dataset> split_dataset(const Dataset &d, double train_fraction, std::uint64_t seed);

// ----- Prediction-scores exchange file ("DBPR") ---------------------------

struct ScoresFile
{
    std::uint32_t rf_chains = 0;
    std::uint32_t codebook_size = 0;
    std::vector<PredictionScores> samples;
};

std::vector<std::uint8_t> serialize_scores(const ScoresFile &f);
ScoresFile deserialize_scores(std::span<const std::uint8_t> bytes);
void write_scores(const ScoresFile &f, const std::filesystem::path &path);
ScoresFile read_scores(const std::filesystem::path &path);

std::vector<std::uint8_t> read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);

} // namespace dbbeam
