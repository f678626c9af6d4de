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

#include "dbbeam/codebook.hpp"
#include "dbbeam/dataset.hpp"
#include "dbbeam/scenario.hpp"
#include "dbbeam/scores.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dbbeam
{

// Source of beam scores for the samples of a dataset.
class Predictor
{
  public:
    virtual ~Predictor() = default;

    virtual std::string name() const = 0;
    virtual int version() const { return 1; }

    // Throws AlignmentError (or std::invalid_argument for unsupported
    // datasets) before any prediction is requested.
    virtual void check(const Dataset &d) const;

    // Scores of sample `index`, shaped 2 N_rf x |C|.
    virtual PredictionScores predict(const Dataset &d, std::size_t index) const = 0;
};

// One-hot on the stored label.
class OraclePredictor final : public Predictor
{
  public:
    std::string name() const override { return "oracle"; }
    void check(const Dataset &d) const override;
    PredictionScores predict(const Dataset &d, std::size_t index) const override;
};

// Independent uniform scores per sample, seeded by (seed, sample index).
class RandomPredictor final : public Predictor
{
  public:
    explicit RandomPredictor(std::uint64_t seed) : seed_(seed) {}
    std::string name() const override { return "random"; }
    PredictionScores predict(const Dataset &d, std::size_t index) const override;

  private:
    std::uint64_t seed_;
};

// One-hot on the label of the previous sample of the same route, i.e. the
// optimal beams one step earlier. Needs a dataset generated with more than
// one sample per trajectory; the first sample of each route gets all-zero
// scores.
class PersistencePredictor final : public Predictor
{
  public:
    std::string name() const override { return "persistence"; }
    void check(const Dataset &d) const override;
    PredictionScores predict(const Dataset &d, std::size_t index) const override;
};

// Scores read from a "DBPR" file, aligned to the dataset by sample index.
class FilePredictor final : public Predictor
{
  public:
    explicit FilePredictor(ScoresFile scores, std::string label = "file")
        : scores_(std::move(scores)), label_(std::move(label))
    {
    }
    std::string name() const override { return label_; }
    void check(const Dataset &d) const override;
    PredictionScores predict(const Dataset &d, std::size_t index) const override;

  private:
    ScoresFile scores_;
    std::string label_;
};

// 1 iff every output's label index is among its top-n scores.
int best_n_indicator(const PredictionScores &scores, const LabelVector &label, std::size_t n);

struct AccuracyRow
{
    std::size_t n = 0;
    double accuracy = 0.0; // all-outputs indicator averaged over samples
    double per_output_accuracy = 0.0; // supplementary: fraction of (sample, output) hits
};

struct AccuracyReport
{
    std::string predictor;
    double input_snr_db = 0.0;
    std::size_t samples = 0;
    std::vector<AccuracyRow> rows;
};

// Throws std::invalid_argument if the dataset carries no labels.
AccuracyReport best_n_accuracy(const Dataset &d, const Predictor &predictor, std::span<const std::size_t> n_list,
                               std::size_t threads = 1);

struct EfficiencyRow
{
    std::size_t n = 0;
    double mean_se = 0.0;       // candidate-set search, bit/s/Hz per subcarrier
    double exhaustive_se = 0.0; // full search
    double ratio = 0.0;
    std::uint64_t configurations = 0; // per sample
};

// Checks that cfg describes the dataset's dimensions; throws ConfigError.
void check_compatible(const ScenarioConfig &cfg, const DatasetHeader &h);

std::vector<EfficiencyRow> spectral_efficiency_report(const Dataset &d, const ScenarioConfig &cfg,
                                                      const Predictor &predictor,
                                                      std::span<const std::size_t> n_list, double snr_linear,
                                                      std::size_t threads = 1);

// Predictor by kind: oracle, random, persistence or file (needs scores).
std::unique_ptr<Predictor> make_predictor(const std::string &kind, std::uint64_t seed,
                                          const std::optional<ScoresFile> &scores = std::nullopt);

struct ReportRow
{
    std::string predictor;
    double input_snr_db = 0.0;
    AccuracyRow accuracy;
    std::optional<EfficiencyRow> efficiency;
    std::size_t samples = 0;
};

void write_report_csv(std::span<const ReportRow> rows, std::ostream &out);

} // namespace dbbeam
