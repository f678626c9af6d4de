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

#include "dbbeam/predict_eval.hpp"

#include "dbbeam/errors.hpp"
#include "dbbeam/parallel.hpp"
#include "dbbeam/random.hpp"
#include "dbbeam/search.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace dbbeam
{

namespace
{
PredictionScores one_hot_scores(const RfSelection &sel, std::size_t codebook_size)
{
    PredictionScores s(2 * sel.chains(), codebook_size);
    for (std::size_t r = 0; r < s.outputs(); ++r)
        s.at(r, sel.output(r)) = 1.0f;
    return s;
}

void require_labels(const Dataset &d)
{
    if (!d.header.has_labels())
        throw std::invalid_argument("dataset carries no labels");
}

void check_n_list(std::span<const std::size_t> n_list, std::size_t codebook_size)
{
    for (std::size_t n : n_list)
        if (n < 1 || n > codebook_size)
            throw std::invalid_argument("n = " + std::to_string(n) + " outside [1, " +
                                        std::to_string(codebook_size) + "]");
}

// Predictions of every sample, requested in index order per worker.
std::vector<PredictionScores> predict_all(const Dataset &d, const Predictor &p, std::size_t threads)
{
    p.check(d);
    std::vector<PredictionScores> out(d.size());
    const std::size_t outputs = 2 * std::size_t{d.header.rf_chains};
    parallel_for(d.size(), threads,
                 [&](std::size_t begin, std::size_t end, std::size_t)
                 {
                     for (std::size_t i = begin; i < end; ++i)
                     {
                         out[i] = p.predict(d, i);
                         if (out[i].outputs() != outputs || out[i].codebook_size() != d.header.codebook_size ||
                             !out[i].in_range())
                             throw AlignmentError("predictor " + p.name() + " produced malformed scores for sample " +
                                                  std::to_string(i));
                     }
                 });
    return out;
}
} // namespace

void Predictor::check(const Dataset &) const {}

void OraclePredictor::check(const Dataset &d) const
{
    require_labels(d);
}

PredictionScores OraclePredictor::predict(const Dataset &d, std::size_t index) const
{
    return one_hot_scores(d.samples.at(index).label.value().selection, d.header.codebook_size);
}

PredictionScores RandomPredictor::predict(const Dataset &d, std::size_t index) const
{
    PredictionScores s(2 * std::size_t{d.header.rf_chains}, d.header.codebook_size);
    Rng rng(derive_seed(seed_, {index}));
    for (float &v : s.values())
        v = static_cast<float>(rng.uniform());
    return s;
}

void PersistencePredictor::check(const Dataset &d) const
{
    require_labels(d);
    if (d.header.samples_per_trajectory() < 2)
        throw std::invalid_argument("persistence needs trajectory-linked samples (samples_per_trajectory > 1)");
}

PredictionScores PersistencePredictor::predict(const Dataset &d, std::size_t index) const
{
    const std::size_t L = d.header.samples_per_trajectory();
    if (index % L == 0)
        return PredictionScores(2 * std::size_t{d.header.rf_chains}, d.header.codebook_size);
    return one_hot_scores(d.samples.at(index - 1).label.value().selection, d.header.codebook_size);
}

void FilePredictor::check(const Dataset &d) const
{
    if (scores_.samples.size() != d.size())
        throw AlignmentError("scores file holds " + std::to_string(scores_.samples.size()) +
                             " samples, dataset holds " + std::to_string(d.size()));
    if (scores_.rf_chains != d.header.rf_chains || scores_.codebook_size != d.header.codebook_size)
        throw AlignmentError("scores file shape (N_rf=" + std::to_string(scores_.rf_chains) +
                             ", |C|=" + std::to_string(scores_.codebook_size) + ") does not match the dataset (N_rf=" +
                             std::to_string(d.header.rf_chains) + ", |C|=" + std::to_string(d.header.codebook_size) +
                             ")");
}

PredictionScores FilePredictor::predict(const Dataset &, std::size_t index) const
{
    return scores_.samples.at(index);
}

int best_n_indicator(const PredictionScores &scores, const LabelVector &label, std::size_t n)
{
    if (label.rows.size() != scores.outputs())
        throw std::invalid_argument("label and scores disagree on the number of outputs");

    std::size_t matches = 0;
    for (std::size_t r = 0; r < scores.outputs(); ++r)
    {
        if (label.rows[r].size() != scores.codebook_size())
            throw std::invalid_argument("label and scores disagree on the codebook size");
        for (std::size_t i : top_n(scores, r, n))
            matches += label.rows[r][i];
    }
    return matches == scores.outputs() ? 1 : 0;
}

AccuracyReport best_n_accuracy(const Dataset &d, const Predictor &predictor, std::span<const std::size_t> n_list,
                               std::size_t threads)
{
    require_labels(d);
    check_n_list(n_list, d.header.codebook_size);
    const auto predictions = predict_all(d, predictor, threads);

    AccuracyReport report;
    report.predictor = predictor.name();
    report.input_snr_db = d.header.input_snr_db();
    report.samples = d.size();

    const std::size_t outputs = 2 * std::size_t{d.header.rf_chains};
    for (std::size_t n : n_list)
    {
        std::uint64_t hits = 0;
        std::uint64_t output_hits = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
        {
            const auto &sel = d.samples[i].label.value().selection;
            const LabelVector label = one_hot(sel, d.header.codebook_size);
            hits += static_cast<std::uint64_t>(best_n_indicator(predictions[i], label, n));
            for (std::size_t r = 0; r < outputs; ++r)
            {
                const auto top = top_n(predictions[i], r, n);
                output_hits += std::find(top.begin(), top.end(), sel.output(r)) != top.end();
            }
        }

        AccuracyRow row;
        row.n = n;
        if (!d.samples.empty())
        {
            row.accuracy = static_cast<double>(hits) / static_cast<double>(d.size());
            row.per_output_accuracy =
                static_cast<double>(output_hits) / static_cast<double>(d.size() * outputs);
        }
        report.rows.push_back(row);
    }
    return report;
}

void check_compatible(const ScenarioConfig &cfg, const DatasetHeader &h)
{
    auto same = [](std::size_t a, std::uint32_t b, const char *key)
    {
        if (a != b)
            throw ConfigError(std::string(key) + " = " + std::to_string(a) + " does not match the dataset (" +
                                  std::to_string(b) + ")",
                              key);
    };
    same(cfg.sequence_length, h.sequence_length, "sequence_length");
    same(cfg.sub6_subcarriers, h.sub6_subcarriers, "sub6_subcarriers");
    same(cfg.mmwave_subcarriers, h.mmwave_subcarriers, "mmwave_subcarriers");
    same(cfg.bs_sub6_panel.size(), h.bs_sub6_elements, "bs_sub6_panel");
    same(cfg.bs_mmwave_panel.size(), h.bs_mmwave_elements, "bs_mmwave_panel");
    same(cfg.ue_mmwave_panel.size(), h.ue_mmwave_elements, "ue_mmwave_panel");
    same(cfg.rf_chains, h.rf_chains, "rf_chains");
    same(cfg.codebook_size, h.codebook_size, "codebook_size");
}

std::vector<EfficiencyRow> spectral_efficiency_report(const Dataset &d, const ScenarioConfig &cfg,
                                                      const Predictor &predictor,
                                                      std::span<const std::size_t> n_list, double snr_linear,
                                                      std::size_t threads)
{
    if (!d.header.has_mmwave())
        throw std::invalid_argument("dataset carries no mmWave channels");
    check_compatible(cfg, d.header);
    check_n_list(n_list, d.header.codebook_size);

    const Codebook cb = build_codebook(cfg);
    const auto predictions = predict_all(d, predictor, threads);

    // Per-sample results, reduced in index order below.
    std::vector<double> exhaustive(d.size());
    std::vector<double> reduced(d.size() * n_list.size());
    std::vector<std::uint64_t> visited(d.size() * n_list.size());
    parallel_for(d.size(), threads,
                 [&](std::size_t begin, std::size_t end, std::size_t)
                 {
                     for (std::size_t i = begin; i < end; ++i)
                     {
                         const MmWaveChannel ch = to_channel(d.samples[i].mmwave_target);
                         exhaustive[i] = exhaustive_search(ch, cb, cfg, snr_linear).mutual_information;
                         for (std::size_t j = 0; j < n_list.size(); ++j)
                         {
                             const auto r = candidate_set_search(ch, cb, cfg, snr_linear, predictions[i], n_list[j]);
                             reduced[i * n_list.size() + j] = r.mutual_information;
                             visited[i * n_list.size() + j] = r.evaluated;
                         }
                     }
                 });

    const double K = static_cast<double>(d.header.mmwave_subcarriers);
    double exhaustive_sum = 0.0;
    for (double v : exhaustive)
        exhaustive_sum += v;

    std::vector<EfficiencyRow> rows;
    for (std::size_t j = 0; j < n_list.size(); ++j)
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i)
            sum += reduced[i * n_list.size() + j];

        EfficiencyRow row;
        row.n = n_list[j];
        row.configurations = configuration_count(n_list[j], d.header.rf_chains);
        for (std::size_t i = 0; i < d.size(); ++i)
            if (visited[i * n_list.size() + j] != row.configurations)
                throw std::logic_error("candidate search visited an unexpected number of configurations");
        if (!d.samples.empty())
        {
            const double S = static_cast<double>(d.size());
            row.mean_se = sum / S / K;
            row.exhaustive_se = exhaustive_sum / S / K;
            row.ratio = exhaustive_sum > 0.0 ? sum / exhaustive_sum : 1.0;
        }
        rows.push_back(row);
    }
    return rows;
}

std::unique_ptr<Predictor> make_predictor(const std::string &kind, std::uint64_t seed,
                                          const std::optional<ScoresFile> &scores)
{
    if (kind == "oracle")
        return std::make_unique<OraclePredictor>();
    if (kind == "random")
        return std::make_unique<RandomPredictor>(seed);
    if (kind == "persistence")
        return std::make_unique<PersistencePredictor>();
    if (kind == "file")
    {
        if (!scores)
            throw std::invalid_argument("the file predictor needs a scores file");
        return std::make_unique<FilePredictor>(*scores);
    }
    throw std::invalid_argument("unknown predictor '" + kind + "'");
}

void write_report_csv(std::span<const ReportRow> rows, std::ostream &out)
{
    out << "predictor,input_snr_db,n,A_best_n,mean_se_bits_per_subcarrier,exhaustive_se,ratio,configs_evaluated,S,"
           "per_chain_accuracy_supplementary\n";
    out << std::setprecision(17);
    for (const auto &row : rows)
    {
        out << row.predictor << ',';
        if (std::isinf(row.input_snr_db))
            out << "inf";
        else
            out << row.input_snr_db;
        out << ',' << row.accuracy.n << ',' << row.accuracy.accuracy << ',';
        if (row.efficiency)
            out << row.efficiency->mean_se << ',' << row.efficiency->exhaustive_se << ',' << row.efficiency->ratio
                << ',' << row.efficiency->configurations;
        else
            out << ",,,";
        out << ',' << row.samples << ',' << row.accuracy.per_output_accuracy << '\n';
    }
}

} // namespace dbbeam
