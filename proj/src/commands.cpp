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

#include "dbbeam/commands.hpp"

#include "dbbeam/codebook.hpp"
#include "dbbeam/dataset.hpp"
#include "dbbeam/errors.hpp"
#include "dbbeam/predict_eval.hpp"
#include "dbbeam/run_config.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dbbeam
{

namespace
{
// Signals a missing-labels condition distinctly from other bad arguments.
class MissingLabels : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

template <typename Fn>
int guarded(std::ostream &err, Fn &&fn)
{
    try
    {
        return fn();
    }
    catch (const ConfigError &e)
    {
        err << "error=config\nmessage=" << e.what() << '\n';
        if (!e.key().empty())
            err << "key=" << e.key() << '\n';
        if (e.line() != 0)
            err << "line=" << e.line() << '\n';
        return exit_code::config;
    }
    catch (const IoError &e)
    {
        err << "error=io\nmessage=" << e.what() << '\n';
        return exit_code::io;
    }
    catch (const MissingLabels &e)
    {
        err << "error=missing_labels\nmessage=" << e.what() << '\n';
        return exit_code::missing_labels;
    }
    catch (const AlignmentError &e)
    {
        err << "error=misaligned\nmessage=" << e.what() << '\n';
        return exit_code::misaligned;
    }
    catch (const FormatError &e)
    {
        err << "error=format\nmessage=" << e.what() << "\noffset=" << e.offset() << '\n';
        if (e.sample_index())
            err << "sample=" << *e.sample_index() << '\n';
        return exit_code::format;
    }
    catch (const std::exception &e)
    {
        err << "error=failure\nmessage=" << e.what() << '\n';
        return exit_code::failure;
    }
}

RunConfig load_config(const CommandOptions &opts)
{
    RunConfig cfg = opts.config ? load_run_config(*opts.config) : RunConfig{};
    if (opts.seed)
        cfg.scenario.seed = *opts.seed;
    if (opts.threads)
        cfg.threads = *opts.threads;
    if (!opts.n_list.empty())
        cfg.n_list = opts.n_list;
    cfg.validate();
    return cfg;
}

std::string snr_text(double snr_db)
{
    if (std::isinf(snr_db))
        return "inf";
    std::ostringstream s;
    s << snr_db;
    return s.str();
}

std::ofstream open_output(const std::filesystem::path &path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + path.string() + " for writing");
    return f;
}

void finish_output(std::ofstream &f, const std::filesystem::path &path)
{
    f.close();
    if (!f)
        throw IoError("failed to write " + path.string());
}
} // namespace

std::filesystem::path dataset_path_for(const std::string &prefix, double input_snr_db)
{
    return prefix + "_snr" + snr_text(input_snr_db) + ".dbbp";
}

int cmd_generate(const CommandOptions &opts, std::ostream &out, std::ostream &err)
{
    return guarded(err,
                   [&]
                   {
                       const RunConfig cfg = load_config(opts);
                       const std::string prefix = opts.out ? opts.out->string() : cfg.output_prefix;

                       GenerationOptions gen;
                       gen.samples_per_trajectory = cfg.samples_per_trajectory;
                       gen.label_snr_db = cfg.label_snr_db;
                       gen.threads = cfg.threads;

                       GenerationStats stats;
                       const auto start = std::chrono::steady_clock::now();
                       const auto datasets =
                           generate_datasets(cfg.scenario, cfg.sample_count, cfg.input_snr_db, gen, &stats);
                       const double wall =
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

                       for (const auto &d : datasets)
                       {
                           const auto path = dataset_path_for(prefix, d.header.input_snr_db());
                           write_dataset(d, path);
                           out << "file=" << path.string() << " sample_count=" << d.size()
                               << " input_snr_db=" << snr_text(d.header.input_snr_db())
                               << " label_seconds=" << stats.label_seconds << '\n';
                       }
                       out << "generation_seconds=" << wall << '\n';
                       return exit_code::ok;
                   });
}

int cmd_evaluate(const CommandOptions &opts, std::ostream &out, std::ostream &err)
{
    return guarded(err,
                   [&]
                   {
                       if (!opts.dataset)
                           throw std::invalid_argument("evaluate needs --dataset");
                       const RunConfig cfg = load_config(opts);
                       const Dataset d = read_dataset(*opts.dataset);
                       if (!d.header.has_labels())
                           throw MissingLabels("dataset " + opts.dataset->string() + " carries no labels");

                       // Built-in defaults larger than the dataset's codebook are dropped.
                       std::vector<std::size_t> n_list = cfg.n_list;
                       if (!opts.config && opts.n_list.empty())
                           std::erase_if(n_list, [&](std::size_t n) { return n > d.header.codebook_size; });

                       std::vector<std::string> kinds = opts.predictors;
                       if (kinds.empty())
                           kinds.push_back(opts.scores ? "file" : "oracle");

                       std::optional<ScoresFile> scores;
                       if (opts.scores)
                           scores = read_scores(*opts.scores);

                       // Spectral efficiency needs the codebook geometry, which only the
                       // configuration file describes.
                       const bool with_se = opts.config.has_value();
                       if (with_se)
                           check_compatible(cfg.scenario, d.header);
                       const double rho = db_to_linear(opts.rho_db.value_or(cfg.evaluation_snr_db));

                       std::vector<ReportRow> rows;
                       for (const auto &kind : kinds)
                       {
                           const auto predictor = make_predictor(kind, cfg.scenario.seed, scores);
                           if (kind == "persistence" && d.header.samples_per_trajectory() < 2)
                           {
                               err << "skipped=persistence reason=samples_are_not_trajectory_linked\n";
                               continue;
                           }
                           const AccuracyReport acc = best_n_accuracy(d, *predictor, n_list, cfg.threads);
                           std::vector<EfficiencyRow> se;
                           if (with_se)
                               se = spectral_efficiency_report(d, cfg.scenario, *predictor, n_list, rho,
                                                               cfg.threads);
                           for (std::size_t j = 0; j < acc.rows.size(); ++j)
                           {
                               ReportRow row;
                               row.predictor = acc.predictor;
                               row.input_snr_db = acc.input_snr_db;
                               row.accuracy = acc.rows[j];
                               if (with_se)
                                   row.efficiency = se[j];
                               row.samples = acc.samples;
                               rows.push_back(row);
                           }
                       }

                       if (opts.report)
                       {
                           auto f = open_output(*opts.report);
                           write_report_csv(rows, f);
                           finish_output(f, *opts.report);
                           out << "report=" << opts.report->string() << '\n';
                       }
                       else
                       {
                           write_report_csv(rows, out);
                       }
                       if (opts.report)
                           for (const auto &row : rows)
                           {
                               out << "predictor=" << row.predictor << " n=" << row.accuracy.n
                                   << " A_best_n=" << row.accuracy.accuracy;
                               if (row.efficiency)
                                   out << " ratio=" << row.efficiency->ratio;
                               out << '\n';
                           }
                       return exit_code::ok;
                   });
}

int cmd_inspect(const CommandOptions &opts, std::ostream &out, std::ostream &err)
{
    return guarded(err,
                   [&]
                   {
                       if (!opts.dataset)
                           throw std::invalid_argument("inspect needs --dataset");
                       const Dataset d = read_dataset(*opts.dataset);
                       const DatasetHeader &h = d.header;
                       out << "magic=DBBP\n"
                           << "version=" << h.version << '\n'
                           << "flags=" << h.flags << '\n'
                           << "has_labels=" << h.has_labels() << '\n'
                           << "has_locations=" << h.has_locations() << '\n'
                           << "has_mmwave=" << h.has_mmwave() << '\n'
                           << "samples_per_trajectory=" << h.samples_per_trajectory() << '\n'
                           << "sequence_length=" << h.sequence_length << '\n'
                           << "sub6_subcarriers=" << h.sub6_subcarriers << '\n'
                           << "mmwave_subcarriers=" << h.mmwave_subcarriers << '\n'
                           << "bs_sub6_elements=" << h.bs_sub6_elements << '\n'
                           << "bs_mmwave_elements=" << h.bs_mmwave_elements << '\n'
                           << "ue_mmwave_elements=" << h.ue_mmwave_elements << '\n'
                           << "rf_chains=" << h.rf_chains << '\n'
                           << "codebook_size=" << h.codebook_size << '\n'
                           << "sample_count=" << h.sample_count << '\n'
                           << "input_snr_db=" << snr_text(h.input_snr_db()) << '\n';
                       if (!d.samples.empty() && d.samples.front().label)
                       {
                           const Label &l = *d.samples.front().label;
                           auto list = [&](const std::vector<std::size_t> &v)
                           {
                               for (std::size_t i = 0; i < v.size(); ++i)
                                   out << (i ? "," : "") << v[i];
                           };
                           out << "first_label_plus45=";
                           list(l.selection.plus45);
                           out << "\nfirst_label_minus45=";
                           list(l.selection.minus45);
                           out << "\nfirst_label_mi=" << l.optimal_mi << '\n';
                       }
                       return exit_code::ok;
                   });
}

int cmd_codebook_export(const CommandOptions &opts, std::ostream &out, std::ostream &err)
{
    return guarded(err,
                   [&]
                   {
                       const RunConfig cfg = load_config(opts);
                       const Codebook cb = build_codebook(cfg.scenario);
                       if (opts.out)
                       {
                           auto f = open_output(*opts.out);
                           write_codebook_csv(cb, f);
                           finish_output(f, *opts.out);
                           out << "file=" << opts.out->string() << " codewords=" << cb.size()
                               << " length=" << cb.length() << '\n';
                       }
                       else
                       {
                           write_codebook_csv(cb, out);
                       }
                       return exit_code::ok;
                   });
}

} // namespace dbbeam
