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

// Command-line entry point: generate, evaluate, inspect, codebook-export.

#include "dbbeam/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"dbbeam - dual-band channel synthesis and hybrid beam selection"};
    app.require_subcommand(1);

    dbbeam::CommandOptions opts;
    std::string config, dataset, scores, report, out;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    double rho_db = 0.0;

    auto add_config = [&](CLI::App *cmd) { cmd->add_option("--config", config, "Run configuration file"); };
    auto add_seed = [&](CLI::App *cmd) { cmd->add_option("--seed", seed, "Override the configuration seed"); };
    auto add_threads = [&](CLI::App *cmd)
    { cmd->add_option("--threads", threads, "Worker threads (0: all cores)"); };

    auto *generate = app.add_subcommand("generate", "Write one labeled dataset per input SNR");
    add_config(generate);
    add_seed(generate);
    add_threads(generate);
    generate->add_option("--out", out, "Output prefix (overrides output_prefix)");

    auto *evaluate = app.add_subcommand("evaluate", "Best-n accuracy and spectral-efficiency report");
    add_config(evaluate);
    add_seed(evaluate);
    add_threads(evaluate);
    evaluate->add_option("--dataset", dataset, "Labeled dataset file")->required();
    evaluate->add_option("--scores", scores, "Prediction scores file for the file predictor");
    evaluate->add_option("--predictor", opts.predictors, "oracle, random, persistence or file (repeatable)")
        ->check(CLI::IsMember({"oracle", "random", "persistence", "file"}));
    evaluate->add_option("--n", opts.n_list, "Candidate set sizes, e.g. 1,3,5")->delimiter(',');
    evaluate->add_option("--report", report, "CSV report path (default: stdout)");
    evaluate->add_option("--rho-db", rho_db, "SNR for the spectral-efficiency objective in dB");

    auto *inspect = app.add_subcommand("inspect", "Print a dataset header and first label");
    inspect->add_option("--dataset", dataset, "Dataset file")->required();

    auto *codebook = app.add_subcommand("codebook-export", "Write the beam codebook as CSV");
    add_config(codebook);
    codebook->add_option("--out", out, "CSV path (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : dbbeam::exit_code::failure;
    }

    auto set_path = [](std::optional<std::filesystem::path> &dst, const std::string &src)
    {
        if (!src.empty())
            dst = src;
    };
    set_path(opts.config, config);
    set_path(opts.dataset, dataset);
    set_path(opts.scores, scores);
    set_path(opts.report, report);
    set_path(opts.out, out);
    if (app.got_subcommand(generate) || app.got_subcommand(evaluate))
    {
        auto *cmd = app.got_subcommand(generate) ? generate : evaluate;
        if (cmd->count("--seed"))
            opts.seed = seed;
        if (cmd->count("--threads"))
            opts.threads = threads;
    }
    if (evaluate->count("--rho-db"))
        opts.rho_db = rho_db;

    if (app.got_subcommand(generate))
        return dbbeam::cmd_generate(opts, std::cout, std::cerr);
    if (app.got_subcommand(evaluate))
        return dbbeam::cmd_evaluate(opts, std::cout, std::cerr);
    if (app.got_subcommand(inspect))
        return dbbeam::cmd_inspect(opts, std::cout, std::cerr);
    return dbbeam::cmd_codebook_export(opts, std::cout, std::cerr);
}
