// SPDX-License-Identifier: Apache-2.0
//
// dmtkit  MIMO outage and finite-SNR diversity-multiplexing analysis toolkit
// Copyright (C) 2026 the dmtkit authors
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
//
// Command-line front end. Three subcommands:
//   sweep       evaluate one scenario over an SNR grid, write CSV/JSON
//   thresholds  convergence thresholds of the closed-form d' per definition
//   reproduce   named end-to-end scenarios (fig1 fig2 fig3 fig4 ex1 ex2)
// Exit codes: 0 success, 1 usage or configuration error, 2 when domain
// rules rejected every grid point so no output value could be computed.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "dmt/sweep.hpp"
#include "dmt/version.hpp"

namespace {

struct SweepArgs {
    std::string channel = "iid";
    int m = 2;
    int n = 2;
    std::string family = "complex-gaussian";
    double rho_tx = 0.0;
    double rho_rx = 0.0;
    double start_db = 0.0;
    double stop_db = 30.0;
    double step_db = 1.0;
    std::string def = "mean-fraction";
    double r = 1.0;
    std::optional<double> fixed_rate;
    bool analytic = true;
    bool bound = true;
    bool closed_dprime = true;
    bool numeric_dprime = true;
    bool mc = true;
    bool thresholds = false;
    std::int64_t trials = 1000000;
    std::uint64_t seed = 1;
    std::int64_t shard_size = 8192;
    int workers = 0;
    std::string csv_path;
    std::string json_path;
};

int default_workers()
{
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

dmt::ScenarioConfig to_scenario(const SweepArgs &args)
{
    dmt::ScenarioConfig config;
    config.channel.kind = args.channel == "keyhole" ? dmt::ChannelConfig::Kind::kKeyhole
                                                    : dmt::ChannelConfig::Kind::kIid;
    config.channel.m = args.m;
    config.channel.n = args.n;
    config.channel.family = args.family == "on-off-uniform-phase" ? dmt::FadingFamily::kOnOffUniformPhase
                                                                  : dmt::FadingFamily::kComplexGaussian;
    config.channel.rho_tx = args.rho_tx;
    config.channel.rho_rx = args.rho_rx;
    config.grid.start_db = args.start_db;
    config.grid.stop_db = args.stop_db;
    config.grid.step_db = args.step_db;
    config.policy = args.fixed_rate ? dmt::RatePolicy::fixed(*args.fixed_rate)
                                    : dmt::RatePolicy::mux(dmt::mux_def_from_string(args.def), args.r);
    config.outputs.analytic = args.analytic;
    config.outputs.bound = args.bound;
    config.outputs.closed_dprime = args.closed_dprime;
    config.outputs.numeric_dprime = args.numeric_dprime;
    config.outputs.mc = args.mc;
    config.outputs.thresholds = args.thresholds;
    config.trials = args.trials;
    config.seed = args.seed;
    config.shard_size = args.shard_size;
    config.workers = args.workers > 0 ? args.workers : default_workers();
    return config;
}

bool row_has_requested_value(const dmt::CurveRecord &row, const dmt::OutputSelect &outputs)
{
    if (outputs.analytic && row.p_out_analytic.is_value())
        return true;
    if (outputs.bound && row.p_out_bound.is_value())
        return true;
    if (outputs.numeric_dprime && row.dprime_numeric.is_value())
        return true;
    if (outputs.closed_dprime && row.dprime_closed.is_value())
        return true;
    if (outputs.mc && row.mc_p_hat.is_value())
        return true;
    return false;
}

int run_sweep(const SweepArgs &args)
{
    if (args.csv_path.empty() && args.json_path.empty())
        throw std::invalid_argument("sweep: at least one of --csv or --json is required");

    const dmt::ScenarioConfig config = to_scenario(args);
    const auto rows = dmt::build_curve(config);

    if (args.thresholds)
    {
        if (args.channel == "iid" && args.m == args.n && !args.fixed_rate)
            std::fputs(dmt::thresholds_to_text(dmt::threshold_table(args.n, args.r)).c_str(), stdout);
        else
            std::fputs("thresholds: defined for the square i.i.d. channel under a multiplexing-gain rate policy only; table skipped.\n", stderr);
    }

    if (!args.csv_path.empty())
        dmt::write_text_artifact(args.csv_path, dmt::curve_to_csv(rows));
    if (!args.json_path.empty())
        dmt::write_text_artifact(args.json_path, dmt::curve_to_json(rows, config).dump(2) + "\n");

    bool any_alive = false;
    for (const auto &row : rows)
        any_alive = any_alive || row_has_requested_value(row, config.outputs);
    if (!any_alive && !config.outputs.thresholds)
    {
        std::fprintf(stderr, "sweep: domain rules rejected all %zu grid points; no value was computed (see the tags column).\n",
                     rows.size());
        return 2;
    }

    const bool quiet = args.csv_path == "-" || args.json_path == "-";
    if (!quiet)
    {
        if (!args.csv_path.empty())
            std::fprintf(stdout, "wrote %zu rows to %s\n", rows.size(), dmt::resolve_output_path(args.csv_path).c_str());
        if (!args.json_path.empty())
            std::fprintf(stdout, "wrote %zu rows to %s\n", rows.size(), dmt::resolve_output_path(args.json_path).c_str());
    }
    return 0;
}

int run_thresholds(int n, double r, const std::string &def_filter, bool as_json)
{
    if (r < 0.0 || r >= n)
        throw std::invalid_argument("thresholds: require 0 <= r < n");

    auto rows = dmt::threshold_table(n, r);
    if (!def_filter.empty())
    {
        const dmt::MuxGainDef def = dmt::mux_def_from_string(def_filter);
        std::erase_if(rows, [def](const dmt::ThresholdRow &row) { return row.def != def; });
    }
    if (as_json)
        std::fputs((dmt::thresholds_to_json(rows).dump(2) + "\n").c_str(), stdout);
    else
        std::fputs(dmt::thresholds_to_text(rows).c_str(), stdout);
    return 0;
}

int run_reproduce(const std::string &target, std::int64_t trials, std::uint64_t seed, int workers,
                  const std::string &outdir)
{
    const auto result = dmt::run_reproduction(target, trials, seed, workers > 0 ? workers : default_workers());
    for (const auto &[name, text] : result.artifacts)
    {
        const std::string path = outdir.empty() ? name : (std::filesystem::path(outdir) / name).string();
        dmt::write_text_artifact(path, text);
        std::fprintf(stdout, "wrote %s\n", dmt::resolve_output_path(path).c_str());
    }
    std::fputs(result.summary.c_str(), stdout);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"dmtkit: finite-SNR diversity, multiplexing and outage analysis for MIMO channels"};
    app.set_version_flag("--version", std::string("dmtkit ") + dmt::kVersion);
    app.require_subcommand(1);
    // Flat key/value file with one [section] per subcommand, e.g. [sweep];
    // command-line flags override file values.
    app.set_config("--config", "", "INI configuration file ([sweep] section holds sweep keys)");

    int rc = 0;

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Evaluate one scenario over an SNR grid and write curve files");
    sweep->configurable();
    sweep->add_option("--channel", sweep_args.channel, "Channel ensemble")
        ->check(CLI::IsMember({"iid", "keyhole"}))
        ->capture_default_str();
    sweep->add_option("--m", sweep_args.m, "Transmit antennas")->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--n", sweep_args.n, "Receive antennas")->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--family", sweep_args.family, "Per-entry fading family (iid channel)")
        ->check(CLI::IsMember({"complex-gaussian", "on-off-uniform-phase"}))
        ->capture_default_str();
    sweep->add_option("--rho-tx", sweep_args.rho_tx, "Transmit-side exponential correlation (keyhole channel)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sweep->add_option("--rho-rx", sweep_args.rho_rx, "Receive-side exponential correlation (keyhole channel)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sweep->add_option("--start-db", sweep_args.start_db, "First grid SNR in dB")->capture_default_str();
    sweep->add_option("--stop-db", sweep_args.stop_db, "Last grid SNR in dB")->capture_default_str();
    sweep->add_option("--step-db", sweep_args.step_db, "Grid step in dB")->capture_default_str();
    auto *def_opt = sweep->add_option("--def", sweep_args.def, "Multiplexing-gain definition")
                        ->check(CLI::IsMember({"log-snr", "log-snr-offset", "mean-fraction"}))
                        ->capture_default_str();
    auto *r_opt = sweep->add_option("--r", sweep_args.r, "Multiplexing gain")
                      ->check(CLI::NonNegativeNumber)
                      ->capture_default_str();
    sweep->add_option("--fixed-rate", sweep_args.fixed_rate, "Fixed target rate in nats (replaces --def/--r)")
        ->excludes(def_opt)
        ->excludes(r_opt);
    sweep->add_flag("--analytic,!--no-analytic", sweep_args.analytic, "Analytic outage column")->capture_default_str();
    sweep->add_flag("--bound,!--no-bound", sweep_args.bound, "Exponential outage bound column")->capture_default_str();
    sweep->add_flag("--closed-dprime,!--no-closed-dprime", sweep_args.closed_dprime, "Closed-form d' column")
        ->capture_default_str();
    sweep->add_flag("--numeric-dprime,!--no-numeric-dprime", sweep_args.numeric_dprime, "Numeric d' column")
        ->capture_default_str();
    sweep->add_flag("--mc,!--no-mc", sweep_args.mc, "Monte-Carlo overlay columns")->capture_default_str();
    sweep->add_flag("--thresholds", sweep_args.thresholds, "Also print the convergence-threshold table");
    sweep->add_option("--trials", sweep_args.trials, "Monte-Carlo trials per sweep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "Monte-Carlo seed")->capture_default_str();
    sweep->add_option("--shard-size", sweep_args.shard_size, "Trials per deterministic shard")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--workers", sweep_args.workers, "Worker threads (0 = all cores); never changes results")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sweep->add_option("--csv", sweep_args.csv_path, "CSV output path ('-' for stdout)");
    sweep->add_option("--json", sweep_args.json_path, "JSON output path ('-' for stdout)");
    sweep->callback([&]() { rc = run_sweep(sweep_args); });

    int thr_n = 2;
    double thr_r = 1.0;
    std::string thr_def;
    bool thr_json = false;
    auto *thresholds = app.add_subcommand("thresholds", "Convergence thresholds of the closed-form d' (square i.i.d. channel)");
    thresholds->add_option("--n", thr_n, "Antennas per side")->check(CLI::PositiveNumber)->capture_default_str();
    thresholds->add_option("--r", thr_r, "Multiplexing gain, 0 <= r < n")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    thresholds->add_option("--def", thr_def, "Restrict to one definition")
        ->check(CLI::IsMember({"log-snr", "log-snr-offset", "mean-fraction"}));
    thresholds->add_flag("--json", thr_json, "Machine-readable output");
    thresholds->callback([&]() { rc = run_thresholds(thr_n, thr_r, thr_def, thr_json); });

    std::string rep_target;
    std::int64_t rep_trials = 0;
    std::uint64_t rep_seed = 1;
    int rep_workers = 0;
    std::string rep_outdir;
    auto *reproduce = app.add_subcommand("reproduce", "Run a named end-to-end scenario");
    reproduce->add_option("target", rep_target, "One of: fig1 fig2 fig3 fig4 ex1 ex2")->required();
    reproduce->add_option("--trials", rep_trials, "Monte-Carlo trials (0 = target default)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    reproduce->add_option("--seed", rep_seed, "Monte-Carlo seed")->capture_default_str();
    reproduce->add_option("--workers", rep_workers, "Worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    reproduce->add_option("--output-dir", rep_outdir, "Directory for artifacts (default: current directory)");
    reproduce->callback([&]() { rc = run_reproduce(rep_target, rep_trials, rep_seed, rep_workers, rep_outdir); });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }
    catch (const std::invalid_argument &e)
    {
        std::fprintf(stderr, "dmtkit: %s\n", e.what());
        return 1;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "dmtkit: %s\n", e.what());
        return 1;
    }
    return rc;
}
