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
// Experiment layer: declarative sweep scenarios evaluated into fixed-schema
// curve records, CSV and JSON emission with explicit sentinels, threshold
// tables, and the named reproduction scenarios used by the CLI.

#ifndef DMT_SWEEP_HPP
#define DMT_SWEEP_HPP

#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dmt/channel.hpp"
#include "dmt/montecarlo.hpp"
#include "dmt/outage.hpp"
#include "dmt/snr.hpp"
#include "dmt/tradeoff.hpp"

namespace dmt {

// One cell of a curve record. Cells are never empty: a cell either holds a
// number, was not requested or not applicable ("na"), or was requested but
// rejected by a domain rule ("invalid").
struct Cell {
    enum class Kind {
        kValue,
        kNa,
        kInvalid,
    };

    static Cell na() { return Cell{Kind::kNa, 0.0}; }
    static Cell invalid() { return Cell{Kind::kInvalid, 0.0}; }
    static Cell of(double v) { return Cell{Kind::kValue, v}; }

    bool is_value() const { return kind == Kind::kValue; }

    bool operator==(const Cell &other) const
    {
        if (kind != other.kind)
            return false;
        // Bitwise comparison so round-trip checks treat -0.0 and 0.0, and
        // any NaN payloads, exactly.
        return kind != Kind::kValue || std::memcmp(&value, &other.value, sizeof value) == 0;
    }

    Kind kind = Kind::kNa;
    double value = 0.0;
};

// One row per grid SNR. Column order is fixed; see curve_columns().
struct CurveRecord {
    double gamma_db = 0.0;
    double gamma_linear = 1.0;
    Cell rate_nats;
    Cell p_out_analytic;
    Cell p_out_bound;
    Cell mc_p_hat;
    Cell mc_ci_lo;
    Cell mc_ci_hi;
    Cell d_ratio;
    Cell dprime_numeric;
    Cell dprime_closed;
    std::string tags = "ok";

    bool operator==(const CurveRecord &other) const;
};

// The fixed, versioned column schema (matches "# schema=1").
const std::vector<std::string> &curve_columns();

struct GammaGrid {
    double start_db = 0.0;
    double stop_db = 30.0;
    double step_db = 1.0;

    // start, start + step, ... while <= stop (small tolerance on the top
    // end so 0..30 step 1 has exactly 31 points).
    std::vector<Snr> points() const;
};

// Declarative channel description, kept flat so a run's configuration can
// be echoed into output metadata and replayed bit-identically.
struct ChannelConfig {
    enum class Kind {
        kIid,
        kKeyhole,
    };

    Kind kind = Kind::kIid;
    int m = 2;
    int n = 2;
    FadingFamily family = FadingFamily::kComplexGaussian;  // i.i.d. only
    double rho_tx = 0.0;  // keyhole only, exponential correlation model
    double rho_rx = 0.0;

    std::variant<IidChannelSpec, KeyholeChannelSpec> build() const;
};

// Which columns a sweep computes. At least one must be requested.
struct OutputSelect {
    bool analytic = true;
    bool bound = true;
    bool closed_dprime = true;
    bool numeric_dprime = true;
    bool mc = true;
    bool thresholds = false;  // extra table printed by the CLI, not a column

    bool any() const { return analytic || bound || closed_dprime || numeric_dprime || mc || thresholds; }
};

struct ScenarioConfig {
    ChannelConfig channel;
    GammaGrid grid;
    RatePolicy policy = RatePolicy::mux(MuxGainDef::kMeanFraction, 1.0);
    OutputSelect outputs;
    std::int64_t trials = 1000000;
    std::uint64_t seed = 1;
    std::int64_t shard_size = 8192;
    int workers = 1;
};

// Evaluates one scenario into curve records. Per-point domain errors
// become sentinel cells with a tag naming the rule; they never abort the
// sweep. Throws std::invalid_argument only for a broken configuration.
std::vector<CurveRecord> build_curve(const ScenarioConfig &config);

// CSV with a "# schema=1" comment line, a header row, %.17g numbers (they
// parse back bit-identically) and RFC-4180 quoting. parse is the exact
// inverse: parse_curve_csv(curve_to_csv(rows)) == rows.
std::string curve_to_csv(const std::vector<CurveRecord> &rows);
std::vector<CurveRecord> parse_curve_csv(const std::string &text);

// JSON document with the same rows plus enough metadata (seed, trials,
// tool version, config echo) to rerun the job bit-identically.
nlohmann::json curve_to_json(const std::vector<CurveRecord> &rows, const ScenarioConfig &config);
nlohmann::json config_to_json(const ScenarioConfig &config);

// Writes text to a file atomically (temp file in the same directory, then
// rename). "-" writes to standard output. A relative path is resolved
// against the DMTKIT_OUTPUT_DIR environment variable when that is set.
std::string resolve_output_path(const std::string &path);
void write_text_artifact(const std::string &path, const std::string &text);

// Convergence thresholds of the closed-form differential diversity for a
// square i.i.d. channel, one row per rate definition, with the previously
// reported figure alongside where one exists.
struct ThresholdRow {
    MuxGainDef def;
    int n;
    double r;
    double gamma_linear;
    double gamma_db;
    std::optional<double> reported_db;
};

std::vector<ThresholdRow> threshold_table(int n, double r);
std::string thresholds_to_text(const std::vector<ThresholdRow> &rows);
nlohmann::json thresholds_to_json(const std::vector<ThresholdRow> &rows);

// Named end-to-end reproduction scenarios. Each produces one or more
// artifacts (file name, file content) and a human-readable summary.
struct ReproduceResult {
    std::string name;
    std::vector<std::pair<std::string, std::string>> artifacts;
    std::string summary;
};

const std::vector<std::string> &reproduction_names();

// trials <= 0 selects the target's default budget.
ReproduceResult run_reproduction(const std::string &name, std::int64_t trials, std::uint64_t seed, int workers);

} // namespace dmt

#endif
