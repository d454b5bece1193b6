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
// Seeded, parallel, reproducible Monte-Carlo estimation of outage
// probabilities and capacity statistics. Trials are split into fixed-size
// shards; shard k always consumes the substream derived from
// (seed, indices, k) and shard results merge in shard order, so the output
// is bit-identical for any worker count and any scheduling.

#ifndef DMT_MONTECARLO_HPP
#define DMT_MONTECARLO_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dmt/capacity.hpp"
#include "dmt/channel.hpp"
#include "dmt/outage.hpp"
#include "dmt/snr.hpp"

namespace dmt {

// How the target rate is chosen at each grid SNR: either a fixed rate in
// nats, or one of the multiplexing-gain definitions with the mean-fraction
// mean supplied by the matching asymptotic statistics of the channel.
struct RatePolicy {
    static RatePolicy fixed(double rate_nats);
    static RatePolicy mux(MuxGainDef def, double r);

    bool is_fixed = false;
    double fixed_rate = 0.0;
    MuxGainDef def = MuxGainDef::kMeanFraction;
    double r = 0.0;
};

struct McPlan {
    std::variant<IidChannelSpec, KeyholeChannelSpec> channel{IidChannelSpec(1, 1, FadingFamily::kComplexGaussian)};
    std::vector<Snr> gammas;  // nonempty, strictly increasing
    RatePolicy policy;
    std::int64_t trials = 1000000;
    std::uint64_t seed = 1;
    std::int64_t shard_size = 8192;
};

struct McEstimate {
    Snr gamma = Snr::from_linear(1.0);
    double rate = 0.0;
    double p_hat = 0.0;
    std::int64_t trials = 0;
    double ci_lo = 0.0;  // 95% Wilson score interval
    double ci_hi = 0.0;
    double cap_mean = 0.0;      // capacity statistics from the same trials
    double cap_variance = 0.0;
    std::uint64_t seed = 0;
    bool skipped = false;       // rate definition not applicable at this snr
    std::string skip_reason;
};

// Worker count is a run option, not part of the plan: it can never change
// the results, only the wall-clock time.
struct RunOptions {
    int workers = 1;
};

// Wilson score interval for a binomial proportion. Only the 0.95 level is
// supported; its normal quantile is pinned to z = 1.96 so intervals are
// reproducible constants rather than depending on an inverse-CDF routine.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double level = 0.95);

// Independent trials per grid point. Each (grid point, shard) pair has its
// own substream. Rate-definition domain errors mark the point skipped
// instead of failing the sweep.
std::vector<McEstimate> run_plan(const McPlan &plan, const RunOptions &options = {});

// Same estimator but with the channel realizations shared across the whole
// SNR grid (substream depends on the shard only). Per realization the
// capacity is monotone in SNR, which removes sampling noise from
// monotonicity comparisons and yields smooth curves.
std::vector<McEstimate> common_random_sweep(const McPlan &plan, const RunOptions &options = {});

} // namespace dmt

#endif
