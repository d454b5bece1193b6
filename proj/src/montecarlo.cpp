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

#include "dmt/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dmt/asymptotic.hpp"

namespace dmt {

namespace {

// Substream domain separators; changing them invalidates recorded runs.
constexpr std::uint64_t kRunPlanTag = 1;
constexpr std::uint64_t kCommonTag = 2;

void validate_plan(const McPlan &plan)
{
    if (plan.trials < 1)
        throw std::invalid_argument("McPlan: trials must be >= 1");
    if (plan.shard_size < 1)
        throw std::invalid_argument("McPlan: shard size must be >= 1");
    if (plan.gammas.empty())
        throw std::invalid_argument("McPlan: snr grid must be nonempty");
    for (std::size_t i = 1; i < plan.gammas.size(); ++i)
        if (!(plan.gammas[i].linear() > plan.gammas[i - 1].linear()))
            throw std::invalid_argument("McPlan: snr grid must be strictly increasing");
    if (plan.policy.is_fixed && (!std::isfinite(plan.policy.fixed_rate) || plan.policy.fixed_rate < 0.0))
        throw std::invalid_argument("McPlan: fixed rate must be finite and >= 0");
}

// Target rate at one grid point. Domain errors (snr below the definition's
// domain) are the caller's signal to skip the point; invalid_argument
// means the plan itself is broken and propagates.
double plan_rate(const McPlan &plan, const Snr &gamma)
{
    if (plan.policy.is_fixed)
        return plan.policy.fixed_rate;

    if (const auto *iid = std::get_if<IidChannelSpec>(&plan.channel))
    {
        const CapacityStats stats = theorem1_stats(gamma, iid->n, iid->beta());
        return rate_from_mux(plan.policy.def, plan.policy.r, gamma, stats, std::min(iid->m, iid->n));
    }
    const auto &keyhole = std::get<KeyholeChannelSpec>(plan.channel);
    const CapacityStats stats = keyhole_stats(gamma, keyhole);
    // Keyhole multiplexing gain is normalized to [0, 1]: full rate is the
    // whole mean capacity, so the mean-fraction divisor is 1.
    return rate_from_mux(plan.policy.def, plan.policy.r, gamma, stats, 1);
}

// One realization, reusable across the snr grid. For the i.i.d. ensemble
// the Gram eigenvalues are snr-independent, so a draw eigendecomposes once
// and capacity at any snr is a sum of log1p terms. The keyhole realization
// reduces to a single gain because the channel has rank 1.
class TrialKernel {
  public:
    explicit TrialKernel(const std::variant<IidChannelSpec, KeyholeChannelSpec> &channel)
        : iid_(std::get_if<IidChannelSpec>(&channel)),
          keyhole_(std::get_if<KeyholeChannelSpec>(&channel))
    {
        m_ = iid_ ? iid_->m : keyhole_->m;
    }

    void draw(RngStream &stream)
    {
        if (iid_)
        {
            const ChannelMatrix h = sample_iid(*iid_, stream);
            if (h.rows() <= h.cols())
                solver_.compute(h * h.adjoint(), Eigen::EigenvaluesOnly);
            else
                solver_.compute(h.adjoint() * h, Eigen::EigenvaluesOnly);
            eigs_ = solver_.eigenvalues();
        }
        else
        {
            // Rank-1 realization: the only nonzero Gram eigenvalue equals
            // the squared Frobenius norm of the outer product.
            keyhole_gain_ = sample_keyhole(*keyhole_, stream).squaredNorm();
        }
    }

    double capacity(double gamma_linear) const
    {
        const double scale = gamma_linear / m_;
        if (!iid_)
            return std::log1p(scale * keyhole_gain_);
        double c = 0.0;
        for (Eigen::Index i = 0; i < eigs_.size(); ++i)
            c += std::log1p(scale * std::max(eigs_(i), 0.0));
        return c;
    }

  private:
    const IidChannelSpec *iid_;
    const KeyholeChannelSpec *keyhole_;
    int m_ = 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver_;
    Eigen::VectorXd eigs_;
    double keyhole_gain_ = 0.0;
};

struct ShardTally {
    std::vector<std::int64_t> outage;
    std::vector<CapacityAccumulator> stats;
};

void for_each_shard(int workers, std::int64_t shard_count, const std::function<void(std::int64_t)> &body)
{
    if (workers <= 1 || shard_count <= 1)
    {
        for (std::int64_t k = 0; k < shard_count; ++k)
            body(k);
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const int thread_count = static_cast<int>(std::min<std::int64_t>(workers, shard_count));
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int t = 0; t < thread_count; ++t)
        pool.emplace_back([&]() {
            for (;;)
            {
                const std::int64_t k = next.fetch_add(1);
                if (k >= shard_count)
                    return;
                try
                {
                    body(k);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

McEstimate skipped_estimate(const Snr &gamma, const McPlan &plan, std::string reason)
{
    McEstimate est;
    est.gamma = gamma;
    est.trials = 0;  // nothing ran; echoing the planned count would be a lie
    est.seed = plan.seed;
    est.skipped = true;
    est.skip_reason = std::move(reason);
    return est;
}

McEstimate assemble_estimate(const Snr &gamma, double rate, const McPlan &plan,
                             std::int64_t outage_count, const CapacityAccumulator &acc)
{
    McEstimate est;
    est.gamma = gamma;
    est.rate = rate;
    est.trials = plan.trials;
    est.seed = plan.seed;
    est.p_hat = static_cast<double>(outage_count) / static_cast<double>(plan.trials);
    const auto ci = wilson_interval(outage_count, plan.trials);
    est.ci_lo = ci.first;
    est.ci_hi = ci.second;
    est.cap_mean = acc.mean();
    est.cap_variance = acc.variance();
    return est;
}

} // namespace

RatePolicy RatePolicy::fixed(double rate_nats)
{
    RatePolicy policy;
    policy.is_fixed = true;
    policy.fixed_rate = rate_nats;
    return policy;
}

RatePolicy RatePolicy::mux(MuxGainDef def, double r)
{
    RatePolicy policy;
    policy.is_fixed = false;
    policy.def = def;
    policy.r = r;
    return policy;
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials, double level)
{
    if (trials < 1)
        throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_interval: successes must lie in [0, trials]");
    if (level != 0.95)
        throw std::invalid_argument("wilson_interval: only the 0.95 level (z = 1.96) is supported");

    constexpr double z = 1.96;
    const double nn = static_cast<double>(trials);
    const double p_hat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p_hat + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn)) / denom;

    // The formula hits the boundary exactly at 0 and trials; make that
    // exact in floating point too, then clamp the interior.
    double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

std::vector<McEstimate> run_plan(const McPlan &plan, const RunOptions &options)
{
    validate_plan(plan);

    const std::int64_t shard_count = (plan.trials + plan.shard_size - 1) / plan.shard_size;
    std::vector<McEstimate> estimates;
    estimates.reserve(plan.gammas.size());

    for (std::size_t gi = 0; gi < plan.gammas.size(); ++gi)
    {
        const Snr gamma = plan.gammas[gi];
        double rate = 0.0;
        try
        {
            rate = plan_rate(plan, gamma);
        }
        catch (const std::domain_error &err)
        {
            estimates.push_back(skipped_estimate(gamma, plan, err.what()));
            continue;
        }

        std::vector<ShardTally> tallies(shard_count);
        for_each_shard(options.workers, shard_count, [&](std::int64_t k) {
            const std::int64_t first = k * plan.shard_size;
            const std::int64_t count = std::min(plan.shard_size, plan.trials - first);
            RngStream stream(derive_stream_key(plan.seed, {kRunPlanTag, static_cast<std::uint64_t>(gi), static_cast<std::uint64_t>(k)}));
            TrialKernel kernel(plan.channel);
            ShardTally tally;
            tally.outage.assign(1, 0);
            tally.stats.assign(1, CapacityAccumulator());
            for (std::int64_t t = 0; t < count; ++t)
            {
                kernel.draw(stream);
                const double c = kernel.capacity(gamma.linear());
                tally.stats[0].add(c);
                if (c < rate)
                    ++tally.outage[0];
            }
            tallies[k] = std::move(tally);
        });

        std::int64_t outage_count = 0;
        CapacityAccumulator merged;
        for (const auto &tally : tallies)
        {
            outage_count += tally.outage[0];
            merged.merge(tally.stats[0]);
        }
        estimates.push_back(assemble_estimate(gamma, rate, plan, outage_count, merged));
    }
    return estimates;
}

std::vector<McEstimate> common_random_sweep(const McPlan &plan, const RunOptions &options)
{
    validate_plan(plan);

    const std::size_t grid = plan.gammas.size();
    std::vector<double> rates(grid, 0.0);
    std::vector<bool> valid(grid, false);
    std::vector<std::string> skip_reasons(grid);
    for (std::size_t gi = 0; gi < grid; ++gi)
    {
        try
        {
            rates[gi] = plan_rate(plan, plan.gammas[gi]);
            valid[gi] = true;
        }
        catch (const std::domain_error &err)
        {
            skip_reasons[gi] = err.what();
        }
    }

    const std::int64_t shard_count = (plan.trials + plan.shard_size - 1) / plan.shard_size;
    std::vector<ShardTally> tallies(shard_count);
    for_each_shard(options.workers, shard_count, [&](std::int64_t k) {
        const std::int64_t first = k * plan.shard_size;
        const std::int64_t count = std::min(plan.shard_size, plan.trials - first);
        RngStream stream(derive_stream_key(plan.seed, {kCommonTag, static_cast<std::uint64_t>(k)}));
        TrialKernel kernel(plan.channel);
        ShardTally tally;
        tally.outage.assign(grid, 0);
        tally.stats.assign(grid, CapacityAccumulator());
        for (std::int64_t t = 0; t < count; ++t)
        {
            kernel.draw(stream);
            for (std::size_t gi = 0; gi < grid; ++gi)
            {
                if (!valid[gi])
                    continue;
                const double c = kernel.capacity(plan.gammas[gi].linear());
                tally.stats[gi].add(c);
                if (c < rates[gi])
                    ++tally.outage[gi];
            }
        }
        tallies[k] = std::move(tally);
    });

    std::vector<McEstimate> estimates;
    estimates.reserve(grid);
    for (std::size_t gi = 0; gi < grid; ++gi)
    {
        if (!valid[gi])
        {
            estimates.push_back(skipped_estimate(plan.gammas[gi], plan, skip_reasons[gi]));
            continue;
        }
        std::int64_t outage_count = 0;
        CapacityAccumulator merged;
        for (const auto &tally : tallies)
        {
            outage_count += tally.outage[gi];
            merged.merge(tally.stats[gi]);
        }
        estimates.push_back(assemble_estimate(plan.gammas[gi], rates[gi], plan, outage_count, merged));
    }
    return estimates;
}

} // namespace dmt
