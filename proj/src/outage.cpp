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

#include "dmt/outage.hpp"

#include <cmath>
#include <numbers>

namespace dmt {

std::string to_string(MuxGainDef def)
{
    switch (def)
    {
    case MuxGainDef::kLogSnr:
        return "log-snr";
    case MuxGainDef::kLogSnrOffset:
        return "log-snr-offset";
    case MuxGainDef::kMeanFraction:
        return "mean-fraction";
    }
    return "unknown";
}

MuxGainDef mux_def_from_string(const std::string &name)
{
    if (name == "log-snr")
        return MuxGainDef::kLogSnr;
    if (name == "log-snr-offset")
        return MuxGainDef::kLogSnrOffset;
    if (name == "mean-fraction")
        return MuxGainDef::kMeanFraction;
    throw std::invalid_argument("mux_def_from_string: unknown definition '" + name +
                                "' (expected log-snr, log-snr-offset or mean-fraction)");
}

double q_function(double x)
{
    // 1/sqrt(2) to full double precision; erfc keeps relative accuracy in
    // the far tail where 1 - CDF would return garbage.
    return 0.5 * std::erfc(x * 0.70710678118654752440);
}

double rate_from_mux(MuxGainDef def, double r, const Snr &gamma, const CapacityStats &stats, int p)
{
    if (!std::isfinite(r) || !(r >= 0.0))
        throw std::invalid_argument("rate_from_mux: multiplexing gain must be >= 0");

    const double g = gamma.linear();
    switch (def)
    {
    case MuxGainDef::kLogSnr:
        if (!(g > 1.0))
            throw std::domain_error("rate_from_mux: log-snr definition needs snr > 1 (0 dB)");
        return r * std::log(g);
    case MuxGainDef::kLogSnrOffset:
        if (!(g > std::numbers::e))
            throw std::domain_error("rate_from_mux: log-snr-offset definition needs snr > e "
                                    "(about 4.34 dB)");
        return r * (std::log(g) - 1.0);
    case MuxGainDef::kMeanFraction:
        if (p < 1)
            throw std::invalid_argument("rate_from_mux: min(m, n) must be >= 1");
        if (!(r <= static_cast<double>(p)))
            throw std::invalid_argument("rate_from_mux: mean-fraction definition needs r <= min(m, n)");
        if (!(stats.mean > 0.0))
            throw std::domain_error("rate_from_mux: mean-fraction definition needs a positive mean capacity");
        return r * stats.mean / static_cast<double>(p);
    }
    throw std::invalid_argument("rate_from_mux: unknown definition");
}

double gaussian_outage(const CapacityStats &stats, double rate)
{
    if (!(stats.variance > 0.0))
        throw std::invalid_argument("gaussian_outage: variance must be positive");
    return q_function((stats.mean - rate) / std::sqrt(stats.variance));
}

double gaussian_outage_bound(const CapacityStats &stats, double rate)
{
    if (!(stats.variance > 0.0))
        throw std::invalid_argument("gaussian_outage_bound: variance must be positive");
    const double x = (stats.mean - rate) / std::sqrt(stats.variance);
    if (x < 0.0)
        throw std::domain_error("gaussian_outage_bound: bound only valid for rate <= mean capacity; "
                                "fall back to gaussian_outage");
    return 0.5 * std::exp(-0.5 * x * x);
}

double diversity_ratio(double p_out, const Snr &gamma)
{
    if (!(p_out > 0.0) || !(p_out < 1.0))
        throw std::domain_error("diversity_ratio: outage probability must lie strictly in (0, 1)");
    if (!(gamma.linear() > 1.0))
        throw std::domain_error("diversity_ratio: needs snr > 1 (0 dB)");
    return -std::log(p_out) / std::log(gamma.linear());
}

DiffDiversity differential_diversity(const std::function<double(const Snr &)> &outage_curve,
                                     const Snr &gamma)
{
    constexpr double kStep = 0.01;  // in ln(gamma)
    const double lg = std::log(gamma.linear());

    const auto slope = [&](double h) {
        const double p_plus = outage_curve(Snr::from_linear(std::exp(lg + h)));
        const double p_minus = outage_curve(Snr::from_linear(std::exp(lg - h)));
        if (!(p_plus > 0.0) || !(p_plus < 1.0) || !(p_minus > 0.0) || !(p_minus < 1.0))
            throw std::domain_error("differential_diversity: curve reached 0 or 1 at a stencil point; "
                                    "log-derivative undefined");
        return -(std::log(p_plus) - std::log(p_minus)) / (2.0 * h);
    };

    const double full = slope(kStep);
    const double half = slope(0.5 * kStep);
    const double gap = std::abs(full - half);
    return {(4.0 * half - full) / 3.0, gap, gap <= 1.0e-3};
}

} // namespace dmt
