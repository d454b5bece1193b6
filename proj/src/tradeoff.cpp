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

#include "dmt/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dmt {

double dmt_asymptote(double r, int m, int n)
{
    if (m < 1 || n < 1)
        throw std::invalid_argument("dmt_asymptote: antenna counts must be >= 1");
    const int p = std::min(m, n);
    if (!std::isfinite(r) || !(r >= 0.0) || !(r <= static_cast<double>(p)))
        throw std::invalid_argument("dmt_asymptote: r must lie in [0, min(m, n)]");

    const double k = std::floor(r);
    if (k >= p)
        return 0.0;  // r == min(m, n) exactly
    const double d_lo = (n - k) * (m - k);
    const double d_hi = (n - k - 1.0) * (m - k - 1.0);
    return d_lo + (r - k) * (d_hi - d_lo);
}

IidApprox approx_outage_iid(const Snr &gamma, int n, double r)
{
    if (n < 1)
        throw std::invalid_argument("approx_outage_iid: n must be >= 1");
    if (!std::isfinite(r) || !(r >= 0.0) || !(r < static_cast<double>(n)))
        throw std::invalid_argument("approx_outage_iid: r must lie in [0, n)");
    const double g = gamma.linear();
    if (!(g > std::numbers::e))
        throw std::domain_error("approx_outage_iid: requires snr > e (about 4.34 dB)");

    const double log_offset = std::log(g) - 1.0;  // ln(g/e)
    const double delta = 1.0 + 2.0 / (std::sqrt(g) * log_offset);
    const double d_asym = (n - r) * (n - r);
    const double exponent = d_asym * delta;
    const double p_out = 0.5 * std::exp(-exponent * log_offset);
    const double snr_offset = 0.5 * std::exp(exponent);
    return {p_out, snr_offset, delta};
}

double dprime_closed_form(MuxGainDef def, const Snr &gamma, int n, double r)
{
    if (n < 1)
        throw std::invalid_argument("dprime_closed_form: n must be >= 1");
    if (!std::isfinite(r) || !(r >= 0.0) || !(r <= static_cast<double>(n)))
        throw std::invalid_argument("dprime_closed_form: r must lie in [0, n]");
    if (r == static_cast<double>(n))
        return 0.0;  // zero rate margin, zero diversity, exactly

    const double g = gamma.linear();
    const double d_asym = (n - r) * (n - r);
    const double root_g = std::sqrt(g);

    switch (def)
    {
    case MuxGainDef::kMeanFraction:
        return d_asym * (1.0 - 1.0 / (2.0 * root_g));
    case MuxGainDef::kLogSnrOffset:
        if (!(g > std::numbers::e))
            throw std::domain_error("dprime_closed_form: log-snr-offset definition needs snr > e");
        return d_asym * (1.0 - ((n + r) / (n - r)) / root_g);
    case MuxGainDef::kLogSnr:
    {
        if (!(g > 1.0))
            throw std::domain_error("dprime_closed_form: log-snr definition needs snr > 1 (0 dB)");
        const double log_offset = std::log(g) - 1.0;
        if (log_offset == 0.0)
            throw std::domain_error("dprime_closed_form: log-snr expression is singular at snr == e");
        const double ratio = r / (n - r);
        return d_asym *
               (1.0 - ((n + r) / (n - r)) / root_g - ratio * ratio / (log_offset * log_offset));
    }
    }
    throw std::invalid_argument("dprime_closed_form: unknown definition");
}

Snr convergence_threshold(MuxGainDef def, int n, double r)
{
    if (n < 1)
        throw std::invalid_argument("convergence_threshold: n must be >= 1");
    if (!std::isfinite(r) || !(r >= 0.0) || !(r < static_cast<double>(n)))
        throw std::invalid_argument("convergence_threshold: r must lie in [0, n)");

    switch (def)
    {
    case MuxGainDef::kMeanFraction:
        // 1/(2 sqrt g) <= 0.1, independent of the system size and rate.
        return Snr::from_linear(25.0);
    case MuxGainDef::kLogSnrOffset:
    {
        const double s = 10.0 * (n + r) / (n - r);
        return Snr::from_linear(s * s);
    }
    case MuxGainDef::kLogSnr:
    {
        const double s = 10.0 * (n + r) / (n - r);
        return Snr::from_linear(std::max(s * s, std::exp(1.0 + 3.0 * r / (n - r))));
    }
    }
    throw std::invalid_argument("convergence_threshold: unknown definition");
}

std::optional<double> reported_threshold_db(MuxGainDef def, int n, double r)
{
    // Figures quoted alongside the threshold formulas in prior write-ups
    // of these results. The 50 dB and 22 dB entries disagree with direct
    // evaluation of the formulas (45.6 dB and 29.5 dB); we print both and
    // do not guess which rounding produced the quoted numbers.
    if (def == MuxGainDef::kMeanFraction)
        return 14.0;
    if (n == 10 && r == 9.0)
    {
        if (def == MuxGainDef::kLogSnrOffset)
            return 50.0;
        if (def == MuxGainDef::kLogSnr)
            return 120.0;
    }
    if (n == 2 && r == 1.0)
        return 22.0;  // quoted jointly for log-snr and log-snr-offset
    return std::nullopt;
}

KeyholeDmt keyhole_dmt(const Snr &gamma, const KeyholeChannelSpec &spec, double r)
{
    if (!std::isfinite(r) || !(r >= 0.0) || !(r <= 1.0))
        throw std::invalid_argument("keyhole_dmt: keyhole multiplexing gain must lie in [0, 1]");
    const double g = gamma.linear();
    if (!(spec.n * g > 1.0))
        throw std::domain_error("keyhole_dmt: requires n * snr > 1");

    const double s2 =
        correlation_measure(spec.r_tx, spec.m) + correlation_measure(spec.r_rx, spec.n);
    const double log_ng = std::log(spec.n * g);
    const double d_asym = (1.0 - r) * (1.0 - r);
    const double delta = log_ng / (2.0 * s2);
    const double p_out = 0.5 * std::exp(-d_asym * delta * log_ng);
    const double dprime = d_asym * log_ng / s2;
    return {p_out, delta, dprime};
}

double fit_snr_offset(const std::vector<std::pair<Snr, double>> &samples, double d)
{
    if (samples.size() < 2)
        throw std::invalid_argument("fit_snr_offset: need at least two samples");
    if (!std::isfinite(d) || !(d > 0.0))
        throw std::invalid_argument("fit_snr_offset: diversity slope must be positive");

    double acc = 0.0;
    for (const auto &[gamma, p_out] : samples)
    {
        if (!(p_out > 0.0) || !(p_out < 1.0))
            throw std::invalid_argument("fit_snr_offset: outage samples must lie strictly in (0, 1)");
        acc += std::log(p_out) + d * std::log(gamma.linear());
    }
    return std::exp(acc / static_cast<double>(samples.size()));
}

} // namespace dmt
