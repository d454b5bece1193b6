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

#include "dmt/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

namespace dmt {

double f_function(double x, double z)
{
    if (!(x > 0.0) || !(z > 0.0))
        throw std::invalid_argument("f_function: arguments must be positive");

    const double root_z = std::sqrt(z);
    const double a = std::sqrt(x * (1.0 + root_z) * (1.0 + root_z) + 1.0);
    const double b = std::sqrt(x * (1.0 - root_z) * (1.0 - root_z) + 1.0);
    // (a - b)^2 cancels catastrophically for small x z; (a^2 - b^2)/(a + b)
    // is the same quantity with no subtraction of close numbers.
    const double diff = 4.0 * x * root_z / (a + b);
    return diff * diff;
}

CapacityStats theorem1_stats(const Snr &gamma, int n, double beta)
{
    if (n < 1)
        throw std::invalid_argument("theorem1_stats: n must be >= 1");
    if (!std::isfinite(beta) || !(beta > 0.0))
        throw std::invalid_argument("theorem1_stats: beta must be positive");

    const double g = gamma.linear();
    const double f = f_function(g / beta, beta);
    const double q = f / (4.0 * g);

    const double var_arg = 1.0 - beta * q * q;
    if (!(var_arg > 0.0))
        throw std::domain_error("theorem1_stats: variance log argument is nonpositive; "
                                "outside the validated parameter regime");

    const double mean_per_n =
        beta * std::log1p(g / beta - 0.25 * f) + std::log1p(g - 0.25 * f) - beta * q;

    return {static_cast<double>(n) * mean_per_n, -std::log(var_arg)};
}

CapacityStats high_snr_stats(const Snr &gamma, int n)
{
    if (n < 1)
        throw std::invalid_argument("high_snr_stats: n must be >= 1");
    const double g = gamma.linear();
    if (!(g > 1.0))
        throw std::invalid_argument("high_snr_stats: requires snr > 1 (0 dB); "
                                    "the expansion is meaningless below that");

    const double tail = 2.0 / std::sqrt(g);
    const double mean_per_n = std::log(g) - 1.0 + tail;
    const double variance = 0.5 * (std::log(g / 4.0) + tail);
    return {static_cast<double>(n) * mean_per_n, variance};
}

CapacityStats keyhole_stats(const Snr &gamma, const KeyholeChannelSpec &spec)
{
    const double g = gamma.linear();
    const double variance =
        correlation_measure(spec.r_tx, spec.m) + correlation_measure(spec.r_rx, spec.n);
    return {std::log1p(spec.n * g), variance};
}

} // namespace dmt
