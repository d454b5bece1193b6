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
// Closed-form asymptotic (large-system) statistics of the instantaneous
// capacity. For i.i.d. unit-variance entries with fourth moment 2 the
// capacity is asymptotically Gaussian; this header provides its mean and
// variance, a square-channel high-SNR expansion of them, and the keyhole
// channel counterpart driven by the correlation measures of the two ends.

#ifndef DMT_ASYMPTOTIC_HPP
#define DMT_ASYMPTOTIC_HPP

#include "dmt/channel.hpp"
#include "dmt/snr.hpp"

namespace dmt {

// Mean and variance of instantaneous capacity, in nats and nats^2.
struct CapacityStats {
    double mean;
    double variance;
};

// F(x, z) = (sqrt(x (1 + sqrt z)^2 + 1) - sqrt(x (1 - sqrt z)^2 + 1))^2,
// the deep-SNR correction kernel of the large-system capacity mean.
// Evaluated in the cancellation-free form (4 x sqrt z / (a + b))^2.
double f_function(double x, double z);

// Large-system Gaussian capacity statistics for the i.i.d. ensemble with
// n receive antennas and aspect ratio beta = m/n:
//
//   mean/n = beta ln(1 + g/beta - F/4) + ln(1 + g - F/4) - (beta/(4g)) F
//   var    = -ln(1 - beta (F/(4g))^2),      F = f_function(g/beta, beta)
//
// For beta == 1 this reduces exactly (same floating-point path) to
// mean/n = 2 ln(1 + g - F/4) - F/(4g), var = -ln(1 - (F/(4g))^2), which is
// the certified square-channel form; for beta != 1 the general expression
// is validated against Monte-Carlo only. A nonpositive argument of the
// variance logarithm raises std::domain_error rather than being clamped;
// for beta == 1 it provably never triggers.
CapacityStats theorem1_stats(const Snr &gamma, int n, double beta);

// Square-channel (beta == 1) high-SNR expansion:
//   mean/n = ln(g/e) + 2/sqrt(g),  var = (ln(g/4) + 2/sqrt(g)) / 2.
// Requires g > 1; the expansion is meaningless below that.
CapacityStats high_snr_stats(const Snr &gamma, int n);

// Keyhole channel statistics: mean = ln(1 + n g) and variance equal to
// the sum of the correlation measures of the two ends. Trusts the
// normalization enforced by KeyholeChannelSpec construction.
CapacityStats keyhole_stats(const Snr &gamma, const KeyholeChannelSpec &spec);

} // namespace dmt

#endif
