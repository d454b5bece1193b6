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
// Gaussian outage probability, its exponential upper bound, the three
// finite-SNR multiplexing-gain definitions and the two diversity-gain
// readings (the ratio -ln P / ln g and the local slope -d ln P / d ln g).

#ifndef DMT_OUTAGE_HPP
#define DMT_OUTAGE_HPP

#include <functional>
#include <stdexcept>
#include <string>

#include "dmt/asymptotic.hpp"
#include "dmt/snr.hpp"

namespace dmt {

// The three ways a target rate is tied to the SNR sweep.
enum class MuxGainDef {
    kLogSnr,        // R = r ln(g), needs g > 1
    kLogSnrOffset,  // R = r ln(g/e), needs g > e
    kMeanFraction,  // R = r Cbar / min(m, n), needs Cbar > 0 and 0 <= r <= min(m, n)
};

std::string to_string(MuxGainDef def);
MuxGainDef mux_def_from_string(const std::string &name);

// Standard Gaussian tail probability, routed through the complementary
// error function so relative accuracy survives deep into the tail
// (naive 1 - CDF loses everything past x of about 8).
double q_function(double x);

// Target rate in nats for a multiplexing gain r under the chosen
// definition. p is min(m, n); stats supplies the mean for the
// mean-fraction definition. Throws std::domain_error naming the
// definition when the SNR is below its domain.
double rate_from_mux(MuxGainDef def, double r, const Snr &gamma, const CapacityStats &stats, int p);

// Outage probability of the Gaussian capacity approximation,
// Q((mean - R) / sigma). Valid on both sides of the mean.
double gaussian_outage(const CapacityStats &stats, double rate);

// Exponential upper bound (1/2) exp(-((mean - R)/sigma)^2 / 2).
// Upper-bounds the Q expression only when mean >= rate; below that it
// throws and callers must fall back to gaussian_outage.
double gaussian_outage_bound(const CapacityStats &stats, double rate);

// Ratio diversity gain -ln(P) / ln(g). Needs 0 < P < 1 and g > 1.
double diversity_ratio(double p_out, const Snr &gamma);

// Differential diversity gain -d ln(P) / d ln(g) by central finite
// difference with step h = 0.01 in ln(g), refined by one Richardson
// extrapolation step. If the half-step estimate disagrees with the
// full-step one by more than 1e-3, the result carries accurate == false
// so callers can attach a warning instead of trusting the digits.
struct DiffDiversity {
    double value;
    double discrepancy;  // |full-step - half-step| slope gap
    bool accurate;
};

DiffDiversity differential_diversity(const std::function<double(const Snr &)> &outage_curve,
                                     const Snr &gamma);

// Provenance of a tradeoff-curve sample. Values computed by different
// methods are never mixed silently; every point carries its method.
enum class DmtMethod {
    kAnalyticClosedForm,
    kNumericDifferentiation,
    kRatioDefinition,
    kMcEmpirical,
};

struct DmtPoint {
    Snr gamma;
    double r;
    double d;
    DmtMethod method;
};

} // namespace dmt

#endif
