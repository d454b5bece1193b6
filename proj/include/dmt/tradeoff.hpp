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
// Closed-form finite-SNR diversity-multiplexing results for square i.i.d.
// channels and for keyhole channels: the SNR-asymptotic tradeoff curve,
// finite-SNR outage approximations with their SNR offsets, closed-form
// differential diversity, and the SNR thresholds beyond which the closed
// forms sit within 10 percent of the asymptote.

#ifndef DMT_TRADEOFF_HPP
#define DMT_TRADEOFF_HPP

#include <optional>
#include <utility>
#include <vector>

#include "dmt/channel.hpp"
#include "dmt/outage.hpp"
#include "dmt/snr.hpp"

namespace dmt {

// SNR-asymptotic tradeoff d(r) = (n - r)(m - r) at integer r, with linear
// interpolation between adjacent integer points for fractional r.
// Domain: 0 <= r <= min(m, n).
double dmt_asymptote(double r, int m, int n);

// Finite-SNR outage approximation for the square i.i.d. channel under the
// mean-fraction rate definition:
//   P = (1/2) (g/e)^(-(n-r)^2 Delta),  Delta = 1 + 2 / (sqrt(g) ln(g/e)).
// Folding the 1/e offset into the constant gives P = c g^(-(n-r)^2 Delta)
// with c = (1/2) exp((n-r)^2 Delta); both pieces are reported.
// Domain: g > e, 0 <= r < n.
struct IidApprox {
    double p_out;
    double snr_offset;  // the constant c above
    double delta;       // finite-SNR inflation of the exponent
};

IidApprox approx_outage_iid(const Snr &gamma, int n, double r);

// Closed-form differential diversity for the square i.i.d. channel
// (m == n), one expression per rate definition:
//   mean-fraction:   (n-r)^2 (1 - 1/(2 sqrt g))
//   log-snr-offset:  (n-r)^2 (1 - ((n+r)/(n-r)) / sqrt g)
//   log-snr:         (n-r)^2 (1 - ((n+r)/(n-r)) / sqrt g
//                             - (r/(n-r))^2 / ln(g/e)^2)
// Valid for r < n; r == n returns 0 exactly. SNR domains follow
// rate_from_mux, and the log-snr expression additionally rejects g == e
// where its last term is singular.
double dprime_closed_form(MuxGainDef def, const Snr &gamma, int n, double r);

// Smallest SNR at which the closed-form differential diversity is within
// 10 percent of the asymptote (n - r)^2:
//   mean-fraction:   25 (about 14 dB), independent of n and r
//   log-snr-offset:  (10 (n+r)/(n-r))^2
//   log-snr:         max of the above and exp(1 + 3r/(n-r))
Snr convergence_threshold(MuxGainDef def, int n, double r);

// Previously reported threshold figures for specific (definition, n, r)
// cases that circulate alongside these formulas. Two of them disagree
// with direct evaluation of the formulas above; reproduction output
// prints both values side by side rather than hiding the gap.
std::optional<double> reported_threshold_db(MuxGainDef def, int n, double r);

// Keyhole finite-SNR tradeoff. With s2 the summed correlation measure of
// the two ends:
//   d(r) = (1-r)^2, Delta = ln(n g) / (2 s2),
//   P = (1/2) (n g)^(-d Delta), d' = (1-r)^2 ln(n g) / s2.
// Domain: 0 <= r <= 1 and n g > 1. Unlike the i.i.d. case this
// approximation must not be extrapolated to unbounded SNR at fixed
// antenna counts, so no asymptotic threshold is defined for it.
struct KeyholeDmt {
    double p_out;
    double delta;
    double dprime;
};

KeyholeDmt keyhole_dmt(const Snr &gamma, const KeyholeChannelSpec &spec, double r);

// Least-squares fit of the constant c in P = c g^(-d) over outage curve
// samples, with the slope d held fixed: ln c is the mean of
// ln P_i + d ln g_i. Needs at least two samples, d > 0 and every sample
// strictly inside (0, 1).
double fit_snr_offset(const std::vector<std::pair<Snr, double>> &samples, double d);

} // namespace dmt

#endif
