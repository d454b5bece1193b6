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

#ifndef DMT_CAPACITY_HPP
#define DMT_CAPACITY_HPP

#include <cstdint>
#include <vector>

#include "dmt/channel.hpp"
#include "dmt/snr.hpp"

namespace dmt {

// Instantaneous capacity ln det(I + (gamma/m) H H^+) in nats/s/Hz for a
// single realization. Computed through a Cholesky factorization of the
// Hermitian positive definite Gram matrix (the smaller of H H^+ and
// H^+ H), never through a raw determinant expansion. Result is >= 0.
// m is the transmit antenna count and must equal the column count of H.
double instantaneous_capacity(const ChannelMatrix &h, const Snr &gamma, int m);

// Streaming mean/variance accumulator with a pairwise merge. Merging a
// fixed sequence of shards in a fixed order is bit-reproducible (that is
// the parallel determinism contract); it agrees with a single sequential
// pass to roundoff, not bitwise. Variance uses the unbiased (count - 1)
// divisor. Optionally keeps the raw samples so empirical outage (a CDF
// query) can be evaluated afterwards.
class CapacityAccumulator {
  public:
    explicit CapacityAccumulator(bool keep_samples = false) : keep_samples_(keep_samples) {}

    void add(double c);
    void merge(const CapacityAccumulator &other);

    std::int64_t count() const { return count_; }
    double mean() const { return mean_; }
    double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
    double min() const { return min_; }
    double max() const { return max_; }

    bool has_samples() const { return keep_samples_; }
    const std::vector<double> &samples() const { return samples_; }

  private:
    bool keep_samples_;
    std::int64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
    std::vector<double> samples_;
};

// Fraction of samples with capacity strictly below the rate.
// Ties sit on the boundary of the outage event and have probability zero
// for the continuous ensembles used here.
double empirical_outage(const std::vector<double> &samples, double rate);
double empirical_outage(const CapacityAccumulator &acc, double rate);

} // namespace dmt

#endif
