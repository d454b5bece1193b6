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

#include "dmt/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmt {

double instantaneous_capacity(const ChannelMatrix &h, const Snr &gamma, int m)
{
    if (m < 1 || h.cols() != m)
        throw std::invalid_argument("instantaneous_capacity: m must equal the Tx dimension of H");
    if (!h.allFinite())
        throw std::invalid_argument("instantaneous_capacity: channel matrix has non-finite entries");

    // det(I + a H H^+) == det(I + a H^+ H); factor the smaller Gram side.
    Eigen::MatrixXcd gram;
    if (h.rows() <= h.cols())
        gram = h * h.adjoint();
    else
        gram = h.adjoint() * h;

    const double scale = gamma.linear() / m;
    const Eigen::Index k = gram.rows();
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(k, k) + scale * gram;

    Eigen::LLT<Eigen::MatrixXcd> llt(w);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("instantaneous_capacity: Cholesky factorization failed");

    double half_logdet = 0.0;
    const auto &l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < k; ++i)
        half_logdet += std::log(std::real(l(i, i)));

    // Mathematically >= 0; clamp the roundoff tail for tiny SNR.
    return std::max(2.0 * half_logdet, 0.0);
}

void CapacityAccumulator::add(double c)
{
    if (count_ == 0)
    {
        min_ = c;
        max_ = c;
    }
    else
    {
        min_ = std::min(min_, c);
        max_ = std::max(max_, c);
    }
    ++count_;
    const double delta = c - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (c - mean_);
    if (keep_samples_)
        samples_.push_back(c);
}

void CapacityAccumulator::merge(const CapacityAccumulator &other)
{
    if (other.count_ == 0)
        return;
    if (count_ == 0)
    {
        count_ = other.count_;
        mean_ = other.mean_;
        m2_ = other.m2_;
        min_ = other.min_;
        max_ = other.max_;
        if (keep_samples_)
            samples_.insert(samples_.end(), other.samples_.begin(), other.samples_.end());
        return;
    }

    const std::int64_t total = count_ + other.count_;
    const double delta = other.mean_ - mean_;
    mean_ += delta * (static_cast<double>(other.count_) / static_cast<double>(total));
    m2_ += other.m2_ +
           delta * delta * (static_cast<double>(count_) * static_cast<double>(other.count_) /
                            static_cast<double>(total));
    count_ = total;
    min_ = std::min(min_, other.min_);
    max_ = std::max(max_, other.max_);
    if (keep_samples_)
        samples_.insert(samples_.end(), other.samples_.begin(), other.samples_.end());
}

double empirical_outage(const std::vector<double> &samples, double rate)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_outage: no samples");
    std::int64_t below = 0;
    for (double c : samples)
        if (c < rate)
            ++below;
    return static_cast<double>(below) / static_cast<double>(samples.size());
}

double empirical_outage(const CapacityAccumulator &acc, double rate)
{
    if (!acc.has_samples())
        throw std::invalid_argument("empirical_outage: accumulator was built without a sample reservoir");
    return empirical_outage(acc.samples(), rate);
}

} // namespace dmt
