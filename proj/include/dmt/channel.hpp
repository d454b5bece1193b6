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
// Random channel ensembles. Two families of i.i.d. per-entry fading
// (complex Gaussian, and an on-off envelope with uniform phase) share the
// moment normalization E|h|^2 = 1, E|h|^4 = 2 that the large-system
// capacity statistics require. The keyhole ensemble is the rank-1 outer
// product of two colored Gaussian vectors with trace-normalized
// correlation matrices.

#ifndef DMT_CHANNEL_HPP
#define DMT_CHANNEL_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "dmt/rng.hpp"

namespace dmt {

using ChannelMatrix = Eigen::MatrixXcd;

enum class FadingFamily {
    kComplexGaussian,    // CN(0,1) entries
    kOnOffUniformPhase,  // |h|^2 in {0, 2} equiprobable, uniform phase
};

// i.i.d. flat-fading channel with m transmit and n receive antennas.
struct IidChannelSpec {
    IidChannelSpec(int m_in, int n_in, FadingFamily family_in);

    double beta() const { return static_cast<double>(m) / n; }

    int m;
    int n;
    FadingFamily family;
};

// Keyhole (rank-1) channel: H = h_r h_t^+, where h_t and h_r are colored
// complex Gaussian vectors with correlation matrices r_tx (m x m) and
// r_rx (n x n). Construction validates that both matrices are Hermitian,
// positive semi-definite and trace-normalized (tr(R)/size == 1), and
// precomputes the Hermitian square-root coloring factors.
struct KeyholeChannelSpec {
    KeyholeChannelSpec(int m_in, int n_in, Eigen::MatrixXcd r_tx_in, Eigen::MatrixXcd r_rx_in);

    static KeyholeChannelSpec uncorrelated(int m, int n);

    int m;
    int n;
    Eigen::MatrixXcd r_tx;
    Eigen::MatrixXcd r_rx;
    Eigen::MatrixXcd tx_factor;  // F with F F^+ = r_tx
    Eigen::MatrixXcd rx_factor;  // F with F F^+ = r_rx
};

// Single-parameter correlation model with entries rho^|i-j|.
// The unit diagonal satisfies the trace normalization with no rescaling.
Eigen::MatrixXcd exponential_correlation(int size, double rho);

// size^-2 times the squared Frobenius norm of a size x size correlation
// matrix. Equals 1/size when uncorrelated and grows toward 1 with
// correlation or power imbalance; the keyhole capacity variance is the
// sum of this measure over the two ends.
double correlation_measure(const Eigen::MatrixXcd &r, int size);

// Draws one n x m realization with independent entries from the family.
// Entries are consumed in column-major order; each entry uses a fixed
// number of stream draws, so the sequence is reproducible byte for byte.
ChannelMatrix sample_iid(const IidChannelSpec &spec, RngStream &stream);

// Draws one keyhole realization h_r h_t^+. The transmit vector is drawn
// first, then the receive vector.
ChannelMatrix sample_keyhole(const KeyholeChannelSpec &spec, RngStream &stream);

} // namespace dmt

#endif
