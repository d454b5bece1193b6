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

#include "dmt/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dmt {

namespace {

// Validates Hermitian PSD structure and the trace normalization, then
// returns the Hermitian square root used to color white Gaussian vectors.
Eigen::MatrixXcd validated_coloring_factor(const Eigen::MatrixXcd &r, int size, const char *which)
{
    if (r.rows() != size || r.cols() != size)
        throw std::invalid_argument(std::string("KeyholeChannelSpec: ") + which +
                                    " correlation matrix has wrong dimensions");

    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
    if (((r - r.adjoint()).cwiseAbs().maxCoeff()) > 1.0e-10 * scale)
        throw std::invalid_argument(std::string("KeyholeChannelSpec: ") + which +
                                    " correlation matrix is not Hermitian");

    const double trace_gap = std::abs(r.trace().real() / size - 1.0) + std::abs(r.trace().imag());
    if (trace_gap > 1.0e-9)
        throw std::invalid_argument(std::string("KeyholeChannelSpec: ") + which +
                                    " correlation matrix violates the trace normalization tr(R)/size == 1");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r);
    if (solver.info() != Eigen::Success)
        throw std::invalid_argument(std::string("KeyholeChannelSpec: ") + which +
                                    " correlation matrix eigendecomposition failed");

    Eigen::VectorXd eigs = solver.eigenvalues();
    if (eigs.minCoeff() < -1.0e-9 * std::max(1.0, eigs.maxCoeff()))
        throw std::invalid_argument(std::string("KeyholeChannelSpec: ") + which +
                                    " correlation matrix is not positive semi-definite");

    // Tiny negative eigenvalues are roundoff at this point; clamp them.
    Eigen::VectorXd roots = eigs.cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

Eigen::VectorXcd colored_gaussian(const Eigen::MatrixXcd &factor, RngStream &stream)
{
    Eigen::VectorXcd w(factor.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w(i) = stream.complex_normal();
    return factor * w;
}

} // namespace

IidChannelSpec::IidChannelSpec(int m_in, int n_in, FadingFamily family_in)
    : m(m_in), n(n_in), family(family_in)
{
    if (m < 1 || n < 1)
        throw std::invalid_argument("IidChannelSpec: antenna counts must be >= 1");
}

KeyholeChannelSpec::KeyholeChannelSpec(int m_in, int n_in, Eigen::MatrixXcd r_tx_in, Eigen::MatrixXcd r_rx_in)
    : m(m_in), n(n_in), r_tx(std::move(r_tx_in)), r_rx(std::move(r_rx_in))
{
    if (m < 1 || n < 1)
        throw std::invalid_argument("KeyholeChannelSpec: antenna counts must be >= 1");
    tx_factor = validated_coloring_factor(r_tx, m, "transmit");
    rx_factor = validated_coloring_factor(r_rx, n, "receive");
}

KeyholeChannelSpec KeyholeChannelSpec::uncorrelated(int m, int n)
{
    return KeyholeChannelSpec(m, n, Eigen::MatrixXcd::Identity(m, m), Eigen::MatrixXcd::Identity(n, n));
}

Eigen::MatrixXcd exponential_correlation(int size, double rho)
{
    if (size < 1)
        throw std::invalid_argument("exponential_correlation: size must be >= 1");
    if (!(rho >= 0.0) || !(rho < 1.0))
        throw std::invalid_argument("exponential_correlation: rho must lie in [0, 1)");

    Eigen::MatrixXcd r(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            r(i, j) = std::pow(rho, std::abs(i - j));
    return r;
}

double correlation_measure(const Eigen::MatrixXcd &r, int size)
{
    if (size < 1 || r.rows() != size || r.cols() != size)
        throw std::invalid_argument("correlation_measure: matrix is not size x size");
    return r.squaredNorm() / (static_cast<double>(size) * size);
}

ChannelMatrix sample_iid(const IidChannelSpec &spec, RngStream &stream)
{
    ChannelMatrix h(spec.n, spec.m);
    switch (spec.family)
    {
    case FadingFamily::kComplexGaussian:
        for (int j = 0; j < spec.m; ++j)
            for (int i = 0; i < spec.n; ++i)
                h(i, j) = stream.complex_normal();
        break;
    case FadingFamily::kOnOffUniformPhase:
        // |h|^2 is 0 or 2 with probability 1/2 each, phase uniform.
        // Exactly E|h|^2 = 1 and E|h|^4 = 2, like the Gaussian family,
        // but maximally non-Gaussian. The phase draw always happens so
        // every entry consumes the same number of stream words.
        for (int j = 0; j < spec.m; ++j)
            for (int i = 0; i < spec.n; ++i)
            {
                const bool on = (stream.raw() & 1ULL) != 0;
                const double angle = 2.0 * std::numbers::pi * stream.uniform01();
                const double mag = on ? std::numbers::sqrt2 : 0.0;
                h(i, j) = std::complex<double>(mag * std::cos(angle), mag * std::sin(angle));
            }
        break;
    }
    return h;
}

ChannelMatrix sample_keyhole(const KeyholeChannelSpec &spec, RngStream &stream)
{
    const Eigen::VectorXcd h_t = colored_gaussian(spec.tx_factor, stream);
    const Eigen::VectorXcd h_r = colored_gaussian(spec.rx_factor, stream);
    return h_r * h_t.adjoint();
}

} // namespace dmt
