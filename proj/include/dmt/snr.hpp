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

#ifndef DMT_SNR_HPP
#define DMT_SNR_HPP

#include <cmath>
#include <stdexcept>

namespace dmt {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// Average SNR per receive antenna, stored in linear units.
// All analytic formulas in this library take linear SNR; dB is a
// presentation unit that only appears at construction and reporting.
class Snr {
  public:
    static Snr from_linear(double lin)
    {
        if (!std::isfinite(lin) || !(lin > 0.0))
            throw std::invalid_argument("Snr: linear value must be finite and > 0");
        return Snr(lin);
    }

    static Snr from_db(double db)
    {
        if (!std::isfinite(db))
            throw std::invalid_argument("Snr: dB value must be finite");
        return Snr(db_to_linear(db));
    }

    double linear() const { return linear_; }
    double db() const { return linear_to_db(linear_); }

  private:
    explicit Snr(double lin) : linear_(lin) {}
    double linear_;
};

} // namespace dmt

#endif
