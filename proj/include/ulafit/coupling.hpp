// SPDX-License-Identifier: Apache-2.0
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

#pragma once

#include "ulafit/coarray.hpp"
#include "ulafit/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>

namespace ulafit {

using Complex = std::complex<double>;

/// Banded mutual-coupling model: c_0 = 1, c_a = c_1 e^{-j(a-1)pi/8} / a for
/// 1 <= a <= band, zero beyond the band.
class CouplingModel {
public:
    static constexpr std::int64_t kDefaultBand = 100;

    /// 0.5 e^{j pi/3}, band 100.
    CouplingModel();
    /// Throws DomainError unless 0 < |c1| < 1 and band >= 0.
    CouplingModel(Complex c1, std::int64_t band = kDefaultBand);
    static CouplingModel fromPolar(double magnitude, double phaseRad,
                                   std::int64_t band = kDefaultBand);

    Complex c1() const noexcept { return c1_; }
    std::int64_t band() const noexcept { return band_; }

    /// Throws DomainError for a < 0.
    Complex coefficient(std::int64_t a) const;

private:
    Complex c1_;
    std::int64_t band_;
};

/// C_ij = c_{|p_i - p_j|}. Complex-symmetric, unit diagonal.
Eigen::MatrixXcd couplingMatrix(std::span<const Position> positions, const CouplingModel& model);

/// ||C - diag(C)||_F / ||C||_F. Throws EmptyInput for an empty matrix and
/// DomainError for a non-square one.
double couplingLeakage(const Eigen::MatrixXcd& c);

/// Same value computed from the weight function: lag a appears w(a) times on
/// each side of the diagonal.
double couplingLeakage(const LagPolynomial& weights, const CouplingModel& model);

} // namespace ulafit
