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

#include "ulafit/coupling.hpp"

#include "ulafit/error.hpp"

#include <cmath>
#include <numbers>

namespace ulafit {

CouplingModel::CouplingModel() : CouplingModel(std::polar(0.5, std::numbers::pi / 3.0)) {}

CouplingModel::CouplingModel(Complex c1, std::int64_t band) : c1_(c1), band_(band)
{
    const double mag = std::abs(c1);
    if (!(mag > 0.0 && mag < 1.0))
        throw DomainError("coupling |c1| must lie in (0, 1)");
    if (band < 0)
        throw DomainError("coupling band must be >= 0");
}

CouplingModel CouplingModel::fromPolar(double magnitude, double phaseRad, std::int64_t band)
{
    if (!(magnitude > 0.0 && magnitude < 1.0))
        throw DomainError("coupling |c1| must lie in (0, 1)");
    return CouplingModel(std::polar(magnitude, phaseRad), band);
}

Complex CouplingModel::coefficient(std::int64_t a) const
{
    if (a < 0)
        throw DomainError("coupling coefficient index must be >= 0");
    if (a == 0)
        return {1.0, 0.0};
    if (a > band_)
        return {0.0, 0.0};
    const double phase = -static_cast<double>(a - 1) * std::numbers::pi / 8.0;
    return c1_ * std::polar(1.0, phase) / static_cast<double>(a);
}

Eigen::MatrixXcd couplingMatrix(std::span<const Position> positions, const CouplingModel& model)
{
    const auto n = static_cast<Eigen::Index>(positions.size());
    Eigen::MatrixXcd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const Position d = positions[static_cast<std::size_t>(i)] -
                               positions[static_cast<std::size_t>(j)];
            c(i, j) = model.coefficient(d < 0 ? -d : d);
        }
    return c;
}

double couplingLeakage(const Eigen::MatrixXcd& c)
{
    if (c.size() == 0)
        throw EmptyInput("coupling leakage of an empty matrix");
    if (c.rows() != c.cols())
        throw DomainError("coupling leakage needs a square matrix");
    Eigen::MatrixXcd off = c;
    off.diagonal().setZero();
    return off.norm() / c.norm();
}

double couplingLeakage(const LagPolynomial& weights, const CouplingModel& model)
{
    const std::int64_t n = weights[0];
    if (n <= 0)
        throw EmptyInput("coupling leakage of an empty array");
    double off = 0.0;
    for (std::int64_t a = 1; a <= model.band(); ++a) {
        const std::int64_t w = weights[a];
        if (w != 0)
            off += 2.0 * static_cast<double>(w) * std::norm(model.coefficient(a));
    }
    return std::sqrt(off / (off + static_cast<double>(n)));
}

} // namespace ulafit
