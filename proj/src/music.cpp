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

#include "ulafit/coarray.hpp"
#include "ulafit/doa_sim.hpp"
#include "ulafit/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ulafit {

std::vector<double> uniformGrid(double stepDeg, double loDeg, double hiDeg)
{
    if (!(stepDeg > 0.0) || !(hiDeg > loDeg))
        throw DomainError("grid needs step > 0 and hi > lo");
    const auto cells = static_cast<std::int64_t>(std::llround((hiDeg - loDeg) / stepDeg));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(cells - 1, 0)));
    for (std::int64_t k = 1; k < cells; ++k)
        out.push_back(loDeg + (hiDeg - loDeg) * static_cast<double>(k) / static_cast<double>(cells));
    return out;
}

MusicResult musicSpectrum(const Eigen::MatrixXcd& rss, std::size_t q, std::span<const double> grid)
{
    const Eigen::Index dim = rss.rows();
    if (dim == 0 || rss.cols() != dim)
        throw DomainError("MUSIC needs a non-empty square covariance");
    if (q == 0)
        throw DomainError("MUSIC needs at least one source");
    if (static_cast<Eigen::Index>(q) >= dim)
        throw TooManySources("MUSIC resolves at most " + std::to_string(dim - 1) +
                             " sources here, asked for " + std::to_string(q));

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rss);
    if (eig.info() != Eigen::Success)
        throw PreconditionViolation("eigendecomposition did not converge");
    const Eigen::Index noiseDim = dim - static_cast<Eigen::Index>(q);
    const Eigen::MatrixXcd enH = eig.eigenvectors().leftCols(noiseDim).adjoint();

    MusicResult out;
    out.anglesDeg.assign(grid.begin(), grid.end());
    out.spectrum.resize(grid.size());

    constexpr Eigen::Index kBlock = 1024;
    const auto total = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd steer(dim, std::min(kBlock, total));
    for (Eigen::Index start = 0; start < total; start += kBlock) {
        const Eigen::Index width = std::min(kBlock, total - start);
        for (Eigen::Index c = 0; c < width; ++c) {
            const double s =
                std::sin(grid[static_cast<std::size_t>(start + c)] * std::numbers::pi / 180.0);
            for (Eigen::Index k = 0; k < dim; ++k)
                steer(k, c) = std::polar(1.0, std::numbers::pi * static_cast<double>(k) * s);
        }
        const Eigen::RowVectorXd denom =
            (enH * steer.leftCols(width)).colwise().squaredNorm();
        for (Eigen::Index c = 0; c < width; ++c)
            out.spectrum[static_cast<std::size_t>(start + c)] = 1.0 / denom(c);
    }

    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < out.spectrum.size(); ++i)
        if (out.spectrum[i] > out.spectrum[i - 1] && out.spectrum[i] > out.spectrum[i + 1])
            peaks.push_back(i);
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
        return out.spectrum[a] > out.spectrum[b];
    });
    if (peaks.size() > q)
        peaks.resize(q);
    for (std::size_t i : peaks)
        out.estimates.push_back(out.anglesDeg[i]);
    std::sort(out.estimates.begin(), out.estimates.end());
    out.residualPeaks = static_cast<std::int64_t>(q) - static_cast<std::int64_t>(out.estimates.size());
    return out;
}

MusicResult coarrayMusic(const Eigen::MatrixXcd& covariance, std::span<const Position> positions,
                         std::size_t q, std::span<const double> grid)
{
    const CoarrayVector z(covariance, positions);
    std::int64_t j = 0;
    while (z.has(j + 1))
        ++j;
    return musicSpectrum(spatialSmoothing(z, j), q, grid);
}

} // namespace ulafit
