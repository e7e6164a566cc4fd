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

#include "ulafit/geometry.hpp"

#include "ulafit/error.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace ulafit {

SubUla SubUla::make(Position initial, Position interspace, std::int64_t count)
{
    if (interspace < 1)
        throw DomainError("sub-ULA interspace must be >= 1");
    if (count < 1)
        throw DomainError("sub-ULA sensor count must be >= 1");
    if (initial < 0)
        throw DomainError("sub-ULA initial position must be >= 0");
    return SubUla{initial, interspace, count};
}

PositionSet SubUla::positions() const
{
    PositionSet out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k)
        out.push_back(initial + k * interspace);
    return out;
}

std::string toString(const SubUla& sub)
{
    return "{" + std::to_string(sub.initial) + "," + std::to_string(sub.interspace) + "," +
           std::to_string(sub.count) + "}";
}

namespace {

void checkCollisions(const std::vector<SubUla>& subs)
{
    std::unordered_map<Position, std::size_t> owner;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (Position p : subs[i].positions()) {
            auto [it, inserted] = owner.emplace(p, i);
            if (!inserted)
                throw InvalidGeometry("sub-ULAs " + std::to_string(it->second + 1) + " and " +
                                      std::to_string(i + 1) + " collide at position " +
                                      std::to_string(p));
        }
    }
}

} // namespace

SparseArray::SparseArray(std::vector<SubUla> subUlas) : subs_(std::move(subUlas))
{
    if (subs_.empty())
        throw InvalidGeometry("a sparse array needs at least one sub-ULA");
    for (const SubUla& s : subs_)
        (void)SubUla::make(s.initial, s.interspace, s.count);
    for (std::size_t i = 1; i < subs_.size(); ++i)
        if (subs_[i].initial < subs_[i - 1].initial)
            throw InvalidGeometry("sub-ULAs must be ordered by initial position (sub-ULA " +
                                  std::to_string(i + 1) + ")");
    checkCollisions(subs_);
    for (std::size_t i = 1; i < subs_.size(); ++i)
        if (subs_[i].initial <= subs_[i - 1].last())
            throw InvalidGeometry("sub-ULAs " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                  " interleave (gap " +
                                  std::to_string(subs_[i].initial - subs_[i - 1].last()) + ")");
}

std::int64_t SparseArray::sensorCount() const noexcept
{
    std::int64_t n = 0;
    for (const SubUla& s : subs_)
        n += s.count;
    return n;
}

Position SparseArray::aperture() const noexcept
{
    return subs_.back().last() - subs_.front().initial;
}

std::vector<Position> SparseArray::gaps() const
{
    std::vector<Position> out;
    for (std::size_t i = 1; i < subs_.size(); ++i)
        out.push_back(subs_[i].initial - subs_[i - 1].last());
    return out;
}

Position SparseArray::gapBetween(std::size_t m, std::size_t n) const
{
    if (m >= n || n >= subs_.size())
        throw DomainError("gapBetween needs m < n < sub-ULA count");
    const auto adjacent = gaps();
    Position g = 0;
    for (std::size_t i = m; i < n; ++i)
        g += adjacent[i];
    for (std::size_t j = m + 1; j < n; ++j)
        g += subs_[j].aperture();
    return g;
}

PositionSet positions(const SparseArray& array)
{
    PositionSet out;
    out.reserve(static_cast<std::size_t>(array.sensorCount()));
    for (const SubUla& s : array.subUlas())
        for (Position p : s.positions())
            out.push_back(p);
    std::sort(out.begin(), out.end());
    // The constructor already rejects collisions; this guards the sensor-count invariant.
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw InvalidGeometry("coincident sensors in sparse array");
    return out;
}

PositionSet dual(std::span<const Position> positions)
{
    if (positions.empty())
        throw EmptyInput("dual of an empty position set");
    const Position hi = *std::max_element(positions.begin(), positions.end());
    PositionSet out;
    out.reserve(positions.size());
    for (Position p : positions)
        out.push_back(hi - p);
    std::sort(out.begin(), out.end());
    return out;
}

SparseArray shift(const SparseArray& array, Position n)
{
    std::vector<SubUla> moved = array.subUlas();
    for (SubUla& s : moved) {
        if (s.initial + n < 0)
            throw DomainError("shift by " + std::to_string(n) + " moves sensors below 0");
        s.initial += n;
    }
    return SparseArray(std::move(moved));
}

PositionSet normalize(std::span<const Position> positions)
{
    if (positions.empty())
        throw EmptyInput("cannot normalize an empty position set");
    PositionSet out(positions.begin(), positions.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    const Position lo = out.front();
    for (Position& p : out)
        p -= lo;
    return out;
}

SparseArray nested(std::int64_t n1, std::int64_t n2)
{
    if (n1 < 1 || n2 < 1)
        throw DomainError("nested array needs n1 >= 1 and n2 >= 1");
    return SparseArray({SubUla::make(0, 1, n1), SubUla::make(n1, n1 + 1, n2)});
}

PositionSet coprime(std::int64_t m, std::int64_t n)
{
    if (m < 1 || n < 1)
        throw DomainError("coprime array needs positive m and n");
    if (m >= n)
        throw DomainError("coprime array needs m < n");
    if (std::gcd(m, n) != 1)
        throw DomainError("coprime array needs gcd(m, n) = 1 (got gcd " +
                          std::to_string(std::gcd(m, n)) + ")");
    PositionSet out;
    for (std::int64_t k = 0; k < n; ++k)
        out.push_back(m * k);
    for (std::int64_t k = 0; k < 2 * m; ++k)
        out.push_back(n * k);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::int64_t jValue3BL(std::int64_t nb, std::int64_t nt) noexcept
{
    return 3 * nb * nt + 5 * nt + 3 * nb - 1;
}

std::int64_t jValue4BL(std::int64_t nb, std::int64_t nt) noexcept
{
    return 4 * nb * nt + 7 * nt + 4 * nb + 12;
}

DesignParams optimalParams3BL(std::int64_t n)
{
    if (n < kMinSensors3BL)
        throw BelowMinimum("uf3bl", n, kMinSensors3BL);
    const std::int64_t nb = (n - 5) / 6;
    return {n, nb, n - 3 * nb - 4, 3 * nb + 5};
}

DesignParams optimalParams4BL(std::int64_t n)
{
    if (n < kMinSensors4BL)
        throw BelowMinimum("uf4bl", n, kMinSensors4BL);
    const std::int64_t nb = (n - 8) / 8;
    return {n, nb, n - 4 * nb - 6, 4 * nb + 7};
}

namespace {

template <class JFn>
DesignParams exhaustive(std::int64_t n, std::int64_t layers, std::int64_t fixed, JFn j)
{
    DesignParams best{};
    std::int64_t bestJ = -1;
    for (std::int64_t nb = 1;; ++nb) {
        const std::int64_t nt = n - layers * nb - fixed;
        if (nt < 2)
            break;
        const std::int64_t value = j(nb, nt);
        if (value >= bestJ) {
            bestJ = value;
            best = {n, nb, nt, layers * nb + fixed + 1};
        }
    }
    if (bestJ < 0)
        throw DomainError("no admissible (N_b, N_t) for N = " + std::to_string(n));
    return best;
}

} // namespace

DesignParams exhaustiveParams3BL(std::int64_t n)
{
    return exhaustive(n, 3, 4, jValue3BL);
}

DesignParams exhaustiveParams4BL(std::int64_t n)
{
    return exhaustive(n, 4, 6, jValue4BL);
}

SparseArray uf3bl(std::int64_t n)
{
    const DesignParams p = optimalParams3BL(n);
    const std::int64_t nb = p.baseCount;
    const std::int64_t nt = p.transferCount;
    const std::int64_t far = 3 * nt * nb + 5 * nt;
    return SparseArray({
        SubUla::make(0, 3, nb),
        SubUla::make(3 * nb + 1, 1, 2),
        SubUla::make(6 * nb + 4, p.transferInterspace, nt),
        SubUla::make(far + 3 * nb + 2, 3, nb),
        SubUla::make(far + 6 * nb + 3, 2, 2),
        SubUla::make(far + 6 * nb + 8, 3, nb),
    });
}

SparseArray uf4bl(std::int64_t n)
{
    const DesignParams p = optimalParams4BL(n);
    const std::int64_t nb = p.baseCount;
    const std::int64_t nt = p.transferCount;
    const std::int64_t far = 4 * nt * nb + 7 * nt;
    return SparseArray({
        SubUla::make(0, 3, 2),
        SubUla::make(7, 4, nb),
        SubUla::make(4 * nb + 8, 1, 2),
        SubUla::make(4 * nb + 15, 4, nb),
        SubUla::make(8 * nb + 19, p.transferInterspace, nt),
        SubUla::make(far + 4 * nb + 19, 4, nb),
        SubUla::make(far + 8 * nb + 18, 2, 2),
        SubUla::make(far + 8 * nb + 25, 4, nb),
    });
}

std::vector<Position> gapSolution3BL(std::int64_t baseCount)
{
    return {4, 2 + 3 * baseCount, 3, 4, 3};
}

std::vector<Position> gapSolution4BL()
{
    return {4, 5, 6, 8, 7, 3, 5};
}

namespace {

// N^2/2 + 2N + c  ==  (N^2 + 4N + 2c) / 2, with twiceC = 2c.
std::int64_t halfQuadratic(std::int64_t n, std::int64_t twiceC)
{
    return (n * n + 4 * n + twiceC) / 2;
}

} // namespace

std::int64_t udofClosedForm3BL(std::int64_t n)
{
    if (n < kMinSensors3BL)
        throw BelowMinimum("uf3bl", n, kMinSensors3BL);
    switch (n % 6) {
    case 0:
    case 4: return halfQuadratic(n, -22);
    case 1:
    case 3: return halfQuadratic(n, -19);
    case 2: return halfQuadratic(n, -18);
    default: return halfQuadratic(n, -27);
    }
}

std::int64_t udofClosedForm4BL(std::int64_t n)
{
    if (n < kMinSensors4BL)
        throw BelowMinimum("uf4bl", n, kMinSensors4BL);
    switch (n % 8) {
    case 0: return halfQuadratic(n, 10);
    case 1:
    case 7: return halfQuadratic(n, 27);
    case 2:
    case 6: return halfQuadratic(n, 22);
    case 3:
    case 5: return halfQuadratic(n, 25);
    default: return halfQuadratic(n, 26);
    }
}

std::int64_t udofFromJ3BL(std::int64_t n)
{
    const DesignParams p = optimalParams3BL(n);
    return 2 * jValue3BL(p.baseCount, p.transferCount) + 1;
}

std::int64_t udofFromJ4BL(std::int64_t n)
{
    const DesignParams p = optimalParams4BL(n);
    return 2 * jValue4BL(p.baseCount, p.transferCount) + 1;
}

} // namespace ulafit
