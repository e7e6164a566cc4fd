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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ulafit {

/// Sensor positions and lags, in half-wavelength grid units.
using Position = std::int64_t;
using Lag = std::int64_t;

/// Sorted, distinct sensor positions (the normalized position set when min = 0).
using PositionSet = std::vector<Position>;

/// A uniform sub-array: `count` sensors starting at `initial`, spaced `interspace` apart.
struct SubUla {
    Position initial = 0;
    Position interspace = 1;
    std::int64_t count = 1;

    /// Validating constructor; throws DomainError on interspace < 1, count < 1 or initial < 0.
    static SubUla make(Position initial, Position interspace, std::int64_t count);

    Position aperture() const noexcept { return interspace * (count - 1); }
    Position last() const noexcept { return initial + aperture(); }
    PositionSet positions() const;

    friend bool operator==(const SubUla&, const SubUla&) = default;
};

/// A sparse linear array assembled from non-overlapping sub-ULAs.
///
/// Sub-ULAs are ordered by initial position and separated by gaps >= 1. The
/// array is normalized when the first sub-ULA starts at 0; `shift` can move it
/// away from the origin.
class SparseArray {
public:
    /// Throws InvalidGeometry if the list is empty, unordered, has coincident
    /// sensors (the message names the colliding pair) or interleaved sub-ULAs.
    explicit SparseArray(std::vector<SubUla> subUlas);

    const std::vector<SubUla>& subUlas() const noexcept { return subs_; }
    std::size_t size() const noexcept { return subs_.size(); }
    const SubUla& operator[](std::size_t i) const { return subs_.at(i); }

    /// Total sensor count (sum of sub-ULA counts).
    std::int64_t sensorCount() const noexcept;
    Position origin() const noexcept { return subs_.front().initial; }
    bool isNormalized() const noexcept { return origin() == 0; }
    /// Distance from the first to the last sensor.
    Position aperture() const noexcept;

    /// gap_{i,i+1}: distance from the last sensor of sub-ULA i to the first of i+1.
    std::vector<Position> gaps() const;

    /// gap_{m,n} for m < n (zero-based), via the adjacent-gap / aperture identity.
    Position gapBetween(std::size_t m, std::size_t n) const;

    friend bool operator==(const SparseArray&, const SparseArray&) = default;

private:
    std::vector<SubUla> subs_;
};

/// Closed-form design parameters for the one-base-layer generators.
struct DesignParams {
    std::int64_t totalSensors = 0;
    std::int64_t baseCount = 0;
    std::int64_t transferCount = 0;
    std::int64_t transferInterspace = 0;

    friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// Sorted positions of the array; throws InvalidGeometry naming the colliding sub-ULAs.
PositionSet positions(const SparseArray& array);

/// Reflection about max(S): {max - p}. Throws EmptyInput for an empty set.
PositionSet dual(std::span<const Position> positions);

/// Translates every sub-ULA by n; throws DomainError if a position would go negative.
SparseArray shift(const SparseArray& array, Position n);

/// Sorts, de-duplicates and translates so that the minimum is 0.
PositionSet normalize(std::span<const Position> positions);

/// Two-level nested baseline: {0..n1-1} followed by n2 sensors at k(n1+1)-1.
SparseArray nested(std::int64_t n1, std::int64_t n2);

/// Coprime baseline: {m k : 0<=k<n} united with {n k : 0<=k<2m}; requires gcd = 1 and m < n.
/// The two progressions interleave, so the result is a plain position set.
PositionSet coprime(std::int64_t m, std::int64_t n);

inline constexpr std::int64_t kMinSensors3BL = 17;
inline constexpr std::int64_t kMinSensors4BL = 32;

/// Uniform-DOF half-length J of the generators as a function of (N_b, N_t).
std::int64_t jValue3BL(std::int64_t baseCount, std::int64_t transferCount) noexcept;
std::int64_t jValue4BL(std::int64_t baseCount, std::int64_t transferCount) noexcept;

DesignParams optimalParams3BL(std::int64_t n);
DesignParams optimalParams4BL(std::int64_t n);

/// Exhaustive maximization of J over N_b >= 1 with N_t >= 2. Among equal maxima
/// the largest N_b is returned, which is the choice the closed forms make.
DesignParams exhaustiveParams3BL(std::int64_t n);
DesignParams exhaustiveParams4BL(std::int64_t n);

/// Three-base-layer design: B3 -> A1 -> T -> B3 -> A2 -> B3.
SparseArray uf3bl(std::int64_t n);
/// Four-base-layer design: A3 -> B4 -> A1 -> B4 -> T -> B4 -> A2 -> B4.
SparseArray uf4bl(std::int64_t n);

/// Closed-form adjacent gaps of the two designs.
std::vector<Position> gapSolution3BL(std::int64_t baseCount);
std::vector<Position> gapSolution4BL();

/// Closed-form uDOF tables (N^2/2 + 2N + c, with c picked by the remainder of N).
/// The 4BL table is keyed by N mod 8; its remainder-1 and remainder-7 entries
/// overstate the construction by 5, see `udofFromJ4BL` for the exact value.
std::int64_t udofClosedForm3BL(std::int64_t n);
std::int64_t udofClosedForm4BL(std::int64_t n);

/// 2 J + 1 with J taken from the optimal parameters.
std::int64_t udofFromJ3BL(std::int64_t n);
std::int64_t udofFromJ4BL(std::int64_t n);

std::string toString(const SubUla& sub);

} // namespace ulafit
