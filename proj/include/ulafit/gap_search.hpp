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

#include "ulafit/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ulafit {

/// A sub-ULA without a placement: interspace and sensor count.
struct SubUlaShape {
    Position interspace = 1;
    std::int64_t count = 1;

    Position aperture() const noexcept { return interspace * (count - 1); }
    friend bool operator==(const SubUlaShape&, const SubUlaShape&) = default;
};

/// How far the consecutive lag range must reach for a gap tuple to be feasible.
enum class CoverageTarget {
    /// Lags 0..AP_t, the aperture of the transfer sub-ULA.
    TransferAperture,
    /// Lags 0..(I_t + AP_t), the far end of the transfer sub-ULA.
    TransferEnd,
};

struct GapSearchSpec {
    /// Sub-ULAs in array order.
    std::vector<SubUlaShape> sequence;
    /// Zero-based position of the transfer sub-ULA in `sequence`.
    std::size_t transferIndex = 0;
    Position minGap = 1;
    Position maxGap = 16;
    /// Upper bound on the number of complete gap tuples evaluated.
    std::uint64_t nodeBudget = 10'000'000;
    CoverageTarget target = CoverageTarget::TransferAperture;
};

inline constexpr std::size_t kMaxSearchSubUlas = 8;
inline constexpr Position kMaxSearchGap = 16;

/// Builds the sequence part of a spec from layer tokens such as
/// "B3 A1 T B3 A2 B3":
///   B<s>  base-layer sub-ULA, interspace s, `baseCount` sensors
///   A<s>  addition-layer sub-ULA, interspace s, 2 sensors
///   T     the transfer sub-ULA, `transferCount` sensors
///   U<s>x<n>  any other sub-ULA, interspace s, n sensors
/// The transfer interspace defaults to N_base N_b + sum N_a + 1. Exactly one T is required.
GapSearchSpec parseLayerSequence(std::string_view tokens, std::int64_t baseCount,
                                 std::int64_t transferCount,
                                 std::optional<Position> transferInterspace = std::nullopt);

/// Places the shapes left to right, starting at 0, with the given adjacent gaps.
SparseArray assemble(std::span<const SubUlaShape> sequence, std::span<const Position> gaps);

struct GapSearchResult {
    /// Feasible adjacent-gap tuples in lexicographic order.
    std::vector<std::vector<Position>> solutions;
    /// Complete tuples evaluated.
    std::uint64_t evaluated = 0;
};

/// Enumerates every adjacent-gap tuple in [minGap, maxGap]^(n-1) and keeps the
/// ones whose difference coarray is consecutive over the coverage target.
///
/// Throws PreconditionViolation for more than 8 sub-ULAs or maxGap > 16, and
/// SearchBudgetExceeded when the tuple count exceeds `nodeBudget`.
GapSearchResult searchGaps(const GapSearchSpec& spec);

} // namespace ulafit
