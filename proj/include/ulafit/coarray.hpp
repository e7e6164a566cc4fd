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

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace ulafit {

/// Sorted set of distinct integer lags.
using LagSet = std::vector<Lag>;

/// Integer-coefficient Laurent polynomial sum_n w(n) x^n over signed lags.
///
/// Used both as a weight function (coefficients are pair counts) and as the
/// coefficient view of a coarray polynomial. Coefficients are stored densely
/// between the smallest and largest lag ever touched; zero entries compare equal
/// to absent ones.
class LagPolynomial {
public:
    LagPolynomial() = default;

    /// Coefficient at lag n, zero outside the stored range.
    std::int64_t operator[](Lag n) const noexcept;

    void add(Lag n, std::int64_t count = 1);
    LagPolynomial& operator+=(const LagPolynomial& other);
    friend LagPolynomial operator+(LagPolynomial a, const LagPolynomial& b) { return a += b; }

    /// True when every coefficient is zero.
    bool isZero() const noexcept;
    /// Smallest / largest lag with a nonzero coefficient. Throws EmptyInput if zero.
    Lag minLag() const;
    Lag maxLag() const;

    /// Lags with nonzero coefficient.
    LagSet support() const;
    /// Lags >= 0 with nonzero coefficient.
    LagSet nonNegativeSupport() const;
    /// Number of nonzero coefficients.
    std::size_t termCount() const noexcept;
    /// Sum of all coefficients.
    std::int64_t total() const noexcept;
    bool isSymmetric() const noexcept;
    /// x -> 1/x.
    LagPolynomial reflected() const;

    friend bool operator==(const LagPolynomial& a, const LagPolynomial& b) noexcept;

private:
    void reserveRange(Lag lo, Lag hi);

    Lag offset_ = 0;
    std::vector<std::int64_t> coeffs_;
};

/// Exact rational p/q with q > 0, compared by cross-multiplication.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational& a, const Rational& b) noexcept
    {
        return a.num * b.den == b.num * a.den;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept
    {
        return a.num * b.den <=> b.num * a.den;
    }
};

struct CoarrayReport {
    std::int64_t dof = 0;
    std::int64_t udof = 0;
    std::int64_t jValue = 0;
    bool holeFree = false;
    /// J / max(S). A single sensor reports 1/1.
    Rational spatialEfficiency;
    /// w(1), w(2), w(3), w(4).
    std::array<std::int64_t, 4> firstWeights{};
};

/// w(n) = |{(p, q) : p - q = n}|, the autocorrelation of the binary position sequence.
LagPolynomial weightFunction(std::span<const Position> positions);

/// Largest J such that lags 0..J all have nonzero weight.
std::int64_t consecutiveExtent(const LagPolynomial& weights);
/// Largest J with 0..J all in the set (0 if 0 is the only member, -1 if 0 is absent).
std::int64_t consecutiveExtent(std::span<const Lag> lags);

/// DOF, uDOF = 2J+1, hole-freeness against max(S), spatial efficiency and w(1..4).
/// Positions must be normalized (min = 0); throws EmptyInput for an empty set.
CoarrayReport report(std::span<const Position> positions);

/// Self-difference coarray of one sub-ULA: w(mS) = N - |m| for |m| < N.
LagPolynomial sdca(const SubUla& sub);

/// Inter-difference coarray {q - p : q in b, p in a}. When b follows a the lags
/// are positive and the smallest one equals the gap between them.
LagPolynomial idca(const SubUla& a, const SubUla& b);

struct CoarrayDecomposition {
    struct Idca {
        std::size_t from = 0; ///< zero-based index of the subtracted sub-ULA
        std::size_t to = 0;   ///< zero-based index of the other sub-ULA
        LagPolynomial lags;   ///< idca(sub[from], sub[to])
    };

    std::vector<LagPolynomial> sdcas;
    /// Every ordered pair (from != to), from-major order.
    std::vector<Idca> idcas;

    /// Coefficient-wise sum of all SDCAs and IDCAs.
    LagPolynomial total() const;
};

CoarrayDecomposition decompose(const SparseArray& array);

/// Non-negative lag supports of the near-end, transfer and far-end ranges.
struct LagPartition {
    LagSet ner;
    LagSet tr;
    LagSet fer;
};

/// Splits the non-negative coarray around the transfer sub-ULA (zero-based
/// index). The left group is every sub-ULA before it, the right group every one
/// after it. Throws DomainError for an out-of-range index.
LagPartition partition(const SparseArray& array, std::size_t transferIndex);

/// Coefficient-free sum: set union.
LagSet tildePlus(std::span<const Lag> a, std::span<const Lag> b);
/// Coefficient-free product: sumset {x + y}.
LagSet tildeTimes(std::span<const Lag> a, std::span<const Lag> b);

/// (N^2 + beta)/2 + 1 with beta = -1 for odd N and 0 for even N. Requires N >= 2.
std::int64_t lowerBoundUdof(std::int64_t n);

/// `interspace` interleaved sub-ULAs with that interspace tiling 0..targetLength-1.
/// targetLength must be a multiple of interspace.
std::vector<SubUla> baseLayerCover(Position interspace, std::int64_t targetLength);

/// Sum of the SDCAs of the given sub-ULAs (cross terms through gaps left out).
LagPolynomial selfWeights(std::span<const SubUla> subs);

} // namespace ulafit
