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

#include "ulafit/error.hpp"

#include <algorithm>
#include <iterator>

namespace ulafit {

// ---------------------------------------------------------------- LagPolynomial

std::int64_t LagPolynomial::operator[](Lag n) const noexcept
{
    const Lag i = n - offset_;
    if (i < 0 || i >= static_cast<Lag>(coeffs_.size()))
        return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

void LagPolynomial::reserveRange(Lag lo, Lag hi)
{
    if (coeffs_.empty()) {
        offset_ = lo;
        coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), 0);
        return;
    }
    const Lag curHi = offset_ + static_cast<Lag>(coeffs_.size()) - 1;
    if (lo < offset_) {
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(offset_ - lo), 0);
        offset_ = lo;
    }
    if (hi > curHi)
        coeffs_.resize(coeffs_.size() + static_cast<std::size_t>(hi - curHi), 0);
}

void LagPolynomial::add(Lag n, std::int64_t count)
{
    reserveRange(n, n);
    coeffs_[static_cast<std::size_t>(n - offset_)] += count;
}

LagPolynomial& LagPolynomial::operator+=(const LagPolynomial& other)
{
    if (other.coeffs_.empty())
        return *this;
    reserveRange(other.offset_, other.offset_ + static_cast<Lag>(other.coeffs_.size()) - 1);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[static_cast<std::size_t>(other.offset_ - offset_) + i] += other.coeffs_[i];
    return *this;
}

bool LagPolynomial::isZero() const noexcept
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

Lag LagPolynomial::minLag() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return offset_ + static_cast<Lag>(i);
    throw EmptyInput("zero polynomial has no minimum lag");
}

Lag LagPolynomial::maxLag() const
{
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        if (coeffs_[i] != 0)
            return offset_ + static_cast<Lag>(i);
    throw EmptyInput("zero polynomial has no maximum lag");
}

LagSet LagPolynomial::support() const
{
    LagSet out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            out.push_back(offset_ + static_cast<Lag>(i));
    return out;
}

LagSet LagPolynomial::nonNegativeSupport() const
{
    LagSet out = support();
    out.erase(out.begin(), std::lower_bound(out.begin(), out.end(), Lag{0}));
    return out;
}

std::size_t LagPolynomial::termCount() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c != 0; }));
}

std::int64_t LagPolynomial::total() const noexcept
{
    std::int64_t s = 0;
    for (std::int64_t c : coeffs_)
        s += c;
    return s;
}

bool LagPolynomial::isSymmetric() const noexcept
{
    if (coeffs_.empty())
        return true;
    const Lag lo = offset_;
    const Lag hi = offset_ + static_cast<Lag>(coeffs_.size()) - 1;
    const Lag reach = std::max(-lo, hi);
    for (Lag n = 1; n <= reach; ++n)
        if ((*this)[n] != (*this)[-n])
            return false;
    return true;
}

LagPolynomial LagPolynomial::reflected() const
{
    LagPolynomial out;
    if (coeffs_.empty())
        return out;
    const Lag hi = offset_ + static_cast<Lag>(coeffs_.size()) - 1;
    out.offset_ = -hi;
    out.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return out;
}

bool operator==(const LagPolynomial& a, const LagPolynomial& b) noexcept
{
    const Lag lo = std::min(a.offset_, b.offset_);
    const Lag hi = std::max(a.offset_ + static_cast<Lag>(a.coeffs_.size()),
                            b.offset_ + static_cast<Lag>(b.coeffs_.size()));
    for (Lag n = lo; n < hi; ++n)
        if (a[n] != b[n])
            return false;
    return true;
}

// ---------------------------------------------------------------- weight function

LagPolynomial weightFunction(std::span<const Position> positions)
{
    if (positions.empty())
        throw EmptyInput("weight function of an empty position set");
    LagPolynomial w;
    const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
    const Lag span = *hi - *lo;
    w.add(-span, 0);
    w.add(span, 0);
    for (Position p : positions)
        for (Position q : positions)
            w.add(p - q);
    return w;
}

std::int64_t consecutiveExtent(const LagPolynomial& weights)
{
    if (weights[0] == 0)
        return -1;
    std::int64_t j = 0;
    while (weights[j + 1] != 0)
        ++j;
    return j;
}

std::int64_t consecutiveExtent(std::span<const Lag> lags)
{
    auto it = std::lower_bound(lags.begin(), lags.end(), Lag{0});
    if (it == lags.end() || *it != 0)
        return -1;
    std::int64_t j = 0;
    for (++it; it != lags.end() && *it == j + 1; ++it)
        ++j;
    return j;
}

CoarrayReport report(std::span<const Position> positions)
{
    if (positions.empty())
        throw EmptyInput("coarray report of an empty position set");
    const Position lo = *std::min_element(positions.begin(), positions.end());
    if (lo != 0)
        throw PreconditionViolation("coarray report expects normalized positions (min = 0)");
    const Position aperture = *std::max_element(positions.begin(), positions.end());

    const LagPolynomial w = weightFunction(positions);
    CoarrayReport r;
    r.dof = static_cast<std::int64_t>(w.termCount());
    r.jValue = consecutiveExtent(w);
    r.udof = 2 * r.jValue + 1;
    r.holeFree = r.jValue == aperture;
    r.spatialEfficiency = aperture == 0 ? Rational{1, 1} : Rational{r.jValue, aperture};
    for (std::size_t k = 0; k < r.firstWeights.size(); ++k)
        r.firstWeights[k] = w[static_cast<Lag>(k + 1)];
    return r;
}

// ---------------------------------------------------------------- SDCA / IDCA

LagPolynomial sdca(const SubUla& sub)
{
    LagPolynomial w;
    for (std::int64_t m = -(sub.count - 1); m <= sub.count - 1; ++m)
        w.add(m * sub.interspace, sub.count - (m < 0 ? -m : m));
    return w;
}

LagPolynomial idca(const SubUla& a, const SubUla& b)
{
    LagPolynomial w;
    const PositionSet pa = a.positions();
    const PositionSet pb = b.positions();
    w.add(pb.front() - pa.back(), 0);
    w.add(pb.back() - pa.front(), 0);
    for (Position q : pb)
        for (Position p : pa)
            w.add(q - p);
    return w;
}

LagPolynomial CoarrayDecomposition::total() const
{
    LagPolynomial sum;
    for (const LagPolynomial& s : sdcas)
        sum += s;
    for (const Idca& d : idcas)
        sum += d.lags;
    return sum;
}

CoarrayDecomposition decompose(const SparseArray& array)
{
    CoarrayDecomposition out;
    const auto& subs = array.subUlas();
    for (const SubUla& s : subs)
        out.sdcas.push_back(sdca(s));
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = 0; j < subs.size(); ++j)
            if (i != j)
                out.idcas.push_back({i, j, idca(subs[i], subs[j])});
    return out;
}

// ---------------------------------------------------------------- partition

LagPartition partition(const SparseArray& array, std::size_t transferIndex)
{
    const auto& subs = array.subUlas();
    if (transferIndex >= subs.size())
        throw DomainError("transfer index " + std::to_string(transferIndex) +
                          " out of range for " + std::to_string(subs.size()) + " sub-ULAs");
    const std::size_t m = transferIndex;
    LagPartition out;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const LagSet self = sdca(subs[i]).nonNegativeSupport();
        if (i == m)
            out.tr = tildePlus(out.tr, self);
        else
            out.ner = tildePlus(out.ner, self);
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (std::size_t j = i + 1; j < subs.size(); ++j) {
            const LagSet cross = idca(subs[i], subs[j]).support();
            if (i == m || j == m)
                out.tr = tildePlus(out.tr, cross);
            else if (i < m && j > m)
                out.fer = tildePlus(out.fer, cross);
            else
                out.ner = tildePlus(out.ner, cross);
        }
    }
    return out;
}

// ---------------------------------------------------------------- tilde operators

LagSet tildePlus(std::span<const Lag> a, std::span<const Lag> b)
{
    LagSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LagSet tildeTimes(std::span<const Lag> a, std::span<const Lag> b)
{
    LagSet out;
    out.reserve(a.size() * b.size());
    for (Lag x : a)
        for (Lag y : b)
            out.push_back(x + y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- bounds, base layers

std::int64_t lowerBoundUdof(std::int64_t n)
{
    if (n < 2)
        throw DomainError("uDOF lower bound needs N >= 2");
    const std::int64_t beta = (n % 2 != 0) ? -1 : 0;
    return (n * n + beta) / 2 + 1;
}

std::vector<SubUla> baseLayerCover(Position interspace, std::int64_t targetLength)
{
    if (interspace < 1 || targetLength < 1 || targetLength % interspace != 0)
        throw DomainError("target length must be a positive multiple of the interspace");
    std::vector<SubUla> out;
    for (Position offset = 0; offset < interspace; ++offset)
        out.push_back(SubUla::make(offset, interspace, targetLength / interspace));
    return out;
}

LagPolynomial selfWeights(std::span<const SubUla> subs)
{
    LagPolynomial sum;
    for (const SubUla& s : subs)
        sum += sdca(s);
    return sum;
}

} // namespace ulafit
