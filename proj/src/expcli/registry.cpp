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

#include "ulafit/expcli/registry.hpp"

#include "ulafit/coarray.hpp"
#include "ulafit/error.hpp"

#include <charconv>
#include <numeric>

namespace ulafit::expcli {

namespace {

std::int64_t parseCount(const std::string& text)
{
    std::int64_t v = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw DomainError("cannot parse '" + text + "' as a sensor count");
    return v;
}

std::optional<std::pair<std::int64_t, std::int64_t>> parsePair(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        return std::nullopt;
    return std::pair{parseCount(text.substr(0, comma)), parseCount(text.substr(comma + 1))};
}

void requireKnown(const std::string& name)
{
    if (!isKnownGeometry(name))
        throw DomainError("unknown geometry '" + name + "' (known: uf3bl, uf4bl, nested, coprime)");
}

} // namespace

bool isKnownGeometry(const std::string& name)
{
    return name == "uf3bl" || name == "uf4bl" || name == "nested" || name == "coprime";
}

std::int64_t minimumSensors(const std::string& name)
{
    requireKnown(name);
    if (name == "uf3bl")
        return kMinSensors3BL;
    if (name == "uf4bl")
        return kMinSensors4BL;
    if (name == "nested")
        return 2;
    return 3;
}

SparseArray nestedFor(std::int64_t n)
{
    if (n < 2)
        throw BelowMinimum("nested", n, 2);
    return nested(n / 2, n - n / 2);
}

std::pair<std::int64_t, std::int64_t> coprimePairFor(std::int64_t n)
{
    if (n < 3)
        throw BelowMinimum("coprime", n, 3);
    std::pair<std::int64_t, std::int64_t> best{0, 0};
    std::int64_t bestUdof = -1;
    for (std::int64_t m = 1;; ++m) {
        const std::int64_t other = n - 2 * m + 1;
        if (other <= m)
            break;
        if (std::gcd(m, other) != 1)
            continue;
        const std::int64_t u = report(coprime(m, other)).udof;
        if (u > bestUdof) {
            bestUdof = u;
            best = {m, other};
        }
    }
    return best;
}

std::optional<SparseArray> buildArray(const std::string& name, std::int64_t n)
{
    requireKnown(name);
    if (name == "uf3bl")
        return uf3bl(n);
    if (name == "uf4bl")
        return uf4bl(n);
    if (name == "nested")
        return nestedFor(n);
    if (n < 3)
        throw BelowMinimum("coprime", n, 3);
    return std::nullopt;
}

PositionSet buildPositions(const std::string& name, std::int64_t n)
{
    if (auto array = buildArray(name, n))
        return positions(*array);
    const auto [m, other] = coprimePairFor(n);
    return coprime(m, other);
}

std::optional<SparseArray> buildArray(const std::string& name, const std::string& size)
{
    requireKnown(name);
    if (const auto pair = parsePair(size)) {
        if (name == "nested")
            return nested(pair->first, pair->second);
        if (name == "coprime") {
            (void)coprime(pair->first, pair->second);
            return std::nullopt;
        }
        throw DomainError(name + " takes a sensor count, not a parameter pair");
    }
    return buildArray(name, parseCount(size));
}

PositionSet buildPositions(const std::string& name, const std::string& size)
{
    requireKnown(name);
    if (const auto pair = parsePair(size); pair && name == "coprime")
        return coprime(pair->first, pair->second);
    if (auto array = buildArray(name, size))
        return positions(*array);
    return buildPositions(name, parseCount(size));
}

} // namespace ulafit::expcli
