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

#include "ulafit/gap_search.hpp"

#include "ulafit/error.hpp"

#include <charconv>
#include <limits>
#include <string>

namespace ulafit {

namespace {

std::int64_t parseInt(std::string_view text, std::string_view token)
{
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size() || v < 1)
        throw DomainError("bad layer token '" + std::string(token) + "'");
    return v;
}

std::vector<std::string_view> splitTokens(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',' ||
                                   text[i] == '>' || text[i] == '-'))
            ++i;
        const std::size_t start = i;
        while (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == ',' ||
                                    text[i] == '>' || text[i] == '-'))
            ++i;
        if (i > start)
            out.push_back(text.substr(start, i - start));
    }
    return out;
}

} // namespace

GapSearchSpec parseLayerSequence(std::string_view tokens, std::int64_t baseCount,
                                 std::int64_t transferCount,
                                 std::optional<Position> transferInterspace)
{
    if (baseCount < 1 || transferCount < 1)
        throw DomainError("layer sequence needs N_b >= 1 and N_t >= 1");
    GapSearchSpec spec;
    std::optional<std::size_t> transfer;
    std::int64_t baseLayers = 0;
    std::int64_t additionSensors = 0;
    for (std::string_view tok : splitTokens(tokens)) {
        const char kind = tok.front();
        const std::string_view rest = tok.substr(1);
        if (kind == 'T' && rest.empty()) {
            if (transfer)
                throw DomainError("layer sequence has more than one transfer sub-ULA");
            transfer = spec.sequence.size();
            spec.sequence.push_back({0, transferCount});
        } else if (kind == 'B') {
            spec.sequence.push_back({parseInt(rest, tok), baseCount});
            ++baseLayers;
        } else if (kind == 'A') {
            spec.sequence.push_back({parseInt(rest, tok), 2});
            additionSensors += 2;
        } else if (kind == 'U') {
            const std::size_t x = rest.find('x');
            if (x == std::string_view::npos)
                throw DomainError("bad layer token '" + std::string(tok) + "'");
            spec.sequence.push_back({parseInt(rest.substr(0, x), tok),
                                     parseInt(rest.substr(x + 1), tok)});
        } else {
            throw DomainError("bad layer token '" + std::string(tok) + "'");
        }
    }
    if (!transfer)
        throw DomainError("layer sequence needs exactly one transfer sub-ULA 'T'");
    spec.transferIndex = *transfer;
    spec.sequence[*transfer].interspace =
        transferInterspace.value_or(baseLayers * baseCount + additionSensors + 1);
    if (spec.sequence[*transfer].interspace < 1)
        throw DomainError("transfer interspace must be >= 1");
    return spec;
}

SparseArray assemble(std::span<const SubUlaShape> sequence, std::span<const Position> gaps)
{
    if (sequence.empty())
        throw EmptyInput("cannot assemble an empty sub-ULA sequence");
    if (gaps.size() + 1 != sequence.size())
        throw DomainError("need " + std::to_string(sequence.size() - 1) + " gaps, got " +
                          std::to_string(gaps.size()));
    std::vector<SubUla> subs;
    Position start = 0;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (i > 0)
            start = subs.back().last() + gaps[i - 1];
        subs.push_back(SubUla::make(start, sequence[i].interspace, sequence[i].count));
    }
    return SparseArray(std::move(subs));
}

namespace {

class GapEnumerator {
public:
    explicit GapEnumerator(const GapSearchSpec& spec) : spec_(spec)
    {
        Position maxExtent = 0;
        for (const SubUlaShape& s : spec.sequence)
            maxExtent += s.aperture();
        maxExtent += static_cast<Position>(spec.sequence.size() - 1) * spec.maxGap;
        counts_.assign(static_cast<std::size_t>(maxExtent + 1), 0);
        for (const SubUlaShape& s : spec.sequence)
            for (std::int64_t m = 1; m < s.count; ++m)
                counts_[static_cast<std::size_t>(m * s.interspace)] += s.count - m;
        gaps_.resize(spec.sequence.size() - 1);
    }

    GapSearchResult run()
    {
        place(0, 0);
        return std::move(result_);
    }

private:
    void place(std::size_t k, Position start)
    {
        const SubUlaShape& shape = spec_.sequence[k];
        const std::size_t before = placed_.size();
        if (k == spec_.transferIndex)
            transferStart_ = start;
        for (std::int64_t i = 0; i < shape.count; ++i) {
            const Position q = start + i * shape.interspace;
            for (std::size_t j = 0; j < before; ++j)
                ++counts_[static_cast<std::size_t>(q - placed_[j])];
        }
        for (std::int64_t i = 0; i < shape.count; ++i)
            placed_.push_back(start + i * shape.interspace);

        if (k + 1 == spec_.sequence.size()) {
            leaf();
        } else {
            const Position last = start + shape.aperture();
            for (Position g = spec_.minGap; g <= spec_.maxGap; ++g) {
                gaps_[k] = g;
                place(k + 1, last + g);
            }
        }

        placed_.resize(before);
        for (std::int64_t i = 0; i < shape.count; ++i) {
            const Position q = start + i * shape.interspace;
            for (std::size_t j = 0; j < before; ++j)
                --counts_[static_cast<std::size_t>(q - placed_[j])];
        }
    }

    void leaf()
    {
        ++result_.evaluated;
        const SubUlaShape& t = spec_.sequence[spec_.transferIndex];
        Position reach = t.aperture();
        if (spec_.target == CoverageTarget::TransferEnd)
            reach += transferStart_;
        if (reach >= static_cast<Position>(counts_.size()))
            return;
        for (Position n = 1; n <= reach; ++n)
            if (counts_[static_cast<std::size_t>(n)] == 0)
                return;
        result_.solutions.push_back(gaps_);
    }

    const GapSearchSpec& spec_;
    std::vector<std::int64_t> counts_;
    std::vector<Position> placed_;
    std::vector<Position> gaps_;
    Position transferStart_ = 0;
    GapSearchResult result_;
};

} // namespace

GapSearchResult searchGaps(const GapSearchSpec& spec)
{
    if (spec.sequence.empty())
        throw EmptyInput("gap search needs at least one sub-ULA");
    if (spec.sequence.size() > kMaxSearchSubUlas)
        throw PreconditionViolation("gap search supports at most " +
                                    std::to_string(kMaxSearchSubUlas) + " sub-ULAs");
    if (spec.maxGap > kMaxSearchGap)
        throw PreconditionViolation("gap search supports maxGap <= " +
                                    std::to_string(kMaxSearchGap));
    if (spec.minGap < 1 || spec.minGap > spec.maxGap)
        throw DomainError("gap bounds need 1 <= minGap <= maxGap");
    if (spec.transferIndex >= spec.sequence.size())
        throw DomainError("transfer index out of range");
    for (const SubUlaShape& s : spec.sequence)
        if (s.interspace < 1 || s.count < 1)
            throw DomainError("sub-ULA shapes need interspace >= 1 and count >= 1");

    const std::uint64_t width = static_cast<std::uint64_t>(spec.maxGap - spec.minGap + 1);
    std::uint64_t tuples = 1;
    for (std::size_t i = 1; i < spec.sequence.size(); ++i) {
        if (tuples > spec.nodeBudget / width + 1)
            tuples = std::numeric_limits<std::uint64_t>::max();
        else
            tuples *= width;
    }
    if (tuples > spec.nodeBudget)
        throw SearchBudgetExceeded("gap search needs " +
                                   (tuples == std::numeric_limits<std::uint64_t>::max()
                                        ? std::string("more than ") + std::to_string(spec.nodeBudget)
                                        : std::to_string(tuples)) +
                                   " candidates, budget is " + std::to_string(spec.nodeBudget));

    return GapEnumerator(spec).run();
}

} // namespace ulafit
