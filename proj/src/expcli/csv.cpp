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

#include "ulafit/expcli/csv.hpp"

#include "ulafit/error.hpp"

#include <charconv>
#include <cmath>

namespace ulafit::expcli {

std::string formatDouble(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw OutputError("cannot format a double");
    return std::string(buf, ptr);
}

namespace {

std::string quoted(const std::string& text)
{
    if (text.find_first_of(",\"\n\r") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row()
{
    rows_.emplace_back();
    return *this;
}

CsvTable& CsvTable::cell(const std::string& text)
{
    if (rows_.empty())
        rows_.emplace_back();
    rows_.back().push_back(quoted(text));
    return *this;
}

CsvTable& CsvTable::cell(double v)
{
    return cell(formatDouble(v));
}

CsvTable& CsvTable::cell(std::int64_t v)
{
    return cell(std::to_string(v));
}

std::string CsvTable::render() const
{
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    std::vector<std::string> head;
    for (const std::string& h : header_)
        head.push_back(quoted(h));
    line(head);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() != header_.size())
            throw OutputError("CSV row " + std::to_string(r + 1) + " has " +
                              std::to_string(rows_[r].size()) + " cells, expected " +
                              std::to_string(header_.size()));
        line(rows_[r]);
    }
    return out;
}

} // namespace ulafit::expcli
