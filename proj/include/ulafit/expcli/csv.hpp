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
#include <string>
#include <vector>

namespace ulafit::expcli {

/// Shortest text that reads back to the same double ("inf", "-inf", "nan" for
/// non-finite values).
std::string formatDouble(double v);

/// In-memory CSV table: one header row, comma separated, LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable& row();
    CsvTable& cell(const std::string& text);
    CsvTable& cell(double v);
    CsvTable& cell(std::int64_t v);
    CsvTable& cell(int v) { return cell(static_cast<std::int64_t>(v)); }

    std::size_t rowCount() const noexcept { return rows_.size(); }
    /// Throws OutputError if a row has the wrong width.
    std::string render() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace ulafit::expcli
