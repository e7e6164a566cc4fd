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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ulafit::expcli {

inline constexpr const char* kToolName = "ulafit";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kManifestName = "manifest.json";

/// Lower-case hex SHA-256 digest.
std::string sha256Hex(std::string_view data);

struct OutputRecord {
    std::string file;
    std::size_t rows = 0;
    std::string sha256;
    /// How every row was produced, in terms of library calls.
    std::string provenance;
};

/// Collects the files of one run and writes manifest.json last.
///
/// Files are written as they are added. `commit` writes the manifest through a
/// temporary file and a rename. If the writer is destroyed without a commit,
/// every file it wrote is removed.
class ResultWriter {
public:
    /// Creates the directory if needed; throws OutputError when it is not writable.
    explicit ResultWriter(std::filesystem::path directory);
    ~ResultWriter();
    ResultWriter(const ResultWriter&) = delete;
    ResultWriter& operator=(const ResultWriter&) = delete;

    void write(const std::string& file, const std::string& content, std::size_t rows,
               const std::string& provenance);

    /// Returns the manifest path.
    std::filesystem::path commit(const std::string& experiment, std::uint64_t seed,
                                 const std::map<std::string, std::string>& config);

    void discard() noexcept;

    const std::filesystem::path& directory() const noexcept { return dir_; }
    const std::vector<OutputRecord>& outputs() const noexcept { return outputs_; }

private:
    std::filesystem::path dir_;
    std::vector<OutputRecord> outputs_;
    std::vector<std::filesystem::path> written_;
    std::chrono::system_clock::time_point started_;
    std::chrono::steady_clock::time_point startedSteady_;
    bool committed_ = false;
};

} // namespace ulafit::expcli
