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

#include "ulafit/expcli/manifest.hpp"

#include "ulafit/error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <fstream>

namespace ulafit::expcli {

namespace fs = std::filesystem;

std::string sha256Hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw OutputError("SHA-256 computation failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xF];
    }
    return out;
}

namespace {

std::string isoUtc(std::chrono::system_clock::time_point t)
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void writeFile(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw OutputError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out)
        throw OutputError("failed writing '" + path.string() + "'");
}

} // namespace

ResultWriter::ResultWriter(fs::path directory)
    : dir_(std::move(directory)), started_(std::chrono::system_clock::now()),
      startedSteady_(std::chrono::steady_clock::now())
{
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
        throw OutputError("cannot create output directory '" + dir_.string() + "'" +
                          (ec ? ": " + ec.message() : ""));
    const fs::path probe = dir_ / ".ulafit-write-probe";
    {
        std::ofstream out(probe);
        if (!out)
            throw OutputError("output directory '" + dir_.string() + "' is not writable");
    }
    fs::remove(probe, ec);
    fs::remove(dir_ / kManifestName, ec);
}

ResultWriter::~ResultWriter()
{
    if (!committed_)
        discard();
}

void ResultWriter::write(const std::string& file, const std::string& content, std::size_t rows,
                         const std::string& provenance)
{
    const fs::path path = dir_ / file;
    written_.push_back(path);
    writeFile(path, content);
    outputs_.push_back({file, rows, sha256Hex(content), provenance});
}

fs::path ResultWriter::commit(const std::string& experiment, std::uint64_t seed,
                              const std::map<std::string, std::string>& config)
{
    nlohmann::ordered_json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["experiment"] = experiment;
    m["seed"] = seed;
    m["config"] = config;
    m["started_utc"] = isoUtc(started_);
    m["finished_utc"] = isoUtc(std::chrono::system_clock::now());
    m["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - startedSteady_).count();
    m["outputs"] = nlohmann::ordered_json::array();
    for (const OutputRecord& r : outputs_)
        m["outputs"].push_back({{"file", r.file},
                                {"rows", r.rows},
                                {"sha256", r.sha256},
                                {"provenance", r.provenance}});

    const fs::path tmp = dir_ / (std::string(kManifestName) + ".tmp");
    const fs::path final = dir_ / kManifestName;
    written_.push_back(tmp);
    writeFile(tmp, m.dump(2) + "\n");
    std::error_code ec;
    fs::rename(tmp, final, ec);
    if (ec)
        throw OutputError("cannot finalize manifest: " + ec.message());
    committed_ = true;
    return final;
}

void ResultWriter::discard() noexcept
{
    std::error_code ec;
    for (const fs::path& p : written_)
        fs::remove(p, ec);
    written_.clear();
    outputs_.clear();
}

} // namespace ulafit::expcli
