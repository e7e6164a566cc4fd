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
#include <map>
#include <string>
#include <vector>

namespace ulafit::expcli {

enum class ExperimentKind {
    UdofSweep,
    EfficiencySweep,
    LeakageSweep,
    Identifiability,
    RmseVsSnr,
    RmseVsSources,
    RmseVsC1,
};

std::string toString(ExperimentKind kind);
/// Throws ConfigError for unknown names.
ExperimentKind parseExperimentKind(const std::string& name);

/// Raw key -> values view of a flat config document (lists keep every element).
using ConfigValues = std::map<std::string, std::vector<std::string>>;

/// Reads `key = value` lines (TOML subset: comments, quoted strings, [a, b] lists).
/// Throws ConfigError when the file cannot be read or parsed.
ConfigValues readConfigFile(const std::string& path);

/// Parses `key=value` overrides; list values are comma separated.
ConfigValues parseOverrides(const std::vector<std::string>& assignments);

/// `overrides` entries replace `base` entries with the same key.
ConfigValues merge(ConfigValues base, const ConfigValues& overrides);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::UdofSweep;
    std::vector<std::string> geometries{"uf3bl", "uf4bl", "nested", "coprime"};

    std::int64_t nMin = 17;
    std::int64_t nMax = 60;
    std::int64_t nStep = 1;
    /// Sensor count for the DOA experiments.
    std::int64_t n = 17;

    double c1Mag = 0.5;
    double c1Phase = 1.0471975511965976;
    std::int64_t band = 100;

    std::int64_t sources = 30;
    double angleMin = -60.0;
    double angleMax = 60.0;
    double snrDb = 0.0;
    std::int64_t snapshots = 500;
    std::int64_t trials = 500;
    double gridStep = 0.01;
    double gate = 1.0;
    bool coupling = false;
    std::vector<double> snrValues{-10.0, 0.0, 10.0};
    std::vector<std::int64_t> sourceValues{10, 20, 30};
    std::vector<double> c1Values{0.1, 0.2, 0.3, 0.4, 0.5};

    std::uint64_t seed = 0;
    std::string outputDir = "results";
    unsigned threads = 0;

    /// Throws ConfigError on an empty range, unknown geometry or out-of-domain value.
    void validate() const;
    /// Resolved settings as key -> text, for the manifest echo.
    std::map<std::string, std::string> echo() const;
};

/// Builds a validated config; unknown keys and malformed values raise ConfigError.
ExperimentConfig makeExperimentConfig(const ConfigValues& values);

/// Flat key list shared by the gap-search spec files.
struct GapSearchFile {
    std::string layers;
    std::int64_t baseCount = 2;
    std::int64_t transferCount = 3;
    std::int64_t transferInterspace = 0; ///< 0 selects the default rule
    std::int64_t minGap = 1;
    std::int64_t maxGap = 10;
    std::uint64_t nodeBudget = 10'000'000;
    std::string coverage = "aperture"; ///< "aperture" or "end"
};

GapSearchFile makeGapSearchFile(const ConfigValues& values);

} // namespace ulafit::expcli
