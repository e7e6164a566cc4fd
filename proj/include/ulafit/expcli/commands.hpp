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

#include "ulafit/coupling.hpp"
#include "ulafit/expcli/config.hpp"
#include "ulafit/expcli/manifest.hpp"
#include "ulafit/geometry.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace ulafit::expcli {

/// One integer per line, ascending and distinct; blank lines and '#' comments
/// are ignored. Throws ConfigError on malformed input.
PositionSet readPositionsFile(const std::string& path);

void cmdDesign(const std::string& geometry, const std::string& size, std::ostream& out);
void cmdAnalyze(const std::string& positionsFile, std::ostream& out);
void cmdCoupling(const std::string& geometry, const std::string& size, const CouplingModel& model,
                 std::ostream& out);

struct RunSummary {
    std::filesystem::path manifest;
    std::vector<OutputRecord> outputs;
};

/// Runs a sweep experiment, writes its CSV files and then manifest.json.
/// On any failure the files written so far are removed and the error is rethrown.
RunSummary cmdSweep(const ExperimentConfig& config, std::ostream& log);

/// Single realization of the DOA scenario for the first configured geometry at
/// `config.n` sensors: writes spectrum.csv and estimates.csv, then the manifest.
RunSummary cmdIdentify(const ExperimentConfig& config, std::ostream& log);

/// Prints the feasible gap tuples (at most `limit`, 0 for all).
void cmdSearchGaps(const GapSearchFile& spec, std::size_t limit, std::ostream& out);

} // namespace ulafit::expcli
