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

#include "ulafit/error.hpp"
#include "ulafit/expcli/commands.hpp"
#include "ulafit/expcli/config.hpp"
#include "ulafit/expcli/manifest.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <numbers>
#include <optional>

using namespace ulafit;
using namespace ulafit::expcli;

namespace {

struct RunFlags {
    std::string configFile;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> outputDir;
    std::optional<std::int64_t> trials;
    std::optional<unsigned> threads;
};

void addRunFlags(CLI::App* cmd, RunFlags& f)
{
    cmd->add_option("config", f.configFile, "Experiment config file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--set", f.sets, "Override a config key (key=value, lists comma separated)");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--output-dir", f.outputDir, "Output directory");
    cmd->add_option("--trials", f.trials, "Monte-Carlo trials per point");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

ExperimentConfig resolveConfig(const RunFlags& f)
{
    ConfigValues overrides = parseOverrides(f.sets);
    if (f.seed)
        overrides["seed"] = {std::to_string(*f.seed)};
    if (f.outputDir)
        overrides["output_dir"] = {*f.outputDir};
    if (f.trials)
        overrides["trials"] = {std::to_string(*f.trials)};
    if (f.threads)
        overrides["threads"] = {std::to_string(*f.threads)};
    return makeExperimentConfig(merge(readConfigFile(f.configFile), overrides));
}

void printSummary(const RunSummary& s)
{
    for (const OutputRecord& r : s.outputs)
        std::cout << "wrote " << r.file << " (" << r.rows << " rows)\n";
    std::cout << "manifest: " << s.manifest.string() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sparse-array design, coarray analysis and DOA experiments"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    std::string geometry;
    std::string size;
    auto* design = app.add_subcommand("design", "Build a geometry and report its coarray");
    design->add_option("geometry", geometry, "uf3bl, uf4bl, nested or coprime")->required();
    design->add_option("n", size, "Sensor count, or n1,n2 for nested / m,n for coprime")->required();

    std::string positionsFile;
    auto* analyze = app.add_subcommand("analyze", "Report the coarray of a positions file");
    analyze->add_option("positions", positionsFile, "One integer position per line")
        ->required()
        ->check(CLI::ExistingFile);

    double c1Mag = 0.5;
    double c1Phase = std::numbers::pi / 3.0;
    std::int64_t band = CouplingModel::kDefaultBand;
    auto* coupling = app.add_subcommand("coupling", "Coupling leakage of a geometry");
    coupling->add_option("geometry", geometry, "uf3bl, uf4bl, nested or coprime")->required();
    coupling->add_option("n", size, "Sensor count, or a parameter pair")->required();
    coupling->add_option("--c1-mag", c1Mag, "|c1|")->capture_default_str();
    coupling->add_option("--c1-phase", c1Phase, "arg(c1) in radians")->capture_default_str();
    coupling->add_option("--band", band, "Coupling band B")->capture_default_str();

    RunFlags sweepFlags;
    auto* sweep = app.add_subcommand("sweep", "Run a sweep experiment from a config file");
    addRunFlags(sweep, sweepFlags);

    RunFlags identifyFlags;
    auto* identify = app.add_subcommand("identify", "Spectrum and estimates of one DOA realization");
    addRunFlags(identify, identifyFlags);

    std::string specFile;
    std::size_t limit = 50;
    std::vector<std::string> specSets;
    auto* search = app.add_subcommand("search-gaps", "Enumerate feasible adjacent gaps");
    search->add_option("spec", specFile, "Gap-search spec file")->required()->check(CLI::ExistingFile);
    search->add_option("--limit", limit, "Print at most this many tuples (0 = all)")->capture_default_str();
    search->add_option("--set", specSets, "Override a spec key (key=value)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*design) {
            cmdDesign(geometry, size, std::cout);
        } else if (*analyze) {
            cmdAnalyze(positionsFile, std::cout);
        } else if (*coupling) {
            cmdCoupling(geometry, size, CouplingModel::fromPolar(c1Mag, c1Phase, band), std::cout);
        } else if (*sweep) {
            printSummary(cmdSweep(resolveConfig(sweepFlags), std::cerr));
        } else if (*identify) {
            printSummary(cmdIdentify(resolveConfig(identifyFlags), std::cerr));
        } else if (*search) {
            const GapSearchFile spec =
                makeGapSearchFile(merge(readConfigFile(specFile), parseOverrides(specSets)));
            cmdSearchGaps(spec, limit, std::cout);
        }
    } catch (const ulafit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
