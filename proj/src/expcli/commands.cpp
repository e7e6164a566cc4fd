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

#include "ulafit/expcli/commands.hpp"

#include "ulafit/coarray.hpp"
#include "ulafit/doa_sim.hpp"
#include "ulafit/error.hpp"
#include "ulafit/expcli/csv.hpp"
#include "ulafit/expcli/registry.hpp"
#include "ulafit/gap_search.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>

namespace ulafit::expcli {

PositionSet readPositionsFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open positions file '" + path + "'");
    PositionSet out;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string text = line.substr(first, last - first + 1);
        Position p = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw ConfigError(path + ":" + std::to_string(lineNo) + ": not an integer: '" + text + "'");
        if (!out.empty() && p <= out.back())
            throw ConfigError(path + ":" + std::to_string(lineNo) +
                              ": positions must be strictly ascending");
        out.push_back(p);
    }
    if (out.empty())
        throw EmptyInput("positions file '" + path + "' has no positions");
    return out;
}

namespace {

template <class Range>
std::string joined(const Range& values, const char* sep = " ")
{
    std::string out;
    bool first = true;
    for (const auto& v : values) {
        if (!first)
            out += sep;
        out += std::to_string(v);
        first = false;
    }
    return out;
}

void printReport(const PositionSet& pos, std::ostream& out)
{
    const CoarrayReport r = report(pos);
    out << "sensors: " << pos.size() << "\n"
        << "positions: " << joined(pos) << "\n"
        << "aperture: " << pos.back() << "\n"
        << "DOF: " << r.dof << "\n"
        << "uDOF: " << r.udof << "\n"
        << "J: " << r.jValue << "\n"
        << "hole-free: " << (r.holeFree ? "yes" : "no") << "\n"
        << "spatial efficiency: " << r.spatialEfficiency.num << "/" << r.spatialEfficiency.den
        << " (" << formatDouble(r.spatialEfficiency.value()) << ")\n"
        << "w(1..4): " << joined(r.firstWeights) << "\n";
}

} // namespace

void cmdDesign(const std::string& geometry, const std::string& size, std::ostream& out)
{
    const std::optional<SparseArray> array = buildArray(geometry, size);
    const PositionSet pos = buildPositions(geometry, size);
    out << "geometry: " << geometry << " " << size << "\n";
    if (array) {
        out << "sub-ULAs:";
        for (const SubUla& s : array->subUlas())
            out << " " << toString(s);
        out << "\n";
        out << "gaps: " << joined(array->gaps()) << "\n";
    } else {
        out << "sub-ULAs: none (interleaved progressions)\n";
    }
    printReport(pos, out);
}

void cmdAnalyze(const std::string& positionsFile, std::ostream& out)
{
    const PositionSet raw = readPositionsFile(positionsFile);
    const PositionSet pos = normalize(raw);
    if (raw.front() != 0)
        out << "note: positions shifted by " << -raw.front() << " to start at 0\n";
    printReport(pos, out);
}

void cmdCoupling(const std::string& geometry, const std::string& size, const CouplingModel& model,
                 std::ostream& out)
{
    const PositionSet pos = buildPositions(geometry, size);
    const Eigen::MatrixXcd c = couplingMatrix(pos, model);
    out << "geometry: " << geometry << " " << size << "\n"
        << "sensors: " << pos.size() << "\n"
        << "c1: " << formatDouble(std::abs(model.c1())) << " at "
        << formatDouble(std::arg(model.c1())) << " rad\n"
        << "band: " << model.band() << "\n"
        << "leakage: " << formatDouble(couplingLeakage(c)) << "\n";
}

namespace {

struct Point {
    std::string geometry;
    std::int64_t n;
    PositionSet positions;
};

std::vector<Point> rangePoints(const ExperimentConfig& c, std::ostream& log)
{
    std::vector<Point> out;
    for (const std::string& g : c.geometries) {
        for (std::int64_t n = c.nMin; n <= c.nMax; n += c.nStep) {
            if (n < minimumSensors(g)) {
                log << "skip " << g << " at n=" << n << " (requires N >= " << minimumSensors(g)
                    << ")\n";
                continue;
            }
            out.push_back({g, n, buildPositions(g, n)});
        }
    }
    return out;
}

std::vector<Point> fixedPoints(const ExperimentConfig& c, std::ostream& log)
{
    std::vector<Point> out;
    for (const std::string& g : c.geometries) {
        if (c.n < minimumSensors(g)) {
            log << "skip " << g << " at n=" << c.n << " (requires N >= " << minimumSensors(g) << ")\n";
            continue;
        }
        out.push_back({g, c.n, buildPositions(g, c.n)});
    }
    return out;
}

Scenario baseScenario(const ExperimentConfig& c, std::int64_t sources)
{
    Scenario s;
    s.anglesDeg = evenlySpacedAngles(static_cast<std::size_t>(sources), c.angleMin, c.angleMax);
    s.setSnrDb(c.snrDb);
    s.snapshots = c.snapshots;
    s.couplingEnabled = c.coupling;
    s.masterSeed = c.seed;
    return s;
}

TrialOptions trialOptions(const ExperimentConfig& c)
{
    TrialOptions o;
    o.trials = c.trials;
    o.gridStepDeg = c.gridStep;
    o.gateDeg = c.gate;
    o.threads = c.threads;
    return o;
}

/// Monte-Carlo stats, or NaN / 0 when the geometry cannot resolve that many sources.
TrialStats trialsOrUnresolvable(const Scenario& s, const Point& p, const CouplingModel& model,
                                const TrialOptions& o, std::ostream& log)
{
    try {
        return runTrials(s, p.positions, model, o);
    } catch (const TooManySources& e) {
        log << p.geometry << " at n=" << p.n << ": " << e.what() << "\n";
        return {std::nan(""), o.trials, 0.0};
    }
}

CouplingModel modelOf(const ExperimentConfig& c, double mag)
{
    return CouplingModel::fromPolar(mag, c.c1Phase, c.band);
}

template <class Body>
RunSummary withWriter(const ExperimentConfig& config, Body body)
{
    ResultWriter writer(config.outputDir);
    try {
        body(writer);
        RunSummary summary;
        summary.manifest = writer.commit(toString(config.kind), config.seed, config.echo());
        summary.outputs = writer.outputs();
        return summary;
    } catch (...) {
        writer.discard();
        throw;
    }
}

void emit(ResultWriter& w, const std::string& file, const CsvTable& t, const std::string& provenance)
{
    w.write(file, t.render(), t.rowCount(), provenance);
}

void doaSweep(const ExperimentConfig& c, ResultWriter& w, std::ostream& log, const std::string& column,
              const std::vector<double>& values,
              const std::function<void(double, Scenario&, CouplingModel&)>& apply,
              const std::string& provenance)
{
    CsvTable rmseTable({"geometry", column, "rmse"});
    CsvTable hitTable({"geometry", column, "hit_rate"});
    const TrialOptions o = trialOptions(c);
    for (const Point& p : fixedPoints(c, log)) {
        for (double v : values) {
            Scenario s = baseScenario(c, c.sources);
            CouplingModel model = modelOf(c, c.c1Mag);
            apply(v, s, model);
            const TrialStats st = trialsOrUnresolvable(s, p, model, o, log);
            rmseTable.row().cell(p.geometry).cell(v).cell(st.rmse);
            hitTable.row().cell(p.geometry).cell(v).cell(st.hitRate);
            log << p.geometry << " " << column << "=" << formatDouble(v)
                << " rmse=" << formatDouble(st.rmse) << " hit_rate=" << formatDouble(st.hitRate)
                << "\n";
        }
    }
    emit(w, "rmse.csv", rmseTable, provenance + "; rmse over assigned pairs, degrees");
    emit(w, "hit_rate.csv", hitTable, provenance + "; fraction of sources within the gate");
}

} // namespace

RunSummary cmdSweep(const ExperimentConfig& config, std::ostream& log)
{
    config.validate();
    return withWriter(config, [&](ResultWriter& w) {
        switch (config.kind) {
        case ExperimentKind::UdofSweep: {
            CsvTable t({"geometry", "n", "udof"});
            for (const Point& p : rangePoints(config, log))
                t.row().cell(p.geometry).cell(p.n).cell(report(p.positions).udof);
            emit(w, "udof.csv", t, "report(buildPositions(geometry, n)).udof");
            break;
        }
        case ExperimentKind::EfficiencySweep: {
            CsvTable t({"geometry", "n", "efficiency"});
            for (const Point& p : rangePoints(config, log))
                t.row().cell(p.geometry).cell(p.n).cell(report(p.positions).spatialEfficiency.value());
            emit(w, "efficiency.csv", t, "report(buildPositions(geometry, n)).spatialEfficiency");
            break;
        }
        case ExperimentKind::LeakageSweep: {
            CsvTable t({"geometry", "n", "leakage"});
            const CouplingModel model = modelOf(config, config.c1Mag);
            for (const Point& p : rangePoints(config, log))
                t.row().cell(p.geometry).cell(p.n).cell(
                    couplingLeakage(couplingMatrix(p.positions, model)));
            emit(w, "leakage.csv", t,
                 "couplingLeakage(couplingMatrix(buildPositions(geometry, n), c1_mag, c1_phase, band))");
            break;
        }
        case ExperimentKind::Identifiability: {
            CsvTable hit({"geometry", "n", "hit_rate"});
            CsvTable err({"geometry", "n", "rmse"});
            const CouplingModel model = modelOf(config, config.c1Mag);
            const TrialOptions o = trialOptions(config);
            const Scenario s = baseScenario(config, config.sources);
            for (const Point& p : rangePoints(config, log)) {
                const TrialStats st = trialsOrUnresolvable(s, p, model, o, log);
                hit.row().cell(p.geometry).cell(p.n).cell(st.hitRate);
                err.row().cell(p.geometry).cell(p.n).cell(st.rmse);
                log << p.geometry << " n=" << p.n << " hit_rate=" << formatDouble(st.hitRate)
                    << " rmse=" << formatDouble(st.rmse) << "\n";
            }
            emit(w, "hit_rate.csv", hit, "runTrials(scenario, buildPositions(geometry, n)).hitRate");
            emit(w, "rmse.csv", err, "runTrials(scenario, buildPositions(geometry, n)).rmse");
            break;
        }
        case ExperimentKind::RmseVsSnr:
            doaSweep(config, w, log, "snr_db", config.snrValues,
                     [](double v, Scenario& s, CouplingModel&) { s.setSnrDb(v); },
                     "runTrials at snr_db; same trial seeds at every point");
            break;
        case ExperimentKind::RmseVsSources: {
            std::vector<double> qs(config.sourceValues.begin(), config.sourceValues.end());
            doaSweep(config, w, log, "sources", qs,
                     [&](double v, Scenario& s, CouplingModel&) {
                         s.anglesDeg = evenlySpacedAngles(static_cast<std::size_t>(v),
                                                          config.angleMin, config.angleMax);
                     },
                     "runTrials with Q sources evenly spaced over [angle_min, angle_max]");
            break;
        }
        case ExperimentKind::RmseVsC1:
            doaSweep(config, w, log, "c1_mag", config.c1Values,
                     [&](double v, Scenario& s, CouplingModel& m) {
                         s.couplingEnabled = true;
                         m = modelOf(config, v);
                     },
                     "runTrials with coupling at c1_mag; same trial seeds at every point");
            break;
        }
    });
}

RunSummary cmdIdentify(const ExperimentConfig& config, std::ostream& log)
{
    config.validate();
    const std::string& geometry = config.geometries.front();
    const PositionSet pos = buildPositions(geometry, config.n);
    const Scenario s = baseScenario(config, config.sources);
    const CouplingModel model = modelOf(config, config.c1Mag);
    const std::vector<double> grid = uniformGrid(config.gridStep);

    const Eigen::MatrixXcd x = synthesize(s, pos, model, trialSeed(config.seed, 0));
    const MusicResult music = coarrayMusic(sampleCovariance(x), pos, s.sourceCount(), grid);

    return withWriter(config, [&](ResultWriter& w) {
        CsvTable spectrum({"angle_deg", "spectrum"});
        for (std::size_t i = 0; i < music.anglesDeg.size(); ++i)
            spectrum.row().cell(music.anglesDeg[i]).cell(music.spectrum[i]);

        CsvTable est({"source", "true_deg", "estimate_deg", "error_deg", "hit"});
        std::vector<std::optional<Assignment>> bySource(s.sourceCount());
        for (const Assignment& a : assign(music.estimates, s.anglesDeg))
            bySource[a.truthIndex] = a;
        std::int64_t hits = 0;
        for (std::size_t q = 0; q < s.sourceCount(); ++q) {
            est.row().cell(static_cast<std::int64_t>(q + 1)).cell(s.anglesDeg[q]);
            if (const auto& a = bySource[q]) {
                const bool hit = a->distanceDeg <= config.gate;
                hits += hit ? 1 : 0;
                est.cell(music.estimates[a->estimateIndex])
                    .cell(music.estimates[a->estimateIndex] - s.anglesDeg[q])
                    .cell(hit ? "1" : "0");
            } else {
                est.cell("").cell("").cell("0");
            }
        }
        emit(w, "spectrum.csv", spectrum, "musicSpectrum on one realization, seed trialSeed(seed, 0)");
        emit(w, "estimates.csv", est, "greedy assignment of the spectrum peaks to the true angles");

        const TrialStats st = rmse(std::vector<std::vector<double>>{music.estimates}, s.anglesDeg,
                                   config.gate);
        log << geometry << " n=" << config.n << " sources=" << s.sourceCount()
            << " detected=" << music.estimates.size() << " hits=" << hits
            << " hit_rate=" << formatDouble(st.hitRate) << " rmse=" << formatDouble(st.rmse) << "\n";
    });
}

void cmdSearchGaps(const GapSearchFile& file, std::size_t limit, std::ostream& out)
{
    GapSearchSpec spec = parseLayerSequence(
        file.layers, file.baseCount, file.transferCount,
        file.transferInterspace > 0 ? std::optional<Position>(file.transferInterspace) : std::nullopt);
    spec.minGap = file.minGap;
    spec.maxGap = file.maxGap;
    spec.nodeBudget = file.nodeBudget;
    spec.target = file.coverage == "end" ? CoverageTarget::TransferEnd : CoverageTarget::TransferAperture;

    const GapSearchResult r = searchGaps(spec);
    out << "layers: " << file.layers << "\n"
        << "sub-ULAs:";
    for (const SubUlaShape& s : spec.sequence)
        out << " (" << s.interspace << "," << s.count << ")";
    out << "\n"
        << "evaluated: " << r.evaluated << "\n"
        << "feasible: " << r.solutions.size() << "\n";
    const std::size_t shown =
        limit == 0 ? r.solutions.size() : std::min(limit, r.solutions.size());
    for (std::size_t i = 0; i < shown; ++i)
        out << "(" << joined(r.solutions[i], ", ") << ")\n";
    if (shown < r.solutions.size())
        out << "... " << r.solutions.size() - shown << " more\n";
}

} // namespace ulafit::expcli
