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

#include "ulafit/expcli/config.hpp"

#include "ulafit/error.hpp"
#include "ulafit/expcli/registry.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <set>

namespace ulafit::expcli {

namespace {

const std::vector<std::pair<ExperimentKind, std::string>>& kindNames()
{
    static const std::vector<std::pair<ExperimentKind, std::string>> names{
        {ExperimentKind::UdofSweep, "udof-sweep"},
        {ExperimentKind::EfficiencySweep, "efficiency-sweep"},
        {ExperimentKind::LeakageSweep, "leakage-sweep"},
        {ExperimentKind::Identifiability, "identifiability"},
        {ExperimentKind::RmseVsSnr, "rmse-vs-snr"},
        {ExperimentKind::RmseVsSources, "rmse-vs-sources"},
        {ExperimentKind::RmseVsC1, "rmse-vs-c1"},
    };
    return names;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        s = s.substr(1, s.size() - 2);
    return s;
}

template <class T>
T parseNumber(const std::string& key, const std::string& text)
{
    T v{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
    return v;
}

bool parseBool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1" || text == "on" || text == "yes")
        return true;
    if (text == "false" || text == "0" || text == "off" || text == "no")
        return false;
    throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a boolean");
}

class Reader {
public:
    explicit Reader(const ConfigValues& values) : values_(values) {}

    const std::string* scalar(const std::string& key)
    {
        seen_.insert(key);
        const auto it = values_.find(key);
        if (it == values_.end())
            return nullptr;
        if (it->second.size() != 1)
            throw ConfigError("key '" + key + "' expects a single value");
        return &it->second.front();
    }

    const std::vector<std::string>* list(const std::string& key)
    {
        seen_.insert(key);
        const auto it = values_.find(key);
        return it == values_.end() ? nullptr : &it->second;
    }

    template <class T>
    void number(const std::string& key, T& out)
    {
        if (const std::string* s = scalar(key))
            out = parseNumber<T>(key, *s);
    }

    template <class T>
    void numbers(const std::string& key, std::vector<T>& out)
    {
        if (const auto* l = list(key)) {
            out.clear();
            for (const std::string& s : *l)
                out.push_back(parseNumber<T>(key, s));
        }
    }

    void text(const std::string& key, std::string& out)
    {
        if (const std::string* s = scalar(key))
            out = *s;
    }

    void flag(const std::string& key, bool& out)
    {
        if (const std::string* s = scalar(key))
            out = parseBool(key, *s);
    }

    void rejectUnknown() const
    {
        for (const auto& [key, _] : values_)
            if (!seen_.contains(key))
                throw ConfigError("unknown config key '" + key + "'");
    }

private:
    const ConfigValues& values_;
    std::set<std::string> seen_;
};

std::string formatNumber(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

template <class T>
std::string joinNumbers(const std::vector<T>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            out += ",";
        if constexpr (std::is_floating_point_v<T>)
            out += formatNumber(values[i]);
        else
            out += std::to_string(values[i]);
    }
    return out;
}

} // namespace

std::string toString(ExperimentKind kind)
{
    for (const auto& [k, name] : kindNames())
        if (k == kind)
            return name;
    return "unknown";
}

ExperimentKind parseExperimentKind(const std::string& name)
{
    for (const auto& [k, n] : kindNames())
        if (n == name)
            return k;
    std::string known;
    for (const auto& [k, n] : kindNames())
        known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown experiment '" + name + "' (known: " + known + ")");
}

ConfigValues readConfigFile(const std::string& path)
{
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_file(path);
    } catch (const CLI::Error& e) {
        throw ConfigError("cannot read config '" + path + "': " + e.what());
    }
    ConfigValues out;
    for (const CLI::ConfigItem& item : items) {
        if (item.name == "++" || item.name == "--")
            continue;
        std::vector<std::string> inputs;
        for (const std::string& s : item.inputs)
            inputs.push_back(trim(s));
        out[item.fullname()] = std::move(inputs);
    }
    return out;
}

ConfigValues parseOverrides(const std::vector<std::string>& assignments)
{
    ConfigValues out;
    for (const std::string& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("override '" + a + "' is not of the form key=value");
        const std::string key = trim(a.substr(0, eq));
        std::string rest = trim(a.substr(eq + 1));
        if (rest.size() >= 2 && rest.front() == '[' && rest.back() == ']')
            rest = rest.substr(1, rest.size() - 2);
        std::vector<std::string> values;
        std::size_t start = 0;
        while (true) {
            const auto comma = rest.find(',', start);
            values.push_back(trim(rest.substr(start, comma - start)));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        out[key] = std::move(values);
    }
    return out;
}

ConfigValues merge(ConfigValues base, const ConfigValues& overrides)
{
    for (const auto& [k, v] : overrides)
        base[k] = v;
    return base;
}

void ExperimentConfig::validate() const
{
    if (geometries.empty())
        throw ConfigError("geometries must not be empty");
    for (const std::string& g : geometries)
        if (!isKnownGeometry(g))
            throw ConfigError("unknown geometry '" + g + "' (known: uf3bl, uf4bl, nested, coprime)");
    if (nStep < 1 || nMin > nMax)
        throw ConfigError("sensor range is empty (n_min=" + std::to_string(nMin) +
                          ", n_max=" + std::to_string(nMax) + ", n_step=" + std::to_string(nStep) + ")");
    if (nMin < 2 || n < 2)
        throw ConfigError("sensor counts must be >= 2");
    if (!(c1Mag > 0.0 && c1Mag < 1.0))
        throw ConfigError("c1_mag must lie in (0, 1)");
    if (band < 0)
        throw ConfigError("band must be >= 0");
    if (sources < 1)
        throw ConfigError("sources must be >= 1");
    if (!(angleMin > -90.0 && angleMax < 90.0 && angleMin <= angleMax))
        throw ConfigError("angle range must lie inside (-90, 90) with angle_min <= angle_max");
    if (snapshots < 1 || trials < 1)
        throw ConfigError("snapshots and trials must be >= 1");
    if (!(gridStep > 0.0) || !(gate > 0.0))
        throw ConfigError("grid_step and gate must be positive");
    if (kind == ExperimentKind::RmseVsSnr && snrValues.empty())
        throw ConfigError("snr_values must not be empty");
    if (kind == ExperimentKind::RmseVsSources && sourceValues.empty())
        throw ConfigError("source_values must not be empty");
    if (kind == ExperimentKind::RmseVsC1) {
        if (c1Values.empty())
            throw ConfigError("c1_values must not be empty");
        for (double c : c1Values)
            if (!(c > 0.0 && c < 1.0))
                throw ConfigError("c1_values must lie in (0, 1)");
    }
    for (std::int64_t q : sourceValues)
        if (q < 1)
            throw ConfigError("source_values must be >= 1");
    if (outputDir.empty())
        throw ConfigError("output_dir must not be empty");
}

std::map<std::string, std::string> ExperimentConfig::echo() const
{
    std::string geo;
    for (const std::string& g : geometries)
        geo += (geo.empty() ? "" : ",") + g;
    return {
        {"experiment", toString(kind)},
        {"geometries", geo},
        {"n_min", std::to_string(nMin)},
        {"n_max", std::to_string(nMax)},
        {"n_step", std::to_string(nStep)},
        {"n", std::to_string(n)},
        {"c1_mag", formatNumber(c1Mag)},
        {"c1_phase", formatNumber(c1Phase)},
        {"band", std::to_string(band)},
        {"sources", std::to_string(sources)},
        {"angle_min", formatNumber(angleMin)},
        {"angle_max", formatNumber(angleMax)},
        {"snr_db", formatNumber(snrDb)},
        {"snapshots", std::to_string(snapshots)},
        {"trials", std::to_string(trials)},
        {"grid_step", formatNumber(gridStep)},
        {"gate", formatNumber(gate)},
        {"coupling", coupling ? "true" : "false"},
        {"snr_values", joinNumbers(snrValues)},
        {"source_values", joinNumbers(sourceValues)},
        {"c1_values", joinNumbers(c1Values)},
        {"seed", std::to_string(seed)},
        {"output_dir", outputDir},
    };
}

ExperimentConfig makeExperimentConfig(const ConfigValues& values)
{
    Reader r(values);
    ExperimentConfig c;
    if (const std::string* kind = r.scalar("experiment"))
        c.kind = parseExperimentKind(*kind);
    else
        throw ConfigError("config needs an 'experiment' key");
    if (const auto* g = r.list("geometries"))
        c.geometries = *g;
    r.number("n_min", c.nMin);
    r.number("n_max", c.nMax);
    r.number("n_step", c.nStep);
    r.number("n", c.n);
    r.number("c1_mag", c.c1Mag);
    r.number("c1_phase", c.c1Phase);
    r.number("band", c.band);
    r.number("sources", c.sources);
    r.number("angle_min", c.angleMin);
    r.number("angle_max", c.angleMax);
    r.number("snr_db", c.snrDb);
    r.number("snapshots", c.snapshots);
    r.number("trials", c.trials);
    r.number("grid_step", c.gridStep);
    r.number("gate", c.gate);
    r.flag("coupling", c.coupling);
    r.numbers("snr_values", c.snrValues);
    r.numbers("source_values", c.sourceValues);
    r.numbers("c1_values", c.c1Values);
    r.number("seed", c.seed);
    r.text("output_dir", c.outputDir);
    r.number("threads", c.threads);
    r.rejectUnknown();
    c.validate();
    return c;
}

GapSearchFile makeGapSearchFile(const ConfigValues& values)
{
    Reader r(values);
    GapSearchFile f;
    if (const std::string* layers = r.scalar("layers"))
        f.layers = *layers;
    else
        throw ConfigError("gap-search spec needs a 'layers' key");
    r.number("base_count", f.baseCount);
    r.number("transfer_count", f.transferCount);
    r.number("transfer_interspace", f.transferInterspace);
    r.number("min_gap", f.minGap);
    r.number("max_gap", f.maxGap);
    r.number("node_budget", f.nodeBudget);
    r.text("coverage", f.coverage);
    r.rejectUnknown();
    if (f.coverage != "aperture" && f.coverage != "end")
        throw ConfigError("coverage must be 'aperture' or 'end'");
    return f;
}

} // namespace ulafit::expcli
