// SPDX-License-Identifier: Apache-2.0
//
// metabcrb: estimation bounds for meta-material backscatter sensing
// Copyright (C) 2026 The metabcrb authors
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


#include "metabcrb/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace metabcrb::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

double parse_number(std::string_view text, std::string_view key, int line)
{
    const std::string owned(text);
    char *end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(v))
        throw ConfigError("invalid number '" + owned + "' for key '" + std::string(key) + "'", line);
    return v;
}

std::size_t parse_count(std::string_view text, std::string_view key, int line)
{
    const double v = parse_number(text, key, line);
    if (v < 1.0 || v != std::floor(v) || v > 1e9)
        throw ConfigError("'" + std::string(key) + "' must be a positive integer", line);
    return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view text, std::string_view key, int line)
{
    if (text == "true" || text == "1")
        return true;
    if (text == "false" || text == "0")
        return false;
    throw ConfigError("'" + std::string(key) + "' must be true or false", line);
}

AxisPoint parse_point(Axis axis, std::string_view text, std::string_view key, int line)
{
    AxisPoint p;
    p.label = std::string(text);
    if (text == "los")
    {
        if (axis != Axis::kappa)
            throw ConfigError("'los' is only valid on the kappa axis", line);
        p.los = true;
        p.value = std::numeric_limits<double>::infinity();
        return p;
    }
    p.value = axis == Axis::subcarrier_count ? static_cast<double>(parse_count(text, key, line))
                                             : parse_number(text, key, line);
    return p;
}

std::string format_label(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

struct Pending
{
    std::map<std::string, std::pair<std::string, int>> entries;

    const std::pair<std::string, int> *find(const std::string &key) const
    {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }
};

SweepSpec build_sweep(const Pending &p)
{
    const auto *axis = p.find("sweep.axis");
    if (axis == nullptr)
        throw ConfigError("sweep keys given without 'sweep.axis'");
    SweepSpec spec;
    try
    {
        spec.axis = parse_axis(axis->first);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what(), axis->second);
    }

    const auto *values = p.find("sweep.values");
    const auto *start = p.find("sweep.start");
    const auto *stop = p.find("sweep.stop");
    const auto *points = p.find("sweep.points");
    const auto *spacing = p.find("sweep.spacing");
    if (spacing != nullptr)
    {
        if (spacing->first != "linear" && spacing->first != "log")
            throw ConfigError("'sweep.spacing' must be linear or log", spacing->second);
        spec.log_spacing = spacing->first == "log";
    }
    if (values != nullptr)
    {
        if (start || stop || points)
            throw ConfigError("'sweep.values' cannot be combined with start/stop/points", values->second);
        for (auto token : split_list(values->first))
            spec.points.push_back(parse_point(spec.axis, token, "sweep.values", values->second));
        if (spec.points.size() < 2)
            throw ConfigError("a sweep needs at least two values", values->second);
    }
    else
    {
        if (!start || !stop || !points)
            throw ConfigError("a sweep needs 'sweep.values' or all of start, stop and points");
        const double a = parse_number(start->first, "sweep.start", start->second);
        const double b = parse_number(stop->first, "sweep.stop", stop->second);
        const std::size_t n = parse_count(points->first, "sweep.points", points->second);
        if (n < 2)
            throw ConfigError("'sweep.points' must be at least 2", points->second);
        if (spec.log_spacing && !(a > 0.0 && b > 0.0))
            throw ConfigError("log spacing requires positive endpoints", start->second);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double t = static_cast<double>(i) / static_cast<double>(n - 1);
            double v = spec.log_spacing ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a);
            if (i == n - 1)
                v = b;
            if (spec.axis == Axis::subcarrier_count)
                v = std::round(v);
            AxisPoint pt;
            pt.value = v;
            pt.label = format_label(v);
            spec.points.push_back(pt);
        }
        if (spec.axis == Axis::subcarrier_count)
        {
            for (std::size_t i = 1; i < spec.points.size(); ++i)
                if (spec.points[i].value == spec.points[i - 1].value)
                    throw ConfigError("subcarrier counts repeat after rounding", points->second);
            if (spec.points.front().value < 1.0)
                throw ConfigError("subcarrier counts must be positive", start->second);
        }
    }
    if (spec.log_spacing)
        for (const auto &pt : spec.points)
            if (!(pt.value > 0.0))
                throw ConfigError("log spacing requires positive sweep values");

    const auto *curve_axis = p.find("sweep.curve_axis");
    const auto *curve_values = p.find("sweep.curve_values");
    if ((curve_axis == nullptr) != (curve_values == nullptr))
        throw ConfigError("'sweep.curve_axis' and 'sweep.curve_values' go together");
    if (curve_axis != nullptr)
    {
        try
        {
            spec.curve_axis = parse_axis(curve_axis->first);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what(), curve_axis->second);
        }
        if (*spec.curve_axis == spec.axis)
            throw ConfigError("curve axis must differ from the sweep axis", curve_axis->second);
        for (auto token : split_list(curve_values->first))
            spec.curve_points.push_back(parse_point(*spec.curve_axis, token, "sweep.curve_values", curve_values->second));
    }
    return spec;
}

} // namespace

ConfigError::ConfigError(const std::string &message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

std::string_view to_string(Axis axis)
{
    switch (axis)
    {
    case Axis::fwhm:
        return "fwhm";
    case Axis::depth:
        return "depth";
    case Axis::snr_db:
        return "snr_db";
    case Axis::subcarrier_count:
        return "subcarrier_count";
    case Axis::kappa:
        break;
    }
    return "kappa";
}

Axis parse_axis(std::string_view text)
{
    for (Axis a : {Axis::fwhm, Axis::depth, Axis::snr_db, Axis::subcarrier_count, Axis::kappa})
        if (to_string(a) == text)
            return a;
    throw std::invalid_argument("unknown axis '" + std::string(text) +
                                "' (expected fwhm, depth, snr_db, subcarrier_count or kappa)");
}

void apply(ScenarioParams &params, Axis axis, const AxisPoint &point)
{
    switch (axis)
    {
    case Axis::fwhm:
        params.half_width = 0.5 * point.value;
        break;
    case Axis::depth:
        params.depth = point.value;
        break;
    case Axis::snr_db:
        params.snr_db = point.value;
        params.noise_variance.reset();
        break;
    case Axis::subcarrier_count:
        params.grid_count = static_cast<std::size_t>(point.value);
        params.outward_grid = true;
        break;
    case Axis::kappa:
        params.los = point.los;
        if (!point.los)
            params.kappa = point.value;
        break;
    }
}

Scenario build_scenario(const ScenarioParams &p)
{
    SensorModel sensor(p.depth, p.half_width, p.shift_rate, p.offset);
    SensingPrior prior(p.prior_mean, p.prior_std);
    const RicianSpec channel = p.los ? RicianSpec::line_of_sight() : RicianSpec::rician(p.kappa);
    const NoiseSpec noise = p.noise_variance ? NoiseSpec(*p.noise_variance) : snr_to_noise(p.snr_db);
    const double center = p.grid_center.value_or(sensor.resonance(prior.mean()));
    const double spacing = p.grid_spacing.value_or(0.05 * p.half_width);
    SubcarrierGrid grid = p.grid_frequencies ? SubcarrierGrid::from_frequencies(*p.grid_frequencies)
                          : p.outward_grid   ? SubcarrierGrid::outward(center, spacing, p.grid_count)
                                             : SubcarrierGrid::uniform(center, spacing, p.grid_count);
    return Scenario{sensor, prior, channel, noise, std::move(grid)};
}

Config parse_config(std::string_view text)
{
    static const std::set<std::string> known = {
        "sensor.depth", "sensor.half_width", "sensor.shift_rate", "sensor.offset",
        "prior.mean", "prior.std", "channel.kappa", "channel.los",
        "noise.snr_db", "noise.variance",
        "grid.center", "grid.spacing", "grid.count", "grid.frequencies",
        "expectation.order",
        "sweep.axis", "sweep.values", "sweep.start", "sweep.stop", "sweep.points", "sweep.spacing",
        "sweep.curve_axis", "sweep.curve_values",
        "select.budget",
        "asymptotics.snr_db", "asymptotics.depth_snr_db",
    };

    Pending pending;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'key = value'", line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("missing key before '='", line_no);
        if (!known.count(key))
            throw ConfigError("unknown key '" + key + "'", line_no);
        if (value.empty())
            throw ConfigError("missing value for '" + key + "'", line_no);
        if (const auto *prev = pending.find(key))
            throw ConfigError("duplicate key '" + key + "' (first set on line " + std::to_string(prev->second) + ")", line_no);
        pending.entries.emplace(key, std::make_pair(value, line_no));
    }

    Config cfg;
    ScenarioParams &s = cfg.scenario;
    const std::map<std::string, std::function<void(const std::string &, const std::string &, int)>> scalar = {
        {"sensor.depth", [&](auto &k, auto &v, int l) { s.depth = parse_number(v, k, l); }},
        {"sensor.half_width", [&](auto &k, auto &v, int l) { s.half_width = parse_number(v, k, l); }},
        {"sensor.shift_rate", [&](auto &k, auto &v, int l) { s.shift_rate = parse_number(v, k, l); }},
        {"sensor.offset", [&](auto &k, auto &v, int l) { s.offset = parse_number(v, k, l); }},
        {"prior.mean", [&](auto &k, auto &v, int l) { s.prior_mean = parse_number(v, k, l); }},
        {"prior.std", [&](auto &k, auto &v, int l) { s.prior_std = parse_number(v, k, l); }},
        {"channel.kappa", [&](auto &k, auto &v, int l) { s.kappa = parse_number(v, k, l); }},
        {"channel.los", [&](auto &k, auto &v, int l) { s.los = parse_bool(v, k, l); }},
        {"noise.snr_db", [&](auto &k, auto &v, int l) { s.snr_db = parse_number(v, k, l); }},
        {"noise.variance", [&](auto &k, auto &v, int l) { s.noise_variance = parse_number(v, k, l); }},
        {"grid.center", [&](auto &k, auto &v, int l) { s.grid_center = parse_number(v, k, l); }},
        {"grid.spacing", [&](auto &k, auto &v, int l) { s.grid_spacing = parse_number(v, k, l); }},
        {"grid.count", [&](auto &k, auto &v, int l) { s.grid_count = parse_count(v, k, l); }},
        {"grid.frequencies",
         [&](auto &k, auto &v, int l) {
             std::vector<double> fs;
             for (auto token : split_list(v))
                 fs.push_back(parse_number(token, k, l));
             s.grid_frequencies = std::move(fs);
         }},
        {"expectation.order",
         [&](auto &k, auto &v, int l) {
             const std::size_t n = parse_count(v, k, l);
             if (n < 2 || n > 100000)
                 throw ConfigError("'expectation.order' must be between 2 and 100000", l);
             cfg.quadrature_order = static_cast<int>(n);
         }},
        {"select.budget", [&](auto &k, auto &v, int l) { cfg.select_budget = parse_count(v, k, l); }},
        {"asymptotics.snr_db", [&](auto &k, auto &v, int l) { cfg.asymptotics_snr_db = parse_number(v, k, l); }},
        {"asymptotics.depth_snr_db", [&](auto &k, auto &v, int l) { cfg.asymptotics_depth_snr_db = parse_number(v, k, l); }},
    };

    bool any_sweep = false;
    for (const auto &[key, entry] : pending.entries)
    {
        if (key.rfind("sweep.", 0) == 0)
        {
            any_sweep = true;
            continue;
        }
        scalar.at(key)(key, entry.first, entry.second);
    }

    if (const auto *fs = pending.find("grid.frequencies"))
        for (const char *other : {"grid.center", "grid.spacing", "grid.count"})
            if (pending.find(other))
                throw ConfigError("'grid.frequencies' cannot be combined with '" + std::string(other) + "'", fs->second);
    if (const auto *nv = pending.find("noise.variance"); nv && pending.find("noise.snr_db"))
        throw ConfigError("'noise.variance' and 'noise.snr_db' are mutually exclusive", nv->second);
    if (const auto *los = pending.find("channel.los"); los && s.los && pending.find("channel.kappa"))
        throw ConfigError("'channel.kappa' has no effect when 'channel.los' is true", los->second);

    if (any_sweep)
    {
        cfg.sweep = build_sweep(pending);
        const bool count_axis = cfg.sweep->axis == Axis::subcarrier_count ||
                                (cfg.sweep->curve_axis && *cfg.sweep->curve_axis == Axis::subcarrier_count);
        if (count_axis && s.grid_frequencies)
            throw ConfigError("a subcarrier_count sweep needs a uniform grid, not 'grid.frequencies'");
    }

    try
    {
        (void)build_scenario(s);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
    return cfg;
}

Config load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace metabcrb::cli
