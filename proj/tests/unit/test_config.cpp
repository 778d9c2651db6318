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


#include <catch2/catch_amalgamated.hpp>

#include "metabcrb/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using namespace metabcrb;
using namespace metabcrb::cli;
using Catch::Approx;

namespace {

// line number carried by the ConfigError thrown for `text`, or -1 if parsing succeeds
int error_line(const std::string &text)
{
    try
    {
        (void)parse_config(text);
    }
    catch (const ConfigError &e)
    {
        return e.line();
    }
    return -1;
}

std::string error_message(const std::string &text)
{
    try
    {
        (void)parse_config(text);
    }
    catch (const ConfigError &e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("Config - Defaults", "[config]")
{
    const Config c = parse_config("# nothing set\n\n");
    const Scenario s = build_scenario(c.scenario);
    const Scenario d = default_scenario();
    CHECK(s.sensor.absorption_depth() == d.sensor.absorption_depth());
    CHECK(s.sensor.half_width() == d.sensor.half_width());
    CHECK(s.prior.std_dev() == d.prior.std_dev());
    CHECK(s.channel.kappa() == d.channel.kappa());
    CHECK(s.noise.variance() == d.noise.variance());
    REQUIRE(s.grid.count() == d.grid.count());
    for (std::size_t k = 0; k < s.grid.count(); ++k)
        CHECK(s.grid[k] == d.grid[k]);
    CHECK(c.quadrature_order == 200);
    CHECK_FALSE(c.sweep);
    CHECK_FALSE(c.select_budget);
}

TEST_CASE("Config - Every scenario field is settable", "[config]")
{
    const Config c = parse_config("sensor.depth = 0.5\n"
                                  "sensor.half_width = 0.2   # Gamma\n"
                                  "sensor.shift_rate = -2\n"
                                  "sensor.offset = 3\n"
                                  "prior.mean = 0.1\n"
                                  "prior.std = 0.5\n"
                                  "channel.kappa = 4\n"
                                  "noise.variance = 0.25\n"
                                  "grid.center = 2.5\n"
                                  "grid.spacing = 0.1\n"
                                  "grid.count = 3\n"
                                  "expectation.order = 400\n"
                                  "select.budget = 2\n"
                                  "asymptotics.snr_db = 25\n"
                                  "asymptotics.depth_snr_db = 50\n");
    const Scenario s = build_scenario(c.scenario);
    CHECK(s.sensor.absorption_depth() == 0.5);
    CHECK(s.sensor.half_width() == 0.2);
    CHECK(s.sensor.shift_rate() == -2.0);
    CHECK(s.sensor.center_offset() == 3.0);
    CHECK(s.prior.mean() == 0.1);
    CHECK(s.prior.std_dev() == 0.5);
    CHECK(s.channel.kappa() == 4.0);
    CHECK_FALSE(s.channel.deterministic_los());
    CHECK(s.noise.variance() == 0.25);
    REQUIRE(s.grid.count() == 3);
    CHECK(s.grid[0] == Approx(2.4));
    CHECK(s.grid[2] == Approx(2.6));
    CHECK(c.quadrature_order == 400);
    CHECK(*c.select_budget == 2);
    CHECK(c.asymptotics_snr_db == 25.0);
    CHECK(c.asymptotics_depth_snr_db == 50.0);

    const Scenario los = build_scenario(parse_config("channel.los = true\nnoise.snr_db = 10\n").scenario);
    CHECK(los.channel.deterministic_los());
    CHECK(los.noise.variance() == Approx(0.1).epsilon(1e-14));

    const Scenario listed = build_scenario(parse_config("grid.frequencies = -1, 0.5, 2\n").scenario);
    REQUIRE(listed.grid.count() == 3);
    CHECK(listed.grid[1] == 0.5);
    CHECK_FALSE(listed.grid.spacing());

    // default grid spacing follows the half-width, center follows the resonance
    const Scenario derived = build_scenario(parse_config("sensor.half_width = 2\nsensor.offset = 1\ngrid.count = 2\n").scenario);
    CHECK(derived.grid[0] == Approx(0.95));
    CHECK(derived.grid[1] == Approx(1.05));
}

TEST_CASE("Config - Errors carry line numbers", "[config]")
{
    CHECK(error_line("sensor.depth = 0.5\nsensor.dpeth = 0.4\n") == 2);
    CHECK(error_message("sensor.dpeth = 0.4\n").find("unknown key 'sensor.dpeth'") != std::string::npos);
    CHECK(error_line("\n\nprior.std = 1\nprior.std = 2\n") == 4);
    CHECK(error_message("prior.std = 1\nprior.std = 2\n").find("first set on line 1") != std::string::npos);
    CHECK(error_line("sensor.depth 0.5\n") == 1);
    CHECK(error_line("= 0.5\n") == 1);
    CHECK(error_line("sensor.depth =\n") == 1);
    CHECK(error_line("sensor.depth = 0.5x\n") == 1);
    CHECK(error_line("# c\nnoise.snr_db = ten\n") == 2);
    CHECK(error_line("channel.los = yes\n") == 1);
    CHECK(error_line("grid.count = 2.5\n") == 1);
    CHECK(error_line("grid.count = 0\n") == 1);
    CHECK(error_line("expectation.order = 1\n") == 1);
    CHECK(error_line("grid.count = 4\ngrid.frequencies = 1, 2\n") == 2);
    CHECK(error_line("noise.snr_db = 3\nnoise.variance = 0.5\n") == 2);
    CHECK(error_line("channel.kappa = 3\nchannel.los = true\n") == 2);
    CHECK(error_line("channel.kappa = 3\nchannel.los = false\n") == -1);

    // invalid scenario values surface as config errors without a line
    CHECK(error_line("sensor.depth = 1.5\n") == 0);
    CHECK(error_message("sensor.depth = 1.5\n").find("invalid scenario") != std::string::npos);
    CHECK(error_line("prior.std = 0\n") == 0);
    CHECK(error_line("grid.frequencies = 2, 1\n") == 0);
    CHECK(error_line("channel.kappa = -1\n") == 0);
}

TEST_CASE("Config - Sweeps", "[config]")
{
    const Config lin = parse_config("sweep.axis = snr_db\nsweep.start = -30\nsweep.stop = 40\nsweep.points = 15\n");
    REQUIRE(lin.sweep);
    CHECK(lin.sweep->axis == Axis::snr_db);
    REQUIRE(lin.sweep->points.size() == 15);
    CHECK(lin.sweep->points[1].value == Approx(-25.0));
    CHECK(lin.sweep->points.back().value == 40.0);
    CHECK_FALSE(lin.sweep->log_spacing);

    const Config lg = parse_config("sweep.axis = fwhm\nsweep.start = 0.01\nsweep.stop = 100\nsweep.points = 5\n"
                                   "sweep.spacing = log\n");
    REQUIRE(lg.sweep);
    CHECK(lg.sweep->log_spacing);
    CHECK(lg.sweep->points[2].value == Approx(1.0).epsilon(1e-14));

    const Config curves = parse_config("sweep.axis = snr_db\nsweep.values = 0, 10, 20\n"
                                       "sweep.curve_axis = kappa\nsweep.curve_values = 0, 5, los\n");
    REQUIRE(curves.sweep);
    REQUIRE(curves.sweep->curve_axis);
    CHECK(*curves.sweep->curve_axis == Axis::kappa);
    REQUIRE(curves.sweep->curve_points.size() == 3);
    CHECK(curves.sweep->curve_points[2].los);
    CHECK(curves.sweep->curve_points[2].label == "los");
    CHECK(curves.sweep->points[1].label == "10");

    const Config counts = parse_config("sweep.axis = subcarrier_count\nsweep.start = 1\nsweep.stop = 64\n"
                                       "sweep.points = 7\nsweep.spacing = log\n");
    REQUIRE(counts.sweep);
    CHECK(counts.sweep->points.front().value == 1.0);
    CHECK(counts.sweep->points[1].value == 2.0);
    CHECK(counts.sweep->points.back().value == 64.0);

    CHECK(error_line("sweep.axis = width\n") == 1);
    CHECK(error_line("sweep.values = 1, 2\n") == 0);
    CHECK(error_line("sweep.axis = depth\nsweep.values = 0.5\n") == 2);
    CHECK(error_line("sweep.axis = depth\nsweep.start = 0.1\nsweep.stop = 1\n") == 0);
    CHECK(error_line("sweep.axis = depth\nsweep.start = 0.1\nsweep.stop = 1\nsweep.points = 1\n") == 4);
    CHECK(error_line("sweep.axis = depth\nsweep.start = 0\nsweep.stop = 1\nsweep.points = 3\nsweep.spacing = log\n") == 2);
    CHECK(error_line("sweep.axis = depth\nsweep.values = 0.1, 1\nsweep.spacing = cubic\n") == 3);
    CHECK(error_line("sweep.axis = depth\nsweep.values = 0.1, 1\nsweep.start = 0.1\n") == 2);
    CHECK(error_line("sweep.axis = snr_db\nsweep.values = 0, los\n") == 2);
    CHECK(error_line("sweep.axis = snr_db\nsweep.values = 0, 1\nsweep.curve_axis = snr_db\nsweep.curve_values = 1\n") == 3);
    CHECK(error_line("sweep.axis = snr_db\nsweep.values = 0, 1\nsweep.curve_axis = kappa\n") == 0);
    CHECK(error_line("sweep.axis = subcarrier_count\nsweep.start = 1\nsweep.stop = 3\nsweep.points = 5\n") == 4);
    CHECK(error_line("grid.frequencies = 0, 1\nsweep.axis = subcarrier_count\nsweep.values = 1, 2\n") == 0);
}

TEST_CASE("Config - Applying axis points", "[config]")
{
    ScenarioParams p;
    apply(p, Axis::fwhm, {0.4, false, "0.4"});
    CHECK(p.half_width == Approx(0.2));
    apply(p, Axis::depth, {0.3, false, "0.3"});
    CHECK(p.depth == 0.3);
    p.noise_variance = 2.0;
    apply(p, Axis::snr_db, {10.0, false, "10"});
    CHECK_FALSE(p.noise_variance);
    CHECK(p.snr_db == 10.0);
    apply(p, Axis::kappa, {0.0, true, "los"});
    CHECK(p.los);
    apply(p, Axis::kappa, {3.0, false, "3"});
    CHECK_FALSE(p.los);
    CHECK(p.kappa == 3.0);
    apply(p, Axis::subcarrier_count, {5.0, false, "5"});
    CHECK(p.outward_grid);
    CHECK(p.grid_count == 5);

    // outward grids are nested
    const Scenario four = build_scenario([&] { auto q = p; q.grid_count = 4; return q; }());
    const Scenario five = build_scenario(p);
    for (std::size_t k = 0; k < four.grid.count(); ++k)
    {
        bool found = false;
        for (std::size_t j = 0; j < five.grid.count(); ++j)
            found = found || four.grid[k] == five.grid[j];
        CHECK(found);
    }
    CHECK(parse_axis("subcarrier_count") == Axis::subcarrier_count);
    CHECK(to_string(Axis::fwhm) == "fwhm");
    CHECK_THROWS_AS(parse_axis("Gamma"), std::invalid_argument);
}

TEST_CASE("Config - Loading files", "[config]")
{
    const std::string path = "test_config_load.cfg";
    {
        std::ofstream out(path);
        out << "sensor.depth = 0.25\r\nchannel.kappa = 2\r\n";
    }
    const Config c = load_config(path);
    CHECK(c.scenario.depth == 0.25);
    CHECK(c.scenario.kappa == 2.0);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("does/not/exist.cfg"), ConfigError);
}
