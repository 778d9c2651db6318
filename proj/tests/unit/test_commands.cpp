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

#include "metabcrb/asymptotics.hpp"
#include "metabcrb/cli/commands.hpp"
#include "metabcrb/cli/csv.hpp"
#include "metabcrb/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace metabcrb;
using namespace metabcrb::cli;
using Catch::Approx;

namespace {

using Row = std::vector<std::string>;

std::vector<Row> parse_csv(const std::string &text)
{
    std::vector<Row> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        Row row;
        std::string cell;
        std::istringstream cells(line);
        while (std::getline(cells, cell, ','))
            row.push_back(cell);
        if (!line.empty() && line.back() == ',')
            row.emplace_back();
        rows.push_back(row);
    }
    return rows;
}

template <std::size_t N>
Row header_of(const char *const (&columns)[N])
{
    return Row(std::begin(columns), std::end(columns));
}

double num(const std::string &cell)
{
    return std::stod(cell);
}

int run_tool(const std::string &args)
{
    const std::string cmd = std::string(METABCRB_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream(path) << text;
}

} // namespace

TEST_CASE("Commands - CSV formatting", "[commands]")
{
    CHECK(csv_number(0.1) == "1.0000000000000001e-01");
    CHECK(csv_number(-2.0) == "-2.0000000000000000e+00");
    CHECK(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(csv_number(std::nan("")) == "nan");
    CHECK(csv_number(-INFINITY) == "-inf");
    CsvTable t({"a", "b"});
    t.add_row({"x,y", "say \"hi\""});
    CHECK(t.str() == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);
}

TEST_CASE("Commands - SNR sweep", "[commands]")
{
    const Config c = parse_config("channel.kappa = 0\nsweep.axis = snr_db\nsweep.start = -30\nsweep.stop = 40\n"
                                  "sweep.points = 15\n");
    const CommandOutput out = cmd_sweep(c, {});
    CHECK(out.exit_code == kExitOk);
    CHECK_FALSE(out.svg);
    const auto rows = parse_csv(out.csv);
    REQUIRE(rows.size() == 16);
    CHECK(rows[0] == header_of(kSweepColumns));
    CHECK(num(rows[1][0]) == -30.0);
    CHECK(rows[1][1] == "base");
    CHECK(std::abs(num(rows[1][2]) - 1.0) < 0.05);
    for (std::size_t i = 2; i < rows.size(); ++i)
    {
        CHECK(num(rows[i][2]) < num(rows[i - 1][2]));
        CHECK(num(rows[i][5]) == 0.0);
        CHECK(num(rows[i][4]) == 1.0);
    }
    CHECK_THROWS_AS(cmd_sweep(parse_config(""), {}), ConfigError);
}

TEST_CASE("Commands - Subcarrier sweep and curves", "[commands]")
{
    const Config c = parse_config("sweep.axis = subcarrier_count\nsweep.values = 1, 2, 4, 8, 16, 32, 64, 128, 256\n"
                                  "grid.spacing = 0.25\nsweep.curve_axis = kappa\nsweep.curve_values = 0, 5, los\n");
    CommandOptions opts;
    opts.svg = true;
    const CommandOutput out = cmd_sweep(c, opts);
    REQUIRE(out.svg);
    CHECK(out.svg->find("<svg") != std::string::npos);
    const auto rows = parse_csv(out.csv);
    REQUIRE(rows.size() == 1 + 27);
    CHECK(rows[1][1] == "kappa=0");
    CHECK(rows[19][1] == "kappa=los");
    for (std::size_t curve = 0; curve < 3; ++curve)
    {
        double previous_gain = INFINITY;
        for (std::size_t i = 2; i <= 9; ++i)
        {
            const auto &prev = rows[curve * 9 + i - 1];
            const auto &row = rows[curve * 9 + i];
            CHECK(row[1] == prev[1]);
            CHECK(num(row[2]) < num(prev[2]));
            // relative improvement per doubling shrinks once the grid spans the resonance
            const double gain = 1.0 - num(row[2]) / num(prev[2]);
            if (i >= 5)
                CHECK(gain < previous_gain);
            previous_gain = gain;
        }
    }
}

TEST_CASE("Commands - Depth sweep slope", "[commands]")
{
    const Config c = parse_config("channel.kappa = 0\nnoise.snr_db = 60\nsensor.half_width = 10\n"
                                  "grid.frequencies = 0\nsweep.axis = depth\nsweep.start = 0.2\nsweep.stop = 1\n"
                                  "sweep.points = 9\nsweep.spacing = log\n");
    const auto rows = parse_csv(cmd_sweep(c, {}).csv);
    std::vector<double> xs, ys;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        xs.push_back(num(rows[i][0]));
        ys.push_back(num(rows[i][2]));
    }
    CHECK(fit_loglog_slope(xs, ys) == Approx(-2.0).margin(0.15));
}

TEST_CASE("Commands - Output is identical across thread counts", "[commands]")
{
    const Config sweep = parse_config("sweep.axis = fwhm\nsweep.start = 0.01\nsweep.stop = 10\nsweep.points = 6\n"
                                      "sweep.spacing = log\ngrid.count = 16\nsweep.curve_axis = kappa\n"
                                      "sweep.curve_values = 0, 2\n");
    const Config val = parse_config("grid.count = 2\nsweep.axis = kappa\nsweep.values = 0, 3, los\n");
    CommandOptions opts;
    opts.samples = 20000;
    opts.seed = 9;
    opts.dense_check = true;
    const unsigned saved = thread_count();
    set_thread_count(1);
    const std::string s1 = cmd_sweep(sweep, opts).csv, v1 = cmd_validate(val, opts).csv;
    set_thread_count(3);
    const std::string s3 = cmd_sweep(sweep, opts).csv, v3 = cmd_validate(val, opts).csv;
    set_thread_count(saved);
    CHECK(s1 == s3);
    CHECK(v1 == v3);
    CHECK(cmd_sweep(sweep, opts).csv == s1);
}

TEST_CASE("Commands - Validation", "[commands]")
{
    const Config c = parse_config("grid.frequencies = 0\nnoise.variance = 0.01\nsweep.axis = kappa\n"
                                  "sweep.values = 0, 1, los\n");
    CommandOptions opts;
    opts.samples = 100000;
    opts.seed = 4;
    opts.dense_check = true;
    const CommandOutput out = cmd_validate(c, opts);
    CHECK(out.exit_code == kExitOk);
    const auto rows = parse_csv(out.csv);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == header_of(kValidateColumns));
    CHECK(rows[1][0] == "kappa=0");

    // Rayleigh: no coupling, block path equals the closed form
    CHECK(num(rows[1][1]) == Approx(num(rows[1][2])).epsilon(1e-12));
    CHECK(num(rows[1][1]) == Approx(num(rows[1][3])).epsilon(1e-9));
    for (std::size_t i = 1; i <= 2; ++i)
    {
        CHECK(std::abs(num(rows[i][6])) <= kMaxZScore);
        CHECK(rows[i][7].empty());
    }
    // line of sight: block cells empty, same-draw closed form matches the estimate
    CHECK(rows[3][2].empty());
    CHECK(rows[3][3].empty());
    CHECK(std::abs(num(rows[3][4]) - num(rows[3][7])) <= 1e-10 * num(rows[3][7]));

    const Config big = parse_config("grid.count = 65\n");
    CHECK_THROWS_AS(cmd_validate(big, opts), std::invalid_argument);
    opts.dense_check = false;
    opts.samples = 2000;
    CHECK(parse_csv(cmd_validate(big, opts).csv)[1][3].empty());
}

TEST_CASE("Commands - Selection", "[commands]")
{
    const Config c = parse_config("sensor.half_width = 10\ngrid.spacing = 1\ngrid.count = 21\nselect.budget = 6\n");
    const auto rows = parse_csv(cmd_select(c, {}).csv);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == header_of(kSelectColumns));
    CHECK(num(rows[1][1]) == 0.0);
    CHECK(num(rows[1][3]) == 1.0);
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        CHECK(num(rows[i][0]) == static_cast<double>(i));
        CHECK(num(rows[i][2]) > 0.0);
        CHECK(num(rows[i][4]) < num(rows[i][3]));
        if (i > 1)
            CHECK(rows[i][3] == rows[i - 1][4]);
    }

    CommandOptions one;
    one.budget = 1;
    CHECK(parse_csv(cmd_select(c, one).csv).size() == 2);
    CHECK_THROWS_AS(cmd_select(parse_config("grid.count = 3\n"), {}), ConfigError);
    CommandOptions too_many;
    too_many.budget = 4;
    CHECK_THROWS_AS(cmd_select(parse_config("grid.count = 3\n"), too_many), std::invalid_argument);
}

TEST_CASE("Commands - Asymptotics report", "[commands]")
{
    const auto rows = parse_csv(cmd_asymptotics(parse_config(""), {}).csv);
    CHECK(rows[0] == header_of(kAsymptoticsColumns));
    int found = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const Row &r = rows[i];
        REQUIRE(r.size() == 7);
        const double dev = num(r[6]);
        if (r[0] == "c1" && r[1] == "wide")
        {
            CHECK(dev < 1e-3);
            ++found;
        }
        if (r[0] == "c2" && r[1] == "wide")
        {
            CHECK(dev < 5e-3);
            ++found;
        }
        if ((r[0] == "c1" || r[0] == "c2") && r[1] == "narrow")
        {
            CHECK(dev < 0.02);
            ++found;
        }
        if (r[0] == "wideband_c1_sum")
        {
            CHECK(dev < 0.05);
            ++found;
        }
        if (r[0] == "bcrb_slope_depth")
        {
            CHECK(num(r[4]) == Approx(-2.0).margin(0.15));
            ++found;
        }
        if (r[0] == "bcrb_slope_half_width" && r[1] == "narrow")
        {
            CHECK(num(r[4]) == Approx(1.0).margin(0.1));
            ++found;
        }
    }
    CHECK(found == 2 + 2 + 4 + 1 + 1 + 1);
}

TEST_CASE("Commands - Tool exit codes", "[commands][tool]")
{
    write_text("tool_ok.cfg", "grid.count = 4\nsweep.axis = snr_db\nsweep.values = 0, 10\n");
    write_text("tool_bad.cfg", "grid.cuont = 4\n");
    write_text("tool_num.cfg", "noise.variance = 1e-320\nsweep.axis = depth\nsweep.values = 0.5, 0.9\n");

    CHECK(run_tool("sweep --config tool_ok.cfg --out tool_ok.csv --svg") == kExitOk);
    CHECK(std::ifstream("tool_ok.csv").good());
    CHECK(std::ifstream("tool_ok.svg").good());
    CHECK(run_tool("") == kExitUsage);
    CHECK(run_tool("sweep --config tool_ok.cfg") == kExitUsage);
    CHECK(run_tool("sweep --config missing.cfg --out x.csv") == kExitUsage);
    CHECK(run_tool("validate --config tool_ok.cfg --out x.csv --samples 10") == kExitUsage);
    CHECK(run_tool("sweep --config tool_bad.cfg --out x.csv") == kExitUsage);
    CHECK(run_tool("sweep --config tool_num.cfg --out x.csv") == kExitNumerical);
    CHECK(run_tool("sweep --config tool_ok.cfg --out no/such/dir/out.csv") == kExitUsage);
    CHECK(run_tool("--help") == kExitOk);
    for (const char *f : {"tool_ok.cfg", "tool_bad.cfg", "tool_num.cfg", "tool_ok.csv", "tool_ok.svg", "x.csv"})
        std::remove(f);
}
