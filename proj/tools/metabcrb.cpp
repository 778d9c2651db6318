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


#include "metabcrb/cli/commands.hpp"
#include "metabcrb/cli/config.hpp"
#include "metabcrb/errors.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace metabcrb::cli;

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush())
        throw std::runtime_error("cannot write '" + path + "'");
}

std::string svg_path(const std::string &csv_path)
{
    return std::filesystem::path(csv_path).replace_extension(".svg").string();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Bayesian Cramer-Rao bounds for multicarrier meta-material backscatter sensing"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    CommandOptions options;
    std::size_t budget = 0;

    auto common = [&](CLI::App *cmd) {
        cmd->add_option("--config", config_path, "Scenario config (key = value)")->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", out_path, "Output CSV path")->required();
    };

    auto *sweep = app.add_subcommand("sweep", "Bound along one axis, optionally for several curves");
    common(sweep);
    sweep->add_flag("--svg", options.svg, "Also write an SVG chart next to the CSV");

    auto *validate = app.add_subcommand("validate", "Closed form against block, dense and Monte Carlo oracles");
    common(validate);
    validate->add_option("--seed", options.seed, "Monte Carlo seed")->capture_default_str();
    validate->add_option("--samples", options.samples, "Monte Carlo samples")->capture_default_str()->check(CLI::Range(
        std::int64_t{1000}, std::int64_t{1} << 40));
    validate->add_flag("--dense-check", options.dense_check, "Also invert the full BFIM (at most 64 subcarriers)");

    auto *select = app.add_subcommand("select", "Greedy subcarrier selection from the configured grid");
    common(select);
    select->add_option("--budget", budget, "Number of subcarriers to select")->check(CLI::PositiveNumber);
    select->add_flag("--svg", options.svg, "Also write an SVG chart next to the CSV");

    auto *asym = app.add_subcommand("asymptotics", "Moments and slopes against their asymptotic forms");
    common(asym);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (budget > 0)
            options.budget = budget;
        const Config config = load_config(config_path);
        CommandOutput result;
        if (*sweep)
            result = cmd_sweep(config, options);
        else if (*validate)
            result = cmd_validate(config, options);
        else if (*select)
            result = cmd_select(config, options);
        else
            result = cmd_asymptotics(config, options);

        write_file(out_path, result.csv);
        if (result.svg)
            write_file(svg_path(out_path), *result.svg);
        if (result.exit_code == kExitValidation)
            std::cerr << "validation failed; see " << out_path << "\n";
        return result.exit_code;
    }
    catch (const metabcrb::NumericalError &e)
    {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    catch (const ConfigError &e)
    {
        std::cerr << config_path << ": " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
