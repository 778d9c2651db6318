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


#pragma once

#include "metabcrb/scenario.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metabcrb::cli {

/// Malformed configuration. line() is 0 for errors not tied to a line.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(const std::string &message, int line = 0);
    int line() const { return line_; }

  private:
    int line_;
};

enum class Axis
{
    fwhm,
    depth,
    snr_db,
    subcarrier_count,
    kappa,
};

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

/// One value along an axis. `los` selects the deterministic line-of-sight channel (kappa only).
struct AxisPoint
{
    double value = 0.0;
    bool los = false;
    std::string label;
};

struct SweepSpec
{
    Axis axis = Axis::snr_db;
    std::vector<AxisPoint> points;
    bool log_spacing = false;
    std::optional<Axis> curve_axis;
    std::vector<AxisPoint> curve_points;
};

/// Every scenario field, before validation. Unset grid fields resolve at build time:
/// spacing to 0.05 * half_width, center to the prior-mean resonance.
struct ScenarioParams
{
    double depth = 0.9;
    double half_width = 1.0;
    double shift_rate = 1.0;
    double offset = 0.0;
    double prior_mean = 0.0;
    double prior_std = 1.0;
    double kappa = 1.0;
    bool los = false;
    double snr_db = 20.0;
    std::optional<double> noise_variance;
    std::optional<double> grid_center;
    std::optional<double> grid_spacing;
    std::size_t grid_count = 128;
    std::optional<std::vector<double>> grid_frequencies;
    bool outward_grid = false;
};

/// Sets one axis on a parameter set. Subcarrier counts switch the grid to outward growth.
void apply(ScenarioParams &params, Axis axis, const AxisPoint &point);

/// Throws std::invalid_argument for out-of-range values.
Scenario build_scenario(const ScenarioParams &params);

struct Config
{
    ScenarioParams scenario;
    int quadrature_order = 200;
    std::optional<SweepSpec> sweep;
    std::optional<std::size_t> select_budget;
    double asymptotics_snr_db = 30.0;
    double asymptotics_depth_snr_db = 60.0;
};

/// Flat `key = value` text; `#` starts a comment. Unknown, duplicate or malformed keys throw
/// ConfigError carrying the line number.
Config parse_config(std::string_view text);
Config load_config(const std::string &path);

} // namespace metabcrb::cli
