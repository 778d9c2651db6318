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

#include "metabcrb/cli/config.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace metabcrb::cli {

enum ExitCode : int
{
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitNumerical = 3,
};

struct CommandOptions
{
    std::uint64_t seed = 1;
    std::int64_t samples = 1'000'000;
    bool dense_check = false;
    bool svg = false;
    std::optional<std::size_t> budget; ///< overrides select.budget
};

struct CommandOutput
{
    std::string csv;
    std::optional<std::string> svg;
    int exit_code = kExitOk;
};

/// Column sets, in output order.
inline constexpr const char *kSweepColumns[] = {"axis_value", "curve_label", "bcrb", "first_term", "prior_term",
                                                "coupling_term"};
inline constexpr const char *kValidateColumns[] = {"scenario",    "closed_form", "schur_from_blocks",
                                                   "dense_inverse", "mc_estimate", "mc_std_err",
                                                   "z_score",     "closed_form_mc_draws"};
inline constexpr const char *kSelectColumns[] = {"rank", "frequency", "contribution", "bound_before", "bound_after"};
inline constexpr const char *kAsymptoticsColumns[] = {"quantity", "regime",    "ratio",        "offset",
                                                      "numeric",  "predicted", "rel_deviation"};

/// Validation fails when |z| exceeds this or a deterministic pair differs by more than kPairTolerance.
inline constexpr double kMaxZScore = 4.0;
inline constexpr double kPairTolerance = 1e-9;

/// One row per sweep value per curve, rows in sweep order. Requires a sweep in the config.
CommandOutput cmd_sweep(const Config &config, const CommandOptions &options);

/// One row per scenario: the base scenario, or every sweep point if a sweep is configured.
/// Cells that do not apply (block paths under line-of-sight channels, the dense path without
/// dense_check, same-draw closed form for random channels) are left empty.
CommandOutput cmd_validate(const Config &config, const CommandOptions &options);

/// Greedy selection from the configured grid; the budget comes from options or select.budget.
CommandOutput cmd_select(const Config &config, const CommandOptions &options);

/// Quadrature moments against their asymptotic limits in both regimes, fitted scaling slopes
/// and the wideband sum, all built around the configured sensor and prior.
CommandOutput cmd_asymptotics(const Config &config, const CommandOptions &options);

} // namespace metabcrb::cli
