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
#include "metabcrb/sensor_model.hpp"

#include <span>
#include <string_view>

namespace metabcrb {

enum class Regime
{
    wide,
    transition,
    narrow,
};

inline constexpr double kWideRatio = 10.0;
inline constexpr double kNarrowRatio = 0.1;

/// Kernel-to-prior width ratio Gamma / (|alpha| sigma_c).
double width_ratio(const SensorModel &sensor, const SensingPrior &prior);

/// Wide at ratio >= 10, narrow at ratio <= 0.1, transition in between.
Regime classify_regime(const SensorModel &sensor, const SensingPrior &prior);
std::string_view to_string(Regime regime);

double standard_normal_pdf(double x);

// In every limit below, delta_f is the subcarrier offset from the prior-mean resonance,
// f - (alpha mu_c + beta).

/// |dgamma/dc|^2 at x0 = delta_f / Gamma: (A alpha / Gamma)^2 / (1 + x0^2)^2.
double c1_wide_limit(const SensorModel &sensor, double delta_f);

/// |conj(dgamma/dc) gamma|^2 at x0 = delta_f / Gamma.
double c2_wide_limit(const SensorModel &sensor, double delta_f);

/// (pi / 2) phi(r) A^2 |alpha| / (Gamma sigma_c), r = delta_f / (alpha sigma_c).
double c1_narrow_limit(const SensorModel &sensor, const SensingPrior &prior, double delta_f);

/// (pi^2 / 4) phi(r)^2 A^4 / sigma_c^2.
double c2_narrow_limit(const SensorModel &sensor, const SensingPrior &prior, double delta_f);

/// Integral approximation of sum_k c1_k over a dense uniform grid: A^2 alpha^2 pi / (2 Gamma df).
/// Throws std::invalid_argument for grids without a spacing.
double wideband_c1_sum(const SensorModel &sensor, const SubcarrierGrid &grid, const SensingPrior &prior);

/// Least-squares slope of log y against log x. Throws std::invalid_argument for fewer than
/// three points, mismatched lengths or non-positive values.
double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

} // namespace metabcrb
