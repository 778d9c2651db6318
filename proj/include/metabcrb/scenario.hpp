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

#include "metabcrb/sensor_model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace metabcrb {

/// Gaussian prior c ~ N(mean, std^2) on the sensing target.
class SensingPrior
{
  public:
    SensingPrior(double mean, double std);

    double mean() const { return mean_; }
    double std_dev() const { return std_; }
    double variance() const { return std_ * std_; }

  private:
    double mean_;
    double std_;
};

/// Per-subcarrier channel statistics. Both hops are CN(sqrt(k/(k+1)), 1/(k+1)); the
/// deterministic line-of-sight mode replaces them with h = 1 exactly.
class RicianSpec
{
  public:
    static RicianSpec rician(double kappa);
    static RicianSpec line_of_sight();

    double kappa() const { return kappa_; }
    bool deterministic_los() const { return los_; }

  private:
    RicianSpec(double kappa, bool los) : kappa_(kappa), los_(los) {}

    double kappa_;
    bool los_;
};

/// Complex AWGN n ~ CN(0, variance).
class NoiseSpec
{
  public:
    explicit NoiseSpec(double variance);

    double variance() const { return variance_; }

  private:
    double variance_;
};

/// Ordered, strictly increasing set of subcarrier frequencies. Uniform grids also carry
/// their spacing; arbitrary lists do not.
class SubcarrierGrid
{
  public:
    /// count frequencies spaced by `spacing`, symmetric about `center`.
    static SubcarrierGrid uniform(double center, double spacing, std::size_t count);

    /// The first `count` entries of center, center + d, center - d, center + 2d, ... in sorted
    /// order. Grids for increasing counts are nested.
    static SubcarrierGrid outward(double center, double spacing, std::size_t count);

    /// Arbitrary frequencies; must be strictly increasing and nonempty.
    static SubcarrierGrid from_frequencies(std::vector<double> frequencies);

    std::span<const double> frequencies() const { return frequencies_; }
    double operator[](std::size_t k) const { return frequencies_[k]; }
    std::size_t count() const { return frequencies_.size(); }
    std::optional<double> spacing() const { return spacing_; }

    /// count * spacing. Throws std::logic_error for non-uniform grids.
    double bandwidth() const;

  private:
    SubcarrierGrid(std::vector<double> frequencies, std::optional<double> spacing);

    std::vector<double> frequencies_;
    std::optional<double> spacing_;
};

struct Scenario
{
    SensorModel sensor;
    SensingPrior prior;
    RicianSpec channel;
    NoiseSpec noise;
    SubcarrierGrid grid;
};

/// -E[d^2 log p(c) / dc^2] for the Gaussian prior, i.e. 1 / std^2.
double prior_curvature(const SensingPrior &prior);

/// E[h] = sqrt(k / (k + 1)); 1 in line-of-sight mode.
double rician_mean(const RicianSpec &channel);

/// E|h|^2, which is 1 for every kappa.
double rician_second_moment(const RicianSpec &channel);

/// Variance of each real coordinate of h: 1 / (2 (k + 1)); 0 in line-of-sight mode.
double rician_coordinate_variance(const RicianSpec &channel);

/// Prior Fisher information per real channel coordinate, 2 (k + 1). Throws
/// std::invalid_argument in line-of-sight mode, where the information is infinite.
double channel_prior_info(const RicianSpec &channel);

/// SNR is defined as 1 / sigma^2 (unit channel power, |gamma| <= 1).
NoiseSpec snr_to_noise(double snr_db);
double noise_to_snr_db(const NoiseSpec &noise);

/// mu_c = 0, sigma_c = 1, A = 0.9, Gamma = 1, alpha = 1, beta = 0, kappa = 1, 20 dB,
/// 128 subcarriers spaced 0.05 Gamma around the prior-mean resonance.
Scenario default_scenario();

/// Same scenario with a different subcarrier set.
Scenario with_grid(const Scenario &base, SubcarrierGrid grid);

} // namespace metabcrb
