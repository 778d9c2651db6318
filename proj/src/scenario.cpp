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

#include "metabcrb/scenario.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace metabcrb {

SensingPrior::SensingPrior(double mean, double std) : mean_(mean), std_(std)
{
    if (!std::isfinite(mean_) || !std::isfinite(std_) || std_ <= 0.0)
        throw std::invalid_argument("SensingPrior: mean must be finite and std positive");
}

RicianSpec RicianSpec::rician(double kappa)
{
    if (!std::isfinite(kappa) || kappa < 0.0)
        throw std::invalid_argument("RicianSpec: kappa must be finite and nonnegative");
    return RicianSpec(kappa, false);
}

RicianSpec RicianSpec::line_of_sight()
{
    return RicianSpec(std::numeric_limits<double>::infinity(), true);
}

NoiseSpec::NoiseSpec(double variance) : variance_(variance)
{
    if (!std::isfinite(variance_) || variance_ <= 0.0)
        throw std::invalid_argument("NoiseSpec: variance must be finite and positive");
}

SubcarrierGrid::SubcarrierGrid(std::vector<double> frequencies, std::optional<double> spacing)
    : frequencies_(std::move(frequencies)), spacing_(spacing)
{
    if (frequencies_.empty())
        throw std::invalid_argument("SubcarrierGrid: at least one subcarrier is required");
    for (std::size_t k = 0; k < frequencies_.size(); ++k)
    {
        if (!std::isfinite(frequencies_[k]))
            throw std::invalid_argument("SubcarrierGrid: frequency " + std::to_string(k) + " is not finite");
        if (k > 0 && !(frequencies_[k] > frequencies_[k - 1]))
            throw std::invalid_argument("SubcarrierGrid: frequencies must be strictly increasing (index " +
                                        std::to_string(k) + ")");
    }
}

SubcarrierGrid SubcarrierGrid::uniform(double center, double spacing, std::size_t count)
{
    if (count == 0)
        throw std::invalid_argument("SubcarrierGrid: count must be at least 1");
    if (!std::isfinite(spacing) || spacing <= 0.0)
        throw std::invalid_argument("SubcarrierGrid: spacing must be positive");
    std::vector<double> f(count);
    const double mid = 0.5 * static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k)
        f[k] = center + (static_cast<double>(k) - mid) * spacing;
    return SubcarrierGrid(std::move(f), spacing);
}

SubcarrierGrid SubcarrierGrid::outward(double center, double spacing, std::size_t count)
{
    if (count == 0)
        throw std::invalid_argument("SubcarrierGrid: count must be at least 1");
    if (!std::isfinite(spacing) || spacing <= 0.0)
        throw std::invalid_argument("SubcarrierGrid: spacing must be positive");
    // offsets 0, +1, -1, +2, -2, ... cover the contiguous range [lo, lo + count - 1]
    const auto lo = -static_cast<long long>((count - 1) / 2);
    std::vector<double> f(count);
    for (std::size_t k = 0; k < count; ++k)
        f[k] = center + static_cast<double>(lo + static_cast<long long>(k)) * spacing;
    return SubcarrierGrid(std::move(f), spacing);
}

SubcarrierGrid SubcarrierGrid::from_frequencies(std::vector<double> frequencies)
{
    return SubcarrierGrid(std::move(frequencies), std::nullopt);
}

double SubcarrierGrid::bandwidth() const
{
    if (!spacing_)
        throw std::logic_error("SubcarrierGrid: bandwidth is only defined for uniform grids");
    return static_cast<double>(count()) * *spacing_;
}

double prior_curvature(const SensingPrior &prior)
{
    return 1.0 / prior.variance();
}

double rician_mean(const RicianSpec &channel)
{
    if (channel.deterministic_los())
        return 1.0;
    return std::sqrt(channel.kappa() / (channel.kappa() + 1.0));
}

double rician_second_moment(const RicianSpec &channel)
{
    const double m = rician_mean(channel);
    return m * m + 2.0 * rician_coordinate_variance(channel);
}

double rician_coordinate_variance(const RicianSpec &channel)
{
    if (channel.deterministic_los())
        return 0.0;
    return 0.5 / (channel.kappa() + 1.0);
}

double channel_prior_info(const RicianSpec &channel)
{
    if (channel.deterministic_los())
        throw std::invalid_argument("channel_prior_info: deterministic line-of-sight channels carry infinite prior information");
    return 2.0 * (channel.kappa() + 1.0);
}

NoiseSpec snr_to_noise(double snr_db)
{
    return NoiseSpec(std::pow(10.0, -snr_db / 10.0));
}

double noise_to_snr_db(const NoiseSpec &noise)
{
    return -10.0 * std::log10(noise.variance());
}

Scenario default_scenario()
{
    SensorModel sensor(0.9, 1.0, 1.0, 0.0);
    SensingPrior prior(0.0, 1.0);
    const double center = sensor.resonance(prior.mean());
    return Scenario{sensor, prior, RicianSpec::rician(1.0), snr_to_noise(20.0),
                    SubcarrierGrid::uniform(center, 0.05 * sensor.half_width(), 128)};
}

Scenario with_grid(const Scenario &base, SubcarrierGrid grid)
{
    return Scenario{base.sensor, base.prior, base.channel, base.noise, std::move(grid)};
}

} // namespace metabcrb
