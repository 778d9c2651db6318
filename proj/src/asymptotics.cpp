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


#include "metabcrb/asymptotics.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace metabcrb {

namespace {

using boost::math::double_constants::pi;
using boost::math::double_constants::one_div_root_two_pi;

double scaled_offset(const SensorModel &sensor, const SensingPrior &prior, double delta_f)
{
    return delta_f / (sensor.shift_rate() * prior.std_dev());
}

} // namespace

double width_ratio(const SensorModel &sensor, const SensingPrior &prior)
{
    return sensor.half_width() / (std::abs(sensor.shift_rate()) * prior.std_dev());
}

Regime classify_regime(const SensorModel &sensor, const SensingPrior &prior)
{
    const double ratio = width_ratio(sensor, prior);
    if (ratio >= kWideRatio)
        return Regime::wide;
    if (ratio <= kNarrowRatio)
        return Regime::narrow;
    return Regime::transition;
}

std::string_view to_string(Regime regime)
{
    switch (regime)
    {
    case Regime::wide:
        return "wide";
    case Regime::narrow:
        return "narrow";
    case Regime::transition:
        break;
    }
    return "transition";
}

double standard_normal_pdf(double x)
{
    return one_div_root_two_pi * std::exp(-0.5 * x * x);
}

double c1_wide_limit(const SensorModel &sensor, double delta_f)
{
    const double x0 = delta_f / sensor.half_width();
    const double k = sensor.absorption_depth() * sensor.shift_rate() / sensor.half_width();
    const double den = 1.0 + x0 * x0;
    return k * k / (den * den);
}

double c2_wide_limit(const SensorModel &sensor, double delta_f)
{
    // evaluate at c = 0 with the subcarrier placed delta_f away from resonance(0)
    const double f = sensor.resonance(0.0) + delta_f;
    return std::norm(std::conj(sensor.reflection_dc(f, 0.0)) * sensor.reflection(f, 0.0));
}

double c1_narrow_limit(const SensorModel &sensor, const SensingPrior &prior, double delta_f)
{
    const double A = sensor.absorption_depth();
    const double phi = standard_normal_pdf(scaled_offset(sensor, prior, delta_f));
    return 0.5 * pi * phi * A * A * std::abs(sensor.shift_rate()) / (sensor.half_width() * prior.std_dev());
}

double c2_narrow_limit(const SensorModel &sensor, const SensingPrior &prior, double delta_f)
{
    const double A2 = sensor.absorption_depth() * sensor.absorption_depth();
    const double phi = standard_normal_pdf(scaled_offset(sensor, prior, delta_f));
    return 0.25 * pi * pi * phi * phi * A2 * A2 / prior.variance();
}

double wideband_c1_sum(const SensorModel &sensor, const SubcarrierGrid &grid, const SensingPrior &)
{
    const auto spacing = grid.spacing();
    if (!spacing)
        throw std::invalid_argument("wideband_c1_sum: requires a uniform grid");
    const double k = sensor.absorption_depth() * sensor.shift_rate();
    return k * k * pi / (2.0 * sensor.half_width() * *spacing);
}

double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_loglog_slope: xs and ys differ in length");
    if (xs.size() < 3)
        throw std::invalid_argument("fit_loglog_slope: at least three points required");
    const std::size_t n = xs.size();
    std::vector<double> lx(n), ly(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_loglog_slope: values must be strictly positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("fit_loglog_slope: xs must not all be equal");
    return sxy / sxx;
}

} // namespace metabcrb
