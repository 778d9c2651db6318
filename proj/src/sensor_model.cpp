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

#include "metabcrb/sensor_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace metabcrb {

SensorModel::SensorModel(double absorption_depth, double half_width, double shift_rate, double center_offset)
    : depth_(absorption_depth), half_width_(half_width), shift_rate_(shift_rate), center_offset_(center_offset)
{
    if (!std::isfinite(depth_) || !std::isfinite(half_width_) || !std::isfinite(shift_rate_) || !std::isfinite(center_offset_))
        throw std::invalid_argument("SensorModel: parameters must be finite");
    if (depth_ < 0.0 || depth_ > 1.0)
        throw std::invalid_argument("SensorModel: absorption depth must lie in [0, 1], got " + std::to_string(depth_));
    if (half_width_ <= 0.0)
        throw std::invalid_argument("SensorModel: half width must be positive, got " + std::to_string(half_width_));
    if (shift_rate_ == 0.0)
        throw std::invalid_argument("SensorModel: shift rate must be nonzero");
}

Complex SensorModel::reflection(double f, double c) const
{
    const Complex denom(1.0, detuning(f, c));
    return 1.0 - depth_ / denom;
}

Complex SensorModel::reflection_dc(double f, double c) const
{
    const Complex denom(1.0, detuning(f, c));
    const double scale = depth_ * shift_rate_ / half_width_;
    return Complex(0.0, -scale) / (denom * denom);
}

} // namespace metabcrb
