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

#include <complex>
#include <concepts>

namespace metabcrb {

using Complex = std::complex<double>;

/// Anything that can report a complex reflection coefficient and its derivative with
/// respect to the sensing target at a (frequency, condition) pair.
template <typename M>
concept ReflectionModel = requires(const M &m, double f, double c) {
    { m.reflection(f, c) } -> std::convertible_to<Complex>;
    { m.reflection_dc(f, c) } -> std::convertible_to<Complex>;
};

/// Lorentzian absorption dip whose center frequency moves linearly with the sensed condition:
///
///     gamma(f, c) = 1 - A / (1 + j x),   x = (f - (alpha c + beta)) / Gamma
///
/// The full width at half maximum of the dip is 2 Gamma.
class SensorModel
{
  public:
    /// Throws std::invalid_argument unless 0 <= depth <= 1, half_width > 0, shift_rate != 0
    /// and every parameter is finite.
    SensorModel(double absorption_depth, double half_width, double shift_rate, double center_offset = 0.0);

    double absorption_depth() const { return depth_; }
    double half_width() const { return half_width_; }
    double shift_rate() const { return shift_rate_; }
    double center_offset() const { return center_offset_; }

    /// Resonance frequency alpha c + beta for a given condition value.
    double resonance(double c) const { return shift_rate_ * c + center_offset_; }

    /// Normalized detuning x = (f - resonance(c)) / Gamma.
    double detuning(double f, double c) const { return (f - resonance(c)) / half_width_; }

    Complex reflection(double f, double c) const;

    /// Exact d(gamma)/dc = -j (A alpha / Gamma) / (1 + j x)^2.
    Complex reflection_dc(double f, double c) const;

  private:
    double depth_;
    double half_width_;
    double shift_rate_;
    double center_offset_;
};

static_assert(ReflectionModel<SensorModel>);

} // namespace metabcrb
