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

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

namespace metabcrb {

/// Gauss-Hermite quadrature. `order` is the starting node count; with `refine` set the order
/// is doubled until successive estimates agree to kQuadratureTolerance or kMaxQuadratureOrder
/// is reached.
struct Quadrature
{
    int order = 200;
    bool refine = true;
};

/// Plain Monte Carlo over the prior with counter-based draws keyed by (seed, sample index).
struct MonteCarlo
{
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 1;
};

using ExpectationMethod = std::variant<Quadrature, MonteCarlo>;

inline constexpr int kMaxQuadratureOrder = 1600;
inline constexpr double kQuadratureTolerance = 1e-9;

/// Below this kernel-to-prior width ratio Gamma / (|alpha| sigma_c) the Lorentzian moments are
/// integrated adaptively in the kernel's own scale instead of by Gauss-Hermite.
inline constexpr double kAdaptiveWidthRatio = 0.5;

/// Throws std::invalid_argument for order < 2 or samples < 1.
void validate_method(const ExpectationMethod &method);

/// Estimate with its standard error. Quadrature results report std_err = 0 and the number
/// of nodes used as `samples`. For complex values std_err bounds both components.
template <typename T>
struct McEstimate
{
    T value{};
    double std_err = 0.0;
    std::int64_t samples = 0;
};

/// Nodes and weights for the weight function exp(-x^2); weights sum to sqrt(pi).
struct GaussHermiteRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached, thread-safe. Nodes come from the Jacobi matrix eigenvalues, polished by Newton on
/// the orthonormal recurrence; weights are evaluated in log space so high orders do not overflow.
const GaussHermiteRule &gauss_hermite_rule(int order);

using PriorFunction = std::function<Complex(double)>;

/// The i-th prior draw of a Monte Carlo run. Shared by every consumer of the prior stream.
double prior_draw(const SensingPrior &prior, std::uint64_t seed, std::int64_t index);

/// E[fn(c)], c ~ prior, with a fixed Gauss-Hermite order (exact for polynomials of degree
/// up to 2 order - 1). Throws NumericalError naming the node if fn is not finite there.
Complex gauss_hermite_expectation(const PriorFunction &fn, const SensingPrior &prior, int order);

/// E[fn(c)], c ~ prior.
McEstimate<Complex> expect_over_prior(const PriorFunction &fn, const SensingPrior &prior,
                                      const ExpectationMethod &method);

/// E[fn(c)] by adaptive Gauss-Kronrod over the standardized prior variable, with breakpoints
/// graded geometrically around a narrow feature of fn located at `feature_center` with
/// scale `feature_width` (both in condition units).
Complex expect_with_feature(const PriorFunction &fn, const SensingPrior &prior, double feature_center,
                            double feature_width);

/// The three prior expectations every bound formula needs at one subcarrier:
///   c1 = E|dgamma/dc|^2,  g = E[conj(dgamma/dc) gamma],  c3 = E|gamma|^2.
/// |g|^2 is the quantity called C2.
struct SubcarrierMoments
{
    McEstimate<double> c1;
    McEstimate<Complex> g;
    McEstimate<double> c3;

    double c2() const { return std::norm(g.value); }
};

SubcarrierMoments subcarrier_moments(const SensorModel &sensor, double f, const SensingPrior &prior,
                                     const ExpectationMethod &method);

McEstimate<double> c1(const SensorModel &sensor, double f, const SensingPrior &prior, const ExpectationMethod &method);
McEstimate<Complex> c2(const SensorModel &sensor, double f, const SensingPrior &prior, const ExpectationMethod &method);
McEstimate<double> c3(const SensorModel &sensor, double f, const SensingPrior &prior, const ExpectationMethod &method);

} // namespace metabcrb
