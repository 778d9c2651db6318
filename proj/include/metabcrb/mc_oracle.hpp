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

#include "metabcrb/bcrb.hpp"
#include "metabcrb/expectation.hpp"
#include "metabcrb/scenario.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

namespace metabcrb {

/// One draw of theta = [c, (h^r_k, h^t_k) for k = 1..L].
struct ParameterSample
{
    double c = 0.0;
    std::vector<std::pair<Complex, Complex>> channels;
};

/// Draw `index` of the joint prior. c is prior_draw(prior, seed, index); channels come from
/// the channel stream and are exactly 1 in line-of-sight mode.
ParameterSample draw_parameters(const Scenario &scenario, std::uint64_t seed, std::int64_t index);

/// Exact Fisher information of y given theta, (2 / sigma^2) Re(conj(dmu_i) dmu_j) with
/// mu_k = h^r_k gamma_k(c) h^t_k, laid out as in dense_bfim. Contains no prior term.
/// Throws std::invalid_argument if the sample does not match the grid.
BfimBlocks conditional_fim(const Scenario &scenario, const ParameterSample &sample);

/// Real parameter vector [c, Re h^r_1, Im h^r_1, Re h^t_1, Im h^t_1, ...].
Eigen::VectorXd parameter_vector(const ParameterSample &sample);

/// E_y[-log p(y | theta)] up to a constant when y is generated at `truth`:
/// sum_k |mu_k(truth) - mu_k(theta)|^2 / sigma^2. Its Hessian at theta = truth is conditional_fim.
double expected_negative_log_likelihood(const Scenario &scenario, const ParameterSample &truth,
                                        const Eigen::VectorXd &theta);

/// Averaged BFIM (conditional part averaged over draws plus exact prior blocks) with the
/// standard error of every averaged entry, estimated from contiguous batch means.
struct BfimAverage
{
    BfimBlocks mean;
    BfimBlocks std_err;
    std::int64_t samples = 0;
};

inline constexpr std::int64_t kMinOracleSamples = 1000;
inline constexpr int kBootstrapReplicates = 200;

/// Throws std::invalid_argument if samples < kMinOracleSamples. In line-of-sight mode only the
/// a entry is populated.
BfimAverage mc_average_bfim(const Scenario &scenario, std::int64_t samples, std::uint64_t seed);

/// Bound from the averaged BFIM. The standard error is the spread of the bound over
/// kBootstrapReplicates resamples of the draws, resampled in contiguous batches of
/// samples / min(samples, 1000) draws. Throws NumericalError if the averaged matrix is singular.
McEstimate<double> mc_bfim(const Scenario &scenario, std::int64_t samples, std::uint64_t seed);

inline constexpr int kDefaultPosteriorGrid = 2000;

/// Empirical MSE of the grid posterior-mean estimator of c with known unit channels. Each
/// trial draws c from the prior and y_k = gamma_k(c) + n_k; the posterior is evaluated on
/// grid_points uniform points over mean +/- 6 std. Requires line-of-sight mode, trials >= 1000
/// and grid_points >= 200; throws std::invalid_argument otherwise.
McEstimate<double> mmse_mse_known_channel(const Scenario &scenario, std::int64_t trials, int grid_points,
                                          std::uint64_t seed);

} // namespace metabcrb
