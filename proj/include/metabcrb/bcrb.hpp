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

#include "metabcrb/expectation.hpp"
#include "metabcrb/scenario.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace metabcrb {

/// Bayesian Fisher information for theta = [c, h_1, ..., h_L] in block form, where each
/// h_k = [Re h^r_k, Im h^r_k, Re h^t_k, Im h^t_k]:
///
///     BFIM = [ a    b^T ]     b = [b_1; ...; b_L],  D = blkdiag(D_1, ..., D_L)
///            [ b    D   ]
///
/// Channels on different subcarriers are independent, hence D is block diagonal.
struct BfimBlocks
{
    double a = 0.0;
    std::vector<Eigen::Vector4d> b;
    std::vector<Eigen::Matrix4d> d;

    std::size_t subcarriers() const { return b.size(); }
};

struct BcrbResult
{
    double bound = 0.0;
    std::vector<double> contributions; ///< B_k per subcarrier
    double first_term = 0.0;           ///< (2 / sigma^2) sum_k c1_k
    double prior_term = 0.0;           ///< 1 / sigma_c^2
    double coupling_term = 0.0;        ///< (4 / sigma^2) sum_k k |g_k|^2 / ((2k + 1) c3_k + sigma^2 (k + 1)^2)
};

/// Largest subcarrier count accepted by the dense (1 + 4L)^2 verification path.
inline constexpr std::size_t kDenseLimit = 64;

/// Per-subcarrier expectations for a scenario, computed once and shared by every formula below.
std::vector<SubcarrierMoments> scenario_moments(const Scenario &scenario, const ExpectationMethod &method);

/// Closed-form channel expectations under Rician statistics. Throws std::invalid_argument for
/// the deterministic line-of-sight mode, which has no channel blocks.
BfimBlocks assemble_bfim(const Scenario &scenario, const ExpectationMethod &method);
BfimBlocks assemble_bfim(const Scenario &scenario, std::span<const SubcarrierMoments> moments);

/// 1 / (a - sum_k b_k^T D_k^{-1} b_k). Blocks of the form [[p I, q I], [q I, p I]] are inverted
/// through their p +/- q eigenvalues; anything else goes through a Cholesky factorization.
/// Throws NumericalError if a D_k is not positive definite or the Schur complement is not positive.
double bcrb_from_blocks(const BfimBlocks &blocks);

/// The full symmetric (1 + 4L) x (1 + 4L) matrix.
Eigen::MatrixXd dense_bfim(const BfimBlocks &blocks);

/// (0, 0) element of the dense inverse. Verification only; L <= kDenseLimit.
double bcrb_dense(const BfimBlocks &blocks);

BcrbResult bcrb_closed_form(const Scenario &scenario, const ExpectationMethod &method);
BcrbResult bcrb_closed_form(const Scenario &scenario, std::span<const SubcarrierMoments> moments);

/// B_k = c1 - 2 k |g|^2 / ((2k + 1) c3 + sigma^2 (k + 1)^2); reduces to c1 for kappa = 0 and
/// for line-of-sight channels.
double subcarrier_contribution(const SubcarrierMoments &moments, const RicianSpec &channel, const NoiseSpec &noise);
double subcarrier_contribution(const Scenario &scenario, std::size_t k, const ExpectationMethod &method);

struct RankedSubcarrier
{
    double frequency;
    double contribution;
};

/// The `budget` candidates with the largest B_k, best first. Ties (equal to 12 significant
/// digits) go to the candidate closer to the prior-mean resonance, then to the lower frequency.
/// The grid of `base` is ignored.
std::vector<RankedSubcarrier> select_subcarriers(const SubcarrierGrid &candidates, const Scenario &base,
                                                 std::size_t budget, const ExpectationMethod &method);

} // namespace metabcrb
