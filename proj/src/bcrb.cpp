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

#include "metabcrb/bcrb.hpp"

#include "metabcrb/errors.hpp"
#include "metabcrb/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace metabcrb {

namespace {

// b^T D^{-1} b for D = [[p I, q I], [q I, p I]]: [u; u] has eigenvalue p + q, [u; -u] has p - q.
bool structured_quadratic(const Eigen::Vector4d &b, const Eigen::Matrix4d &d, double &out)
{
    const double p = d(0, 0);
    const double q = d(2, 0);
    Eigen::Matrix4d pattern = Eigen::Matrix4d::Zero();
    pattern.diagonal().setConstant(p);
    pattern(0, 2) = pattern(2, 0) = pattern(1, 3) = pattern(3, 1) = q;
    if (d != pattern)
        return false;
    if (!(p - std::abs(q) > 0.0))
        throw NumericalError("bcrb_from_blocks: channel block is not positive definite");
    const Eigen::Vector2d sum = b.head<2>() + b.tail<2>();
    const Eigen::Vector2d diff = b.head<2>() - b.tail<2>();
    out = 0.5 * sum.squaredNorm() / (p + q) + 0.5 * diff.squaredNorm() / (p - q);
    return true;
}

double quadratic_form(const Eigen::Vector4d &b, const Eigen::Matrix4d &d)
{
    double out = 0.0;
    if (structured_quadratic(b, d, out))
        return out;
    Eigen::LLT<Eigen::Matrix4d> llt(d);
    if (llt.info() != Eigen::Success)
        throw NumericalError("bcrb_from_blocks: channel block is not positive definite");
    return b.dot(llt.solve(b));
}

double coupling_summand(const SubcarrierMoments &m, double kappa, double noise_var)
{
    return kappa * m.c2() / ((2.0 * kappa + 1.0) * m.c3.value + noise_var * (kappa + 1.0) * (kappa + 1.0));
}

double quantize(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return std::strtod(buf, nullptr);
}

} // namespace

std::vector<SubcarrierMoments> scenario_moments(const Scenario &scenario, const ExpectationMethod &method)
{
    validate_method(method);
    const std::size_t L = scenario.grid.count();
    std::vector<SubcarrierMoments> out(L);
    auto one = [&](std::size_t k) { out[k] = subcarrier_moments(scenario.sensor, scenario.grid[k], scenario.prior, method); };
    if (std::holds_alternative<MonteCarlo>(method))
    {
        // the Monte Carlo path parallelizes over samples already
        for (std::size_t k = 0; k < L; ++k)
            one(k);
    }
    else
    {
        parallel_for(L, one);
    }
    return out;
}

BfimBlocks assemble_bfim(const Scenario &scenario, const ExpectationMethod &method)
{
    if (scenario.channel.deterministic_los())
        throw std::invalid_argument("assemble_bfim: line-of-sight channels have no channel blocks");
    const auto moments = scenario_moments(scenario, method);
    return assemble_bfim(scenario, moments);
}

BfimBlocks assemble_bfim(const Scenario &scenario, std::span<const SubcarrierMoments> moments)
{
    if (scenario.channel.deterministic_los())
        throw std::invalid_argument("assemble_bfim: line-of-sight channels have no channel blocks");
    if (moments.size() != scenario.grid.count())
        throw std::invalid_argument("assemble_bfim: one set of moments per subcarrier is required");

    const double info_scale = 2.0 / scenario.noise.variance();
    const double kappa = scenario.channel.kappa();
    const double mean = rician_mean(scenario.channel);
    const double mean_sq = kappa / (kappa + 1.0); // E[h^r conj(h^t)]
    const double channel_info = channel_prior_info(scenario.channel);

    BfimBlocks blocks;
    std::vector<double> a_terms;
    a_terms.reserve(moments.size());
    for (const SubcarrierMoments &m : moments)
    {
        a_terms.push_back(info_scale * m.c1.value);

        // E[conj(h^r)] |h^t|^2 -> mean, giving [Re, -Im] of mean * g for both hops
        const Complex cross = mean * m.g.value;
        Eigen::Vector4d b;
        b << info_scale * cross.real(), -info_scale * cross.imag(), info_scale * cross.real(), -info_scale * cross.imag();
        blocks.b.push_back(b);

        const double p = info_scale * m.c3.value + channel_info;
        const double q = info_scale * m.c3.value * mean_sq;
        Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
        d.diagonal().setConstant(p);
        d(0, 2) = d(2, 0) = d(1, 3) = d(3, 1) = q;
        blocks.d.push_back(d);
    }
    blocks.a = pairwise_sum(a_terms) + prior_curvature(scenario.prior);
    return blocks;
}

double bcrb_from_blocks(const BfimBlocks &blocks)
{
    if (blocks.b.size() != blocks.d.size())
        throw std::invalid_argument("bcrb_from_blocks: b and d must have one entry per subcarrier");
    std::vector<double> terms(blocks.b.size());
    for (std::size_t k = 0; k < terms.size(); ++k)
        terms[k] = quadratic_form(blocks.b[k], blocks.d[k]);
    const double coupling = pairwise_sum(terms);
    const double denom = blocks.a - coupling;
    if (!(denom > 0.0) || !std::isfinite(denom))
    {
        std::ostringstream msg;
        msg.precision(17);
        msg << "bcrb_from_blocks: Schur complement is not positive (a = " << blocks.a << ", coupling = " << coupling << ")";
        throw NumericalError(msg.str());
    }
    return 1.0 / denom;
}

Eigen::MatrixXd dense_bfim(const BfimBlocks &blocks)
{
    const auto L = static_cast<Eigen::Index>(blocks.subcarriers());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(1 + 4 * L, 1 + 4 * L);
    m(0, 0) = blocks.a;
    for (Eigen::Index k = 0; k < L; ++k)
    {
        const Eigen::Index off = 1 + 4 * k;
        m.block<1, 4>(0, off) = blocks.b[k].transpose();
        m.block<4, 1>(off, 0) = blocks.b[k];
        m.block<4, 4>(off, off) = blocks.d[k];
    }
    return m;
}

double bcrb_dense(const BfimBlocks &blocks)
{
    if (blocks.subcarriers() > kDenseLimit)
        throw std::invalid_argument("bcrb_dense: at most " + std::to_string(kDenseLimit) + " subcarriers");
    const Eigen::MatrixXd inv = dense_bfim(blocks).inverse();
    return inv(0, 0);
}

BcrbResult bcrb_closed_form(const Scenario &scenario, const ExpectationMethod &method)
{
    const auto moments = scenario_moments(scenario, method);
    return bcrb_closed_form(scenario, moments);
}

BcrbResult bcrb_closed_form(const Scenario &scenario, std::span<const SubcarrierMoments> moments)
{
    if (moments.size() != scenario.grid.count())
        throw std::invalid_argument("bcrb_closed_form: one set of moments per subcarrier is required");
    const double noise_var = scenario.noise.variance();
    const bool los = scenario.channel.deterministic_los();
    const double kappa = scenario.channel.kappa();

    BcrbResult r;
    std::vector<double> c1_terms, coupling_terms;
    for (const SubcarrierMoments &m : moments)
    {
        c1_terms.push_back(m.c1.value);
        coupling_terms.push_back(los ? 0.0 : coupling_summand(m, kappa, noise_var));
        r.contributions.push_back(subcarrier_contribution(m, scenario.channel, scenario.noise));
    }
    r.first_term = 2.0 / noise_var * pairwise_sum(c1_terms);
    r.prior_term = prior_curvature(scenario.prior);
    r.coupling_term = 4.0 / noise_var * pairwise_sum(coupling_terms);
    const double info = r.first_term + r.prior_term - r.coupling_term;
    if (!(info > 0.0) || !std::isfinite(info))
        throw NumericalError("bcrb_closed_form: total information is not positive");
    r.bound = 1.0 / info;
    return r;
}

double subcarrier_contribution(const SubcarrierMoments &moments, const RicianSpec &channel, const NoiseSpec &noise)
{
    if (channel.deterministic_los())
        return moments.c1.value;
    return moments.c1.value - 2.0 * coupling_summand(moments, channel.kappa(), noise.variance());
}

double subcarrier_contribution(const Scenario &scenario, std::size_t k, const ExpectationMethod &method)
{
    if (k >= scenario.grid.count())
        throw std::out_of_range("subcarrier_contribution: index " + std::to_string(k) + " outside the grid");
    const SubcarrierMoments m = subcarrier_moments(scenario.sensor, scenario.grid[k], scenario.prior, method);
    return subcarrier_contribution(m, scenario.channel, scenario.noise);
}

std::vector<RankedSubcarrier> select_subcarriers(const SubcarrierGrid &candidates, const Scenario &base,
                                                 std::size_t budget, const ExpectationMethod &method)
{
    if (budget < 1 || budget > candidates.count())
        throw std::invalid_argument("select_subcarriers: budget must be between 1 and the candidate count");
    const Scenario scenario = with_grid(base, candidates);
    const auto moments = scenario_moments(scenario, method);
    const double resonance = base.sensor.resonance(base.prior.mean());

    struct Entry
    {
        double key;
        double distance;
        double frequency;
        double contribution;
    };
    std::vector<Entry> entries;
    for (std::size_t k = 0; k < candidates.count(); ++k)
    {
        const double b = subcarrier_contribution(moments[k], scenario.channel, scenario.noise);
        entries.push_back({quantize(b), std::abs(candidates[k] - resonance), candidates[k], b});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry &x, const Entry &y) {
        if (x.key != y.key)
            return x.key > y.key;
        if (x.distance != y.distance)
            return x.distance < y.distance;
        return x.frequency < y.frequency;
    });
    std::vector<RankedSubcarrier> out;
    for (std::size_t i = 0; i < budget; ++i)
        out.push_back({entries[i].frequency, entries[i].contribution});
    return out;
}

} // namespace metabcrb
