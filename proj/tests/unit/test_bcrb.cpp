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


#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include "metabcrb/bcrb.hpp"
#include "metabcrb/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace metabcrb;
using Catch::Approx;

namespace {

Scenario small_scenario(std::size_t L, double kappa, double snr_db, double gamma = 1.0, double A = 0.9)
{
    Scenario s = default_scenario();
    s.sensor = SensorModel(A, gamma, 1.0, 0.0);
    s.channel = RicianSpec::rician(kappa);
    s.noise = snr_to_noise(snr_db);
    s.grid = SubcarrierGrid::uniform(0.0, 0.25 * gamma, L);
    return s;
}

BfimBlocks identity_blocks(double a, const std::vector<Eigen::Vector4d> &bs)
{
    BfimBlocks blocks;
    blocks.a = a;
    blocks.b = bs;
    blocks.d.assign(bs.size(), Eigen::Matrix4d::Identity());
    return blocks;
}

} // namespace

TEST_CASE("Bcrb - Hand-computed block examples", "[bcrb]")
{
    CHECK(bcrb_from_blocks(identity_blocks(4.0, {})) == Approx(0.25).epsilon(1e-15));
    CHECK(bcrb_from_blocks(identity_blocks(10.0, {Eigen::Vector4d(1, 0, 0, 0)})) == Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(bcrb_from_blocks(identity_blocks(10.0, {Eigen::Vector4d(1, 1, 1, 1), Eigen::Vector4d(0, 2, 0, 0)})) ==
          Approx(1.0 / 2.0).epsilon(1e-15));

    // D = [[2 I, I], [I, 2 I]], b = [1, 0, 1, 0]: b^T D^-1 b = 2 / 3
    BfimBlocks s = identity_blocks(1.0, {Eigen::Vector4d(1, 0, 1, 0)});
    s.d[0] << 2, 0, 1, 0, 0, 2, 0, 1, 1, 0, 2, 0, 0, 1, 0, 2;
    CHECK(bcrb_from_blocks(s) == Approx(3.0).epsilon(1e-14));
    CHECK(bcrb_dense(s) == Approx(3.0).epsilon(1e-14));
}

TEST_CASE("Bcrb - Generic Cholesky path matches the dense inverse", "[bcrb][property]")
{
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 50; ++trial)
    {
        BfimBlocks blocks;
        double a = 0.0;
        for (int k = 0; k < 3; ++k)
        {
            Eigen::Matrix4d r;
            for (int i = 0; i < 16; ++i)
                r(i / 4, i % 4) = n01(rng);
            const Eigen::Matrix4d d = r * r.transpose() + Eigen::Matrix4d::Identity();
            Eigen::Vector4d b;
            for (int i = 0; i < 4; ++i)
                b(i) = n01(rng);
            a += b.dot(d.llt().solve(b));
            blocks.b.push_back(b);
            blocks.d.push_back(d);
        }
        blocks.a = a + 0.5 + std::abs(n01(rng));
        CHECK(bcrb_from_blocks(blocks) == Approx(bcrb_dense(blocks)).epsilon(1e-10));
    }
}

TEST_CASE("Bcrb - Errors", "[bcrb]")
{
    CHECK_THROWS_AS(bcrb_from_blocks(identity_blocks(0.5, {Eigen::Vector4d(1, 0, 0, 0)})), NumericalError);
    try
    {
        (void)bcrb_from_blocks(identity_blocks(0.5, {Eigen::Vector4d(1, 0, 0, 0)}));
    }
    catch (const NumericalError &e)
    {
        CHECK(std::string(e.what()).find("coupling = 1") != std::string::npos);
    }
    BfimBlocks bad = identity_blocks(10.0, {Eigen::Vector4d(1, 0, 0, 0)});
    bad.d[0] = -Eigen::Matrix4d::Identity();
    CHECK_THROWS_AS(bcrb_from_blocks(bad), NumericalError);
    bad.d[0](0, 1) = 0.3;
    bad.d[0](1, 0) = 0.3;
    CHECK_THROWS_AS(bcrb_from_blocks(bad), NumericalError);
    BfimBlocks mismatch = identity_blocks(10.0, {Eigen::Vector4d(1, 0, 0, 0)});
    mismatch.d.clear();
    CHECK_THROWS_AS(bcrb_from_blocks(mismatch), std::invalid_argument);

    CHECK_THROWS_AS(bcrb_dense(identity_blocks(10.0, std::vector<Eigen::Vector4d>(65, Eigen::Vector4d::Zero()))),
                    std::invalid_argument);

    Scenario los = small_scenario(2, 1.0, 20.0);
    los.channel = RicianSpec::line_of_sight();
    CHECK_THROWS_AS(assemble_bfim(los, Quadrature{}), std::invalid_argument);
    const auto m = scenario_moments(small_scenario(2, 1.0, 20.0), Quadrature{});
    CHECK_THROWS_AS(assemble_bfim(small_scenario(3, 1.0, 20.0), std::span<const SubcarrierMoments>(m)),
                    std::invalid_argument);
    CHECK_THROWS_AS(bcrb_closed_form(small_scenario(3, 1.0, 20.0), std::span<const SubcarrierMoments>(m)),
                    std::invalid_argument);
    CHECK_THROWS_AS(subcarrier_contribution(small_scenario(3, 1.0, 20.0), 3, Quadrature{}), std::out_of_range);
}

TEST_CASE("Bcrb - Frozen single-subcarrier reference", "[bcrb]")
{
    Scenario s = small_scenario(1, 1.0, 20.0);
    s.grid = SubcarrierGrid::from_frequencies({0.0});
    const BcrbResult r = bcrb_closed_form(s, Quadrature{});
    CHECK(oracle::rel(r.bound, 0.012708372130614589) < 1e-12);
    CHECK(r.first_term == Approx(81.0).epsilon(1e-14));
    CHECK(r.prior_term == 1.0);
    CHECK(oracle::rel(r.coupling_term, 3.3117156373639346) < 1e-11);
    CHECK(oracle::rel(bcrb_from_blocks(assemble_bfim(s, Quadrature{})), 0.012708372130614589) < 1e-12);
    CHECK(oracle::rel(bcrb_dense(assemble_bfim(s, Quadrature{})), 0.012708372130614589) < 1e-12);

    s.channel = RicianSpec::line_of_sight();
    CHECK(bcrb_closed_form(s, Quadrature{}).bound == Approx(1.0 / 82.0).epsilon(1e-14));
}

TEST_CASE("Bcrb - Closed form, Schur and dense paths agree with the oracle", "[bcrb][property]")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> kap(0.0, 10.0), snr(-10.0, 40.0), lg(-2.0, 1.0), depth(0.1, 1.0);
    std::uniform_int_distribution<int> count(1, 12);
    for (int trial = 0; trial < 30; ++trial)
    {
        const Scenario s = small_scenario(count(rng), kap(rng), snr(rng), std::pow(10.0, lg(rng)), depth(rng));
        CAPTURE(trial, s.grid.count(), s.channel.kappa(), s.sensor.half_width());
        const auto moments = scenario_moments(s, Quadrature{});
        const double closed = bcrb_closed_form(s, std::span<const SubcarrierMoments>(moments)).bound;
        const BfimBlocks blocks = assemble_bfim(s, std::span<const SubcarrierMoments>(moments));
        CHECK(oracle::rel(bcrb_from_blocks(blocks), closed) < 1e-12);
        CHECK(oracle::rel(bcrb_dense(blocks), closed) < 1e-9);
        CHECK(oracle::rel(closed, oracle::closed_form_bound(s)) < 1e-9);

        const Eigen::MatrixXd dense = dense_bfim(blocks);
        CHECK((dense - dense.transpose()).norm() == 0.0);
        CHECK(dense.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("Bcrb - Limiting cases", "[bcrb]")
{
    // kappa = 0: channel means vanish, no coupling
    const Scenario ray = small_scenario(5, 0.0, 15.0);
    const BfimBlocks blocks = assemble_bfim(ray, Quadrature{});
    for (const auto &b : blocks.b)
        CHECK(b.norm() == 0.0);
    const BcrbResult r = bcrb_closed_form(ray, Quadrature{});
    CHECK(r.coupling_term == 0.0);
    for (std::size_t k = 0; k < 5; ++k)
        CHECK(r.contributions[k] == subcarrier_moments(ray.sensor, ray.grid[k], ray.prior, Quadrature{}).c1.value);

    // A = 0: gamma carries no information about c
    const Scenario flat = small_scenario(4, 2.0, 20.0, 1.0, 0.0);
    CHECK(bcrb_closed_form(flat, Quadrature{}).bound == Approx(flat.prior.variance()).epsilon(1e-14));
    CHECK(assemble_bfim(flat, Quadrature{}).a == Approx(1.0 / flat.prior.variance()).epsilon(1e-14));
}

TEST_CASE("Bcrb - Monotonicity and range", "[bcrb][property]")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> kap(0.0, 20.0), lg(-2.0, 1.5);
    for (int trial = 0; trial < 15; ++trial)
    {
        const double kappa = kap(rng), gamma = std::pow(10.0, lg(rng));
        double previous = std::numeric_limits<double>::infinity();
        for (double snr : {-20.0, -5.0, 10.0, 25.0, 40.0})
        {
            const double b = bcrb_closed_form(small_scenario(6, kappa, snr, gamma), Quadrature{}).bound;
            CHECK(b > 0.0);
            CHECK(b <= 1.0);
            CHECK(b <= previous);
            previous = b;
        }

        previous = std::numeric_limits<double>::infinity();
        Scenario s = small_scenario(1, kappa, 10.0, gamma);
        for (std::size_t L : {1u, 2u, 4u, 8u, 16u})
        {
            s.grid = SubcarrierGrid::outward(0.0, 0.2 * gamma, L);
            const BcrbResult r = bcrb_closed_form(s, Quadrature{});
            CHECK(r.bound <= previous);
            for (double bk : r.contributions)
                CHECK(bk >= 0.0);
            previous = r.bound;
        }
    }
}

TEST_CASE("Bcrb - Contributions sum to the information", "[bcrb]")
{
    const Scenario s = small_scenario(7, 3.0, 12.0, 0.3);
    const BcrbResult r = bcrb_closed_form(s, Quadrature{});
    double total = 0.0;
    for (double bk : r.contributions)
        total += bk;
    CHECK(1.0 / r.bound == Approx(r.prior_term + 2.0 / s.noise.variance() * total).epsilon(1e-12));
    CHECK(1.0 / r.bound == Approx(r.first_term + r.prior_term - r.coupling_term).epsilon(1e-14));
    for (std::size_t k = 0; k < 7; ++k)
        CHECK(subcarrier_contribution(s, k, Quadrature{}) == Approx(r.contributions[k]).epsilon(1e-14));
}

TEST_CASE("Bcrb - Subcarrier selection", "[bcrb]")
{
    Scenario base = default_scenario();
    base.noise = snr_to_noise(10.0);
    const SubcarrierGrid cands = SubcarrierGrid::uniform(0.0, 0.1, 41);
    const auto picks = select_subcarriers(cands, base, 6, Quadrature{});
    REQUIRE(picks.size() == 6);
    for (std::size_t i = 1; i < picks.size(); ++i)
        CHECK(picks[i - 1].contribution >= picks[i].contribution - 1e-12 * picks[i].contribution);

    // every unpicked candidate scores no better than the last pick
    const Scenario all = with_grid(base, cands);
    const BcrbResult r = bcrb_closed_form(all, Quadrature{});
    std::vector<double> sorted = r.contributions;
    std::sort(sorted.rbegin(), sorted.rend());
    CHECK(picks.back().contribution == Approx(sorted[5]).epsilon(1e-12));

    // symmetric prior and sensor: mirrored candidates tie; the lower frequency goes first
    for (std::size_t i = 0; i + 1 < picks.size(); ++i)
        if (std::abs(picks[i].frequency + picks[i + 1].frequency) < 1e-12 && picks[i].frequency != 0.0)
            CHECK(picks[i].frequency < 0.0);

    // a candidate at the resonance beats an equally scored far-away one: zero-depth sensor
    Scenario flat = base;
    flat.sensor = SensorModel(0.0, 1.0, 1.0, 0.0);
    const auto order = select_subcarriers(SubcarrierGrid::from_frequencies({-2.0, -0.5, 0.1, 3.0}), flat, 4,
                                          Quadrature{});
    CHECK(order[0].frequency == 0.1);
    CHECK(order[1].frequency == -0.5);
    CHECK(order[2].frequency == -2.0);
    CHECK(order[3].frequency == 3.0);

    CHECK_THROWS_AS(select_subcarriers(cands, base, 0, Quadrature{}), std::invalid_argument);
    CHECK_THROWS_AS(select_subcarriers(cands, base, 42, Quadrature{}), std::invalid_argument);
}
