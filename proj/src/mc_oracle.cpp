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

#include "metabcrb/mc_oracle.hpp"

#include "metabcrb/errors.hpp"
#include "metabcrb/parallel.hpp"
#include "metabcrb/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace metabcrb {

namespace {

constexpr std::int64_t kMaxBatches = 1000;

// Flat layout of the nonzero BFIM entries: a, then per subcarrier 4 b entries and 16 D entries.
constexpr std::size_t kPerSubcarrier = 20;

std::size_t flat_size(const Scenario &scenario)
{
    return scenario.channel.deterministic_los() ? 1 : 1 + kPerSubcarrier * scenario.grid.count();
}

void add_flat(const BfimBlocks &fim, std::vector<double> &acc)
{
    acc[0] += fim.a;
    for (std::size_t k = 0; k < fim.b.size() && acc.size() > 1; ++k)
    {
        double *dst = acc.data() + 1 + kPerSubcarrier * k;
        for (int i = 0; i < 4; ++i)
            dst[i] += fim.b[k](i);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                dst[4 + 4 * i + j] += fim.d[k](i, j);
    }
}

BfimBlocks unflatten(const std::vector<double> &flat, std::size_t L)
{
    BfimBlocks out;
    out.a = flat[0];
    if (flat.size() == 1)
        return out;
    for (std::size_t k = 0; k < L; ++k)
    {
        const double *src = flat.data() + 1 + kPerSubcarrier * k;
        Eigen::Vector4d b;
        Eigen::Matrix4d d;
        for (int i = 0; i < 4; ++i)
            b(i) = src[i];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                d(i, j) = src[4 + 4 * i + j];
        out.b.push_back(b);
        out.d.push_back(d);
    }
    return out;
}

void add_prior(const Scenario &scenario, BfimBlocks &blocks)
{
    blocks.a += prior_curvature(scenario.prior);
    if (scenario.channel.deterministic_los())
        return;
    const double info = channel_prior_info(scenario.channel);
    for (auto &d : blocks.d)
        d.diagonal().array() += info;
}

double bound_of(const Scenario &scenario, const BfimBlocks &blocks)
{
    if (!scenario.channel.deterministic_los())
        return bcrb_from_blocks(blocks);
    if (!(blocks.a > 0.0) || !std::isfinite(blocks.a))
        throw NumericalError("mc_bfim: averaged information is not positive");
    return 1.0 / blocks.a;
}

struct BatchSums
{
    std::vector<std::vector<double>> sums; // [batch][entry]
    std::vector<std::int64_t> sizes;
};

BatchSums batch_sums(const Scenario &scenario, std::int64_t samples, std::uint64_t seed)
{
    const std::int64_t M = std::min(samples, kMaxBatches);
    const std::size_t width = flat_size(scenario);
    BatchSums out;
    out.sums.assign(static_cast<std::size_t>(M), std::vector<double>(width, 0.0));
    out.sizes.assign(static_cast<std::size_t>(M), 0);
    parallel_for(static_cast<std::size_t>(M), [&](std::size_t j) {
        const auto jj = static_cast<std::int64_t>(j);
        const std::int64_t begin = jj * samples / M;
        const std::int64_t end = (jj + 1) * samples / M;
        for (std::int64_t i = begin; i < end; ++i)
            add_flat(conditional_fim(scenario, draw_parameters(scenario, seed, i)), out.sums[j]);
        out.sizes[j] = end - begin;
    });
    return out;
}

void check_samples(std::int64_t samples)
{
    if (samples < kMinOracleSamples)
        throw std::invalid_argument("mc oracle: at least " + std::to_string(kMinOracleSamples) + " samples required");
}

BfimAverage average_from_batches(const Scenario &scenario, const BatchSums &batches, std::int64_t samples)
{
    const std::size_t width = flat_size(scenario);
    const std::size_t M = batches.sizes.size();
    const auto n = static_cast<double>(samples);
    std::vector<double> mean(width), err(width), column(M), batch_mean(M);
    for (std::size_t e = 0; e < width; ++e)
    {
        for (std::size_t j = 0; j < M; ++j)
        {
            column[j] = batches.sums[j][e];
            batch_mean[j] = column[j] / static_cast<double>(batches.sizes[j]);
        }
        mean[e] = pairwise_sum(column) / n;
        // batch-means variance, sum_j n_j^2 (m_j - m)^2 M / (N^2 (M - 1))
        for (std::size_t j = 0; j < M; ++j)
        {
            const double dev = static_cast<double>(batches.sizes[j]) * (batch_mean[j] - mean[e]);
            column[j] = dev * dev;
        }
        const double m = static_cast<double>(M);
        err[e] = std::sqrt(pairwise_sum(column) * m / (m - 1.0)) / n;
    }
    BfimAverage out;
    out.mean = unflatten(mean, scenario.grid.count());
    add_prior(scenario, out.mean);
    out.std_err = unflatten(err, scenario.grid.count());
    out.samples = samples;
    return out;
}

} // namespace

ParameterSample draw_parameters(const Scenario &scenario, std::uint64_t seed, std::int64_t index)
{
    ParameterSample s;
    s.c = prior_draw(scenario.prior, seed, index);
    const std::size_t L = scenario.grid.count();
    if (scenario.channel.deterministic_los())
    {
        s.channels.assign(L, {Complex(1.0), Complex(1.0)});
        return s;
    }
    const double mean = rician_mean(scenario.channel);
    const double dev = std::sqrt(rician_coordinate_variance(scenario.channel));
    CounterStream stream(seed, Stream::channel, static_cast<std::uint64_t>(index));
    s.channels.reserve(L);
    for (std::size_t k = 0; k < L; ++k)
    {
        const double r1 = stream.normal(), r2 = stream.normal();
        const double t1 = stream.normal(), t2 = stream.normal();
        s.channels.emplace_back(Complex(mean + dev * r1, dev * r2), Complex(mean + dev * t1, dev * t2));
    }
    return s;
}

BfimBlocks conditional_fim(const Scenario &scenario, const ParameterSample &sample)
{
    const std::size_t L = scenario.grid.count();
    if (sample.channels.size() != L)
        throw std::invalid_argument("conditional_fim: sample has " + std::to_string(sample.channels.size()) +
                                    " channel pairs for " + std::to_string(L) + " subcarriers");
    const double s = 2.0 / scenario.noise.variance();
    const Complex j(0.0, 1.0);
    BfimBlocks fim;
    fim.b.reserve(L);
    fim.d.reserve(L);
    for (std::size_t k = 0; k < L; ++k)
    {
        const auto [hr, ht] = sample.channels[k];
        const Complex g = scenario.sensor.reflection(scenario.grid[k], sample.c);
        const Complex gd = scenario.sensor.reflection_dc(scenario.grid[k], sample.c);
        const Complex dc = hr * gd * ht;
        const Complex dh[4] = {g * ht, j * g * ht, hr * g, j * hr * g};

        fim.a += s * std::norm(dc);
        Eigen::Vector4d b;
        Eigen::Matrix4d d;
        for (int i = 0; i < 4; ++i)
        {
            b(i) = s * (std::conj(dc) * dh[i]).real();
            for (int m = 0; m < 4; ++m)
                d(i, m) = s * (std::conj(dh[i]) * dh[m]).real();
        }
        fim.b.push_back(b);
        fim.d.push_back(d);
    }
    return fim;
}

Eigen::VectorXd parameter_vector(const ParameterSample &sample)
{
    Eigen::VectorXd theta(1 + 4 * static_cast<Eigen::Index>(sample.channels.size()));
    theta(0) = sample.c;
    Eigen::Index i = 1;
    for (const auto &[hr, ht] : sample.channels)
    {
        theta(i++) = hr.real();
        theta(i++) = hr.imag();
        theta(i++) = ht.real();
        theta(i++) = ht.imag();
    }
    return theta;
}

double expected_negative_log_likelihood(const Scenario &scenario, const ParameterSample &truth,
                                        const Eigen::VectorXd &theta)
{
    const std::size_t L = scenario.grid.count();
    if (truth.channels.size() != L || theta.size() != static_cast<Eigen::Index>(1 + 4 * L))
        throw std::invalid_argument("expected_negative_log_likelihood: dimensions do not match the grid");
    double total = 0.0;
    for (std::size_t k = 0; k < L; ++k)
    {
        const auto [hr0, ht0] = truth.channels[k];
        const auto o = static_cast<Eigen::Index>(1 + 4 * k);
        const Complex hr(theta(o), theta(o + 1));
        const Complex ht(theta(o + 2), theta(o + 3));
        const Complex mu0 = hr0 * scenario.sensor.reflection(scenario.grid[k], truth.c) * ht0;
        const Complex mu = hr * scenario.sensor.reflection(scenario.grid[k], theta(0)) * ht;
        total += std::norm(mu0 - mu);
    }
    return total / scenario.noise.variance();
}

BfimAverage mc_average_bfim(const Scenario &scenario, std::int64_t samples, std::uint64_t seed)
{
    check_samples(samples);
    return average_from_batches(scenario, batch_sums(scenario, samples, seed), samples);
}

McEstimate<double> mc_bfim(const Scenario &scenario, std::int64_t samples, std::uint64_t seed)
{
    check_samples(samples);
    const BatchSums batches = batch_sums(scenario, samples, seed);
    const BfimAverage avg = average_from_batches(scenario, batches, samples);

    const std::size_t M = batches.sizes.size();
    const std::size_t width = flat_size(scenario);
    std::vector<double> replicate(kBootstrapReplicates);
    parallel_for(kBootstrapReplicates, [&](std::size_t r) {
        CounterStream stream(seed, Stream::bootstrap, r);
        std::vector<double> total(width, 0.0);
        std::int64_t count = 0;
        for (std::size_t j = 0; j < M; ++j)
        {
            const auto pick = std::min(M - 1, static_cast<std::size_t>(stream.uniform() * static_cast<double>(M)));
            const auto &src = batches.sums[pick];
            for (std::size_t e = 0; e < width; ++e)
                total[e] += src[e];
            count += batches.sizes[pick];
        }
        for (double &v : total)
            v /= static_cast<double>(count);
        BfimBlocks blocks = unflatten(total, scenario.grid.count());
        add_prior(scenario, blocks);
        replicate[r] = bound_of(scenario, blocks);
    });

    const double rep_mean = pairwise_sum(replicate) / kBootstrapReplicates;
    std::vector<double> sq(kBootstrapReplicates);
    for (std::size_t r = 0; r < sq.size(); ++r)
        sq[r] = (replicate[r] - rep_mean) * (replicate[r] - rep_mean);

    McEstimate<double> out;
    out.value = bound_of(scenario, avg.mean);
    out.std_err = std::sqrt(pairwise_sum(sq) / (kBootstrapReplicates - 1));
    out.samples = samples;
    return out;
}

McEstimate<double> mmse_mse_known_channel(const Scenario &scenario, std::int64_t trials, int grid_points,
                                          std::uint64_t seed)
{
    if (!scenario.channel.deterministic_los())
        throw std::invalid_argument("mmse_mse_known_channel: requires line-of-sight channels");
    if (trials < 1000)
        throw std::invalid_argument("mmse_mse_known_channel: at least 1000 trials required");
    if (grid_points < 200)
        throw std::invalid_argument("mmse_mse_known_channel: at least 200 grid points required");

    const std::size_t L = scenario.grid.count();
    const auto G = static_cast<std::size_t>(grid_points);
    const double mu = scenario.prior.mean();
    const double sd = scenario.prior.std_dev();
    const double noise_var = scenario.noise.variance();

    std::vector<double> cs(G), log_prior(G);
    std::vector<Complex> table(G * L);
    for (std::size_t g = 0; g < G; ++g)
    {
        cs[g] = mu - 6.0 * sd + 12.0 * sd * static_cast<double>(g) / static_cast<double>(G - 1);
        const double z = (cs[g] - mu) / sd;
        log_prior[g] = -0.5 * z * z;
        for (std::size_t k = 0; k < L; ++k)
            table[g * L + k] = scenario.sensor.reflection(scenario.grid[k], cs[g]);
    }

    std::vector<double> sq_err(static_cast<std::size_t>(trials));
    parallel_for(sq_err.size(), [&](std::size_t t) {
        const double c = prior_draw(scenario.prior, seed, static_cast<std::int64_t>(t));
        CounterStream noise(seed, Stream::noise, t);
        const double scale = std::sqrt(0.5 * noise_var);
        std::vector<Complex> y(L);
        for (std::size_t k = 0; k < L; ++k)
        {
            const double re = noise.normal(), im = noise.normal();
            y[k] = scenario.sensor.reflection(scenario.grid[k], c) + scale * Complex(re, im);
        }
        std::vector<double> lp(G);
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < G; ++g)
        {
            double r = 0.0;
            for (std::size_t k = 0; k < L; ++k)
                r += std::norm(y[k] - table[g * L + k]);
            lp[g] = log_prior[g] - r / noise_var;
            peak = std::max(peak, lp[g]);
        }
        double num = 0.0, den = 0.0;
        for (std::size_t g = 0; g < G; ++g)
        {
            const double w = std::exp(lp[g] - peak);
            num += w * cs[g];
            den += w;
        }
        const double err = num / den - c;
        sq_err[t] = err * err;
    });

    const double n = static_cast<double>(trials);
    const double mse = pairwise_sum(sq_err) / n;
    std::vector<double> dev(sq_err.size());
    for (std::size_t t = 0; t < dev.size(); ++t)
        dev[t] = (sq_err[t] - mse) * (sq_err[t] - mse);

    McEstimate<double> out;
    out.value = mse;
    out.std_err = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
    out.samples = trials;
    return out;
}

} // namespace metabcrb
