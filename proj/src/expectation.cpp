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

#include "metabcrb/expectation.hpp"

#include "metabcrb/errors.hpp"
#include "metabcrb/parallel.hpp"
#include "metabcrb/rng.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace metabcrb {

namespace {

// Standardized half-range of the adaptive integrator; phi(38) is below the smallest normal double.
constexpr double kStandardRange = 38.0;
constexpr double kRescale = 1e150;

struct HermiteTail
{
    double ratio;        // p_n(x) / p_{n-1}(x)
    double log_abs_prev; // log |p_{n-1}(x)|
};

// Orthonormal Hermite polynomials for the weight exp(-x^2), with running rescaling.
HermiteTail evaluate_hermite(int n, double x)
{
    double prev = 0.0;
    double cur = std::pow(std::numbers::pi, -0.25);
    double log_scale = 0.0;
    for (int j = 1; j <= n; ++j)
    {
        const double next = x * std::sqrt(2.0 / j) * cur - std::sqrt((j - 1.0) / j) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale)
        {
            cur /= kRescale;
            prev /= kRescale;
            log_scale += std::log(kRescale);
        }
    }
    return {cur / prev, std::log(std::abs(prev)) + log_scale};
}

std::unique_ptr<GaussHermiteRule> build_rule(int n)
{
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int j = 1; j < n; ++j)
        sub(j - 1) = std::sqrt(0.5 * j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("gauss_hermite_rule: Jacobi eigenvalue iteration failed for order " + std::to_string(n));

    auto rule = std::make_unique<GaussHermiteRule>();
    rule->nodes.resize(n);
    rule->weights.resize(n);
    const double newton_scale = std::sqrt(2.0 * n);
    for (int i = 0; i < n; ++i)
    {
        double x = solver.eigenvalues()(i);
        HermiteTail tail = evaluate_hermite(n, x);
        for (int it = 0; it < 8; ++it)
        {
            const double dx = tail.ratio / newton_scale;
            x -= dx;
            tail = evaluate_hermite(n, x);
            if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x)))
                break;
        }
        rule->nodes[i] = x;
        rule->weights[i] = std::exp(-std::log(static_cast<double>(n)) - 2.0 * tail.log_abs_prev);
    }
    // enforce exact reflection symmetry
    for (int i = 0; i < n / 2; ++i)
    {
        const int j = n - 1 - i;
        const double x = 0.5 * (rule->nodes[j] - rule->nodes[i]);
        const double w = 0.5 * (rule->weights[i] + rule->weights[j]);
        rule->nodes[i] = -x;
        rule->nodes[j] = x;
        rule->weights[i] = rule->weights[j] = w;
    }
    if (n % 2 == 1)
        rule->nodes[n / 2] = 0.0;
    return rule;
}

template <std::size_t N>
using Values = std::array<double, N>;

template <std::size_t N>
void check_finite(const Values<N> &v, double c)
{
    for (double x : v)
    {
        if (!std::isfinite(x))
        {
            std::ostringstream msg;
            msg.precision(17);
            msg << "expectation: integrand is not finite at node c = " << c;
            throw NumericalError(msg.str());
        }
    }
}

template <std::size_t N, typename F>
Values<N> gh_fixed(const F &fn, const SensingPrior &prior, int order)
{
    const GaussHermiteRule &rule = gauss_hermite_rule(order);
    std::array<std::vector<double>, N> terms;
    for (auto &t : terms)
        t.reserve(rule.nodes.size());
    const double scale = std::numbers::sqrt2 * prior.std_dev();
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    {
        if (rule.weights[i] == 0.0)
            continue;
        const double c = prior.mean() + scale * rule.nodes[i];
        const Values<N> v = fn(c);
        check_finite<N>(v, c);
        for (std::size_t k = 0; k < N; ++k)
            terms[k].push_back(rule.weights[i] * v[k]);
    }
    Values<N> out{};
    for (std::size_t k = 0; k < N; ++k)
        out[k] = pairwise_sum(terms[k]) / std::sqrt(std::numbers::pi);
    return out;
}

template <std::size_t N>
struct Refined
{
    Values<N> values;
    int order;
    bool converged;
};

template <std::size_t N, typename F, typename Converged>
Refined<N> gh_refined(const F &fn, const SensingPrior &prior, const Quadrature &q, const Converged &converged)
{
    int order = q.order;
    Values<N> est = gh_fixed<N>(fn, prior, order);
    if (!q.refine)
        return {est, order, true};
    while (2 * order <= kMaxQuadratureOrder)
    {
        order *= 2;
        const Values<N> next = gh_fixed<N>(fn, prior, order);
        const bool done = converged(est, next);
        est = next;
        if (done)
            return {est, order, true};
    }
    return {est, order, false};
}

// Boost halves the error goal per bisection, so an uncapped depth chases roundoff. The geometric
// mesh already resolves the peak; a few levels suffice.
constexpr unsigned kKronrodDepth = 5;

std::vector<double> feature_breakpoints(double u0, double w)
{
    std::vector<double> pts = {-kStandardRange, kStandardRange};
    for (double g : {1.0, 2.0, 4.0, 8.0, 16.0})
    {
        pts.push_back(g);
        pts.push_back(-g);
    }
    pts.push_back(0.0);
    pts.push_back(u0);
    for (double step = w; step < 2.0 * kStandardRange; step *= 2.0)
    {
        pts.push_back(u0 - step);
        pts.push_back(u0 + step);
    }
    std::vector<double> inside;
    for (double p : pts)
        if (p >= -kStandardRange && p <= kStandardRange)
            inside.push_back(p);
    std::sort(inside.begin(), inside.end());
    std::vector<double> out;
    for (double p : inside)
        if (out.empty() || p - out.back() > 1e-13 * std::max(1.0, std::abs(p)))
            out.push_back(p);
    return out;
}

template <std::size_t N, typename F>
Values<N> adaptive_fixed(const F &fn, const SensingPrior &prior, double feature_center, double feature_width)
{
    using boost::math::quadrature::gauss_kronrod;
    const double mu = prior.mean();
    const double sigma = prior.std_dev();
    const double u0 = (feature_center - mu) / sigma;
    const double w = std::max(std::abs(feature_width) / sigma, 1e-12);
    const std::vector<double> breaks = feature_breakpoints(u0, w);
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);

    Values<N> out{};
    for (std::size_t k = 0; k < N; ++k)
    {
        std::vector<double> pieces;
        pieces.reserve(breaks.size());
        auto integrand = [&](double u) {
            const double weight = norm * std::exp(-0.5 * u * u);
            if (weight == 0.0)
                return 0.0;
            const double c = mu + sigma * u;
            const Values<N> v = fn(c);
            check_finite<N>(v, c);
            return weight * v[k];
        };
        for (std::size_t s = 0; s + 1 < breaks.size(); ++s)
            pieces.push_back(gauss_kronrod<double, 31>::integrate(integrand, breaks[s], breaks[s + 1], kKronrodDepth, 1e-12));
        out[k] = pairwise_sum(pieces);
    }
    return out;
}

template <std::size_t N>
struct SampleMeans
{
    Values<N> mean{};
    Values<N> std_err{};
};

template <std::size_t N, typename F>
SampleMeans<N> monte_carlo(const F &fn, const SensingPrior &prior, const MonteCarlo &mc)
{
    const auto n = static_cast<std::size_t>(mc.samples);
    std::array<std::vector<double>, N> cols;
    for (auto &col : cols)
        col.resize(n);
    parallel_for(n, [&](std::size_t i) {
        const double c = prior_draw(prior, mc.seed, static_cast<std::int64_t>(i));
        const Values<N> v = fn(c);
        check_finite<N>(v, c);
        for (std::size_t k = 0; k < N; ++k)
            cols[k][i] = v[k];
    });
    SampleMeans<N> out;
    for (std::size_t k = 0; k < N; ++k)
    {
        const double mean = pairwise_sum(cols[k]) / static_cast<double>(n);
        out.mean[k] = mean;
        if (n > 1)
        {
            for (double &x : cols[k])
                x = (x - mean) * (x - mean);
            const double var = pairwise_sum(cols[k]) / static_cast<double>(n - 1);
            out.std_err[k] = std::sqrt(var / static_cast<double>(n));
        }
    }
    return out;
}

Values<2> split(Complex z)
{
    return {z.real(), z.imag()};
}

Values<4> moment_kernel(const SensorModel &sensor, double f, double c)
{
    const Complex gamma = sensor.reflection(f, c);
    const Complex dgamma = sensor.reflection_dc(f, c);
    const Complex cross = std::conj(dgamma) * gamma;
    return {std::norm(dgamma), cross.real(), cross.imag(), std::norm(gamma)};
}

bool close(double prev, double next, double scale)
{
    return std::abs(next - prev) <= kQuadratureTolerance * scale;
}

} // namespace

void validate_method(const ExpectationMethod &method)
{
    if (const auto *q = std::get_if<Quadrature>(&method))
    {
        if (q->order < 2)
            throw std::invalid_argument("Quadrature: order must be at least 2");
    }
    else if (std::get<MonteCarlo>(method).samples < 1)
    {
        throw std::invalid_argument("MonteCarlo: samples must be at least 1");
    }
}

const GaussHermiteRule &gauss_hermite_rule(int order)
{
    if (order < 1)
        throw std::invalid_argument("gauss_hermite_rule: order must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[order];
    if (!slot)
    {
        if (order == 1)
            slot = std::make_unique<GaussHermiteRule>(GaussHermiteRule{{0.0}, {std::sqrt(std::numbers::pi)}});
        else
            slot = build_rule(order);
    }
    return *slot;
}

double prior_draw(const SensingPrior &prior, std::uint64_t seed, std::int64_t index)
{
    CounterStream stream(seed, Stream::prior, static_cast<std::uint64_t>(index));
    return prior.mean() + prior.std_dev() * stream.normal();
}

Complex gauss_hermite_expectation(const PriorFunction &fn, const SensingPrior &prior, int order)
{
    const Values<2> v = gh_fixed<2>([&](double c) { return split(fn(c)); }, prior, order);
    return {v[0], v[1]};
}

McEstimate<Complex> expect_over_prior(const PriorFunction &fn, const SensingPrior &prior, const ExpectationMethod &method)
{
    validate_method(method);
    auto wrapped = [&](double c) { return split(fn(c)); };
    if (const auto *q = std::get_if<Quadrature>(&method))
    {
        const auto refined = gh_refined<2>(wrapped, prior, *q, [](const Values<2> &a, const Values<2> &b) {
            return std::hypot(b[0] - a[0], b[1] - a[1]) <= kQuadratureTolerance * std::hypot(b[0], b[1]);
        });
        return {{refined.values[0], refined.values[1]}, 0.0, refined.order};
    }
    const auto &mc = std::get<MonteCarlo>(method);
    const SampleMeans<2> est = monte_carlo<2>(wrapped, prior, mc);
    return {{est.mean[0], est.mean[1]}, std::max(est.std_err[0], est.std_err[1]), mc.samples};
}

Complex expect_with_feature(const PriorFunction &fn, const SensingPrior &prior, double feature_center, double feature_width)
{
    const Values<2> v =
        adaptive_fixed<2>([&](double c) { return split(fn(c)); }, prior, feature_center, feature_width);
    return {v[0], v[1]};
}

SubcarrierMoments subcarrier_moments(const SensorModel &sensor, double f, const SensingPrior &prior,
                                     const ExpectationMethod &method)
{
    validate_method(method);
    auto kernel = [&](double c) { return moment_kernel(sensor, f, c); };

    if (const auto *mc = std::get_if<MonteCarlo>(&method))
    {
        const SampleMeans<4> est = monte_carlo<4>(kernel, prior, *mc);
        SubcarrierMoments m;
        m.c1 = {est.mean[0], est.std_err[0], mc->samples};
        m.g = {Complex(est.mean[1], est.mean[2]), std::max(est.std_err[1], est.std_err[2]), mc->samples};
        m.c3 = {est.mean[3], est.std_err[3], mc->samples};
        return m;
    }

    const auto &q = std::get<Quadrature>(method);
    const double width = sensor.half_width() / std::abs(sensor.shift_rate());
    const double ratio = width / prior.std_dev();
    Values<4> v{};
    std::int64_t nodes = 0;
    bool done = false;
    if (!q.refine || ratio >= kAdaptiveWidthRatio)
    {
        const auto refined = gh_refined<4>(kernel, prior, q, [](const Values<4> &a, const Values<4> &b) {
            const double g_scale = std::hypot(b[1], b[2]) + 1e-14 * std::sqrt(std::abs(b[0] * b[3]));
            return close(a[0], b[0], std::abs(b[0])) && std::hypot(b[1] - a[1], b[2] - a[2]) <= kQuadratureTolerance * g_scale &&
                   close(a[3], b[3], std::abs(b[3]));
        });
        v = refined.values;
        nodes = refined.order;
        done = refined.converged;
    }
    if (!done)
    {
        // c at which the resonance sits exactly on f
        const double center = (f - sensor.center_offset()) / sensor.shift_rate();
        v = adaptive_fixed<4>(kernel, prior, center, width);
        nodes = 0;
    }
    SubcarrierMoments m;
    m.c1 = {v[0], 0.0, nodes};
    m.g = {Complex(v[1], v[2]), 0.0, nodes};
    m.c3 = {v[3], 0.0, nodes};
    return m;
}

McEstimate<double> c1(const SensorModel &sensor, double f, const SensingPrior &prior, const ExpectationMethod &method)
{
    return subcarrier_moments(sensor, f, prior, method).c1;
}

McEstimate<Complex> c2(const SensorModel &sensor, double f, const SensingPrior &prior, const ExpectationMethod &method)
{
    return subcarrier_moments(sensor, f, prior, method).g;
}

McEstimate<double> c3(const SensorModel &sensor, double f, const SensingPrior &prior, const ExpectationMethod &method)
{
    return subcarrier_moments(sensor, f, prior, method).c3;
}

} // namespace metabcrb
