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


#include "metabcrb/cli/commands.hpp"

#include "metabcrb/asymptotics.hpp"
#include "metabcrb/bcrb.hpp"
#include "metabcrb/cli/csv.hpp"
#include "metabcrb/cli/svg.hpp"
#include "metabcrb/mc_oracle.hpp"
#include "metabcrb/parallel.hpp"

#include <cmath>
#include <iterator>
#include <limits>

namespace metabcrb::cli {

namespace {

template <std::size_t N>
std::vector<std::string> header(const char *const (&columns)[N])
{
    return {std::begin(columns), std::end(columns)};
}

struct Job
{
    std::string label;
    std::string curve;
    AxisPoint point;
    ScenarioParams params;
};

std::vector<Job> expand(const Config &config)
{
    const SweepSpec &spec = *config.sweep;
    std::vector<std::optional<AxisPoint>> curves;
    if (spec.curve_axis)
        curves.assign(spec.curve_points.begin(), spec.curve_points.end());
    else
        curves.emplace_back();

    std::vector<Job> jobs;
    for (const auto &curve : curves)
    {
        for (const auto &point : spec.points)
        {
            Job job;
            job.point = point;
            job.params = config.scenario;
            job.curve = "base";
            if (curve)
            {
                apply(job.params, *spec.curve_axis, *curve);
                job.curve = std::string(to_string(*spec.curve_axis)) + "=" + curve->label;
            }
            apply(job.params, spec.axis, point);
            job.label = std::string(to_string(spec.axis)) + "=" + point.label;
            if (curve)
                job.label += ";" + job.curve;
            jobs.push_back(std::move(job));
        }
    }
    return jobs;
}

double relative_difference(double x, double y)
{
    return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
}

Scenario single_subcarrier(const SensorModel &sensor, const SensingPrior &prior, double snr_db, double delta_f)
{
    return Scenario{sensor, prior, RicianSpec::rician(0.0), snr_to_noise(snr_db),
                    SubcarrierGrid::from_frequencies({sensor.resonance(prior.mean()) + delta_f})};
}

std::vector<double> log_ladder(double lo, double hi, int n)
{
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
    return out;
}

} // namespace

CommandOutput cmd_sweep(const Config &config, const CommandOptions &options)
{
    if (!config.sweep)
        throw ConfigError("the sweep command needs 'sweep.axis' and sweep values");
    const ExpectationMethod method = Quadrature{config.quadrature_order};
    const std::vector<Job> jobs = expand(config);
    std::vector<BcrbResult> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { results[i] = bcrb_closed_form(build_scenario(jobs[i].params), method); });

    CsvTable table(header(kSweepColumns));
    std::vector<Series> series;
    for (std::size_t i = 0; i < jobs.size(); ++i)
    {
        const BcrbResult &r = results[i];
        table.add_row({csv_number(jobs[i].point.value), jobs[i].curve, csv_number(r.bound), csv_number(r.first_term),
                       csv_number(r.prior_term), csv_number(r.coupling_term)});
        if (series.empty() || series.back().label != jobs[i].curve)
            series.push_back({jobs[i].curve, {}, {}});
        series.back().xs.push_back(jobs[i].point.value);
        series.back().ys.push_back(r.bound);
    }

    CommandOutput out;
    out.csv = table.str();
    if (options.svg)
    {
        const std::string axis(to_string(config.sweep->axis));
        out.svg = line_chart(series, {"bound vs " + axis, axis, "bound", config.sweep->log_spacing, true});
    }
    return out;
}

CommandOutput cmd_validate(const Config &config, const CommandOptions &options)
{
    std::vector<std::pair<std::string, ScenarioParams>> cases;
    if (config.sweep)
        for (auto &job : expand(config))
            cases.emplace_back(job.label, job.params);
    else
        cases.emplace_back("base", config.scenario);

    const ExpectationMethod method = Quadrature{config.quadrature_order};
    CsvTable table(header(kValidateColumns));
    bool failed = false;
    for (const auto &[label, params] : cases)
    {
        const Scenario s = build_scenario(params);
        if (options.dense_check && s.grid.count() > kDenseLimit)
            throw std::invalid_argument("dense check supports at most " + std::to_string(kDenseLimit) + " subcarriers");
        const auto moments = scenario_moments(s, method);
        const double closed = bcrb_closed_form(s, moments).bound;

        std::string schur_cell, dense_cell, same_draw_cell;
        const McEstimate<double> mc = mc_bfim(s, options.samples, options.seed);
        if (!s.channel.deterministic_los())
        {
            const BfimBlocks blocks = assemble_bfim(s, moments);
            const double schur = bcrb_from_blocks(blocks);
            schur_cell = csv_number(schur);
            failed |= relative_difference(closed, schur) > kPairTolerance;
            if (options.dense_check)
            {
                const double dense = bcrb_dense(blocks);
                dense_cell = csv_number(dense);
                failed |= relative_difference(closed, dense) > kPairTolerance;
                failed |= relative_difference(schur, dense) > kPairTolerance;
            }
        }
        else
        {
            // with unit channels only c is sampled, so the oracle must match the closed form on the same draws
            const double same_draw = bcrb_closed_form(s, MonteCarlo{options.samples, options.seed}).bound;
            same_draw_cell = csv_number(same_draw);
            failed |= relative_difference(mc.value, same_draw) > kPairTolerance;
        }
        const double z = mc.std_err > 0.0 ? (mc.value - closed) / mc.std_err
                         : mc.value == closed ? 0.0
                                              : std::copysign(std::numeric_limits<double>::infinity(), mc.value - closed);
        failed |= !(std::abs(z) <= kMaxZScore);
        table.add_row({label, csv_number(closed), schur_cell, dense_cell, csv_number(mc.value), csv_number(mc.std_err),
                       csv_number(z), same_draw_cell});
    }

    CommandOutput out;
    out.csv = table.str();
    out.exit_code = failed ? kExitValidation : kExitOk;
    return out;
}

CommandOutput cmd_select(const Config &config, const CommandOptions &options)
{
    const std::optional<std::size_t> budget = options.budget ? options.budget : config.select_budget;
    if (!budget)
        throw ConfigError("the select command needs --budget or 'select.budget'");
    const Scenario s = build_scenario(config.scenario);
    const auto chosen = select_subcarriers(s.grid, s, *budget, Quadrature{config.quadrature_order});

    const double prior = prior_curvature(s.prior);
    const double scale = 2.0 / s.noise.variance();
    CsvTable table(header(kSelectColumns));
    std::vector<double> picked;
    double before = 1.0 / prior;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < chosen.size(); ++i)
    {
        picked.push_back(chosen[i].contribution);
        const double after = 1.0 / (prior + scale * pairwise_sum(picked));
        table.add_row({std::to_string(i + 1), csv_number(chosen[i].frequency), csv_number(chosen[i].contribution),
                       csv_number(before), csv_number(after)});
        xs.push_back(static_cast<double>(i + 1));
        ys.push_back(after);
        before = after;
    }

    CommandOutput out;
    out.csv = table.str();
    if (options.svg)
        out.svg = line_chart({{"greedy", xs, ys}}, {"bound vs selected subcarriers", "subcarriers", "bound", false, true});
    return out;
}

CommandOutput cmd_asymptotics(const Config &config, const CommandOptions &)
{
    const ScenarioParams &p = config.scenario;
    const SensingPrior prior(p.prior_mean, p.prior_std);
    const double A = p.depth, alpha = p.shift_rate, beta = p.offset;
    const double scale = std::abs(alpha) * prior.std_dev();
    const ExpectationMethod method = Quadrature{config.quadrature_order};
    CsvTable table(header(kAsymptoticsColumns));

    auto add = [&](const std::string &quantity, Regime regime, double ratio, double offset, double numeric,
                   double predicted) {
        table.add_row({quantity, std::string(to_string(regime)), csv_number(ratio), csv_number(offset),
                       csv_number(numeric), csv_number(predicted),
                       csv_number(std::abs(numeric - predicted) / std::abs(predicted))});
    };

    for (const double ratio : {100.0, 1e-3})
    {
        const SensorModel sensor(A, ratio * scale, alpha, beta);
        const Regime regime = classify_regime(sensor, prior);
        for (const double r : {0.0, 0.5})
        {
            const double delta_f = r * alpha * prior.std_dev();
            const auto m = subcarrier_moments(sensor, sensor.resonance(prior.mean()) + delta_f, prior, method);
            const bool wide = regime == Regime::wide;
            add("c1", regime, ratio, delta_f, m.c1.value,
                wide ? c1_wide_limit(sensor, delta_f) : c1_narrow_limit(sensor, prior, delta_f));
            add("c2", regime, ratio, delta_f, m.c2(),
                wide ? c2_wide_limit(sensor, delta_f) : c2_narrow_limit(sensor, prior, delta_f));
        }
    }

    auto gamma_slope = [&](double lo, double hi) {
        std::vector<double> xs = log_ladder(lo, hi, 9), ys;
        for (double ratio : xs)
            ys.push_back(bcrb_closed_form(single_subcarrier(SensorModel(A, ratio * scale, alpha, beta), prior,
                                                            config.asymptotics_snr_db, 0.0),
                                          method)
                             .bound);
        return fit_loglog_slope(xs, ys);
    };
    add("bcrb_slope_half_width", Regime::wide, std::sqrt(10.0 * 100.0), 0.0, gamma_slope(10.0, 100.0), 2.0);
    add("bcrb_slope_half_width", Regime::narrow, std::sqrt(1e-3 * 1e-2), 0.0, gamma_slope(1e-3, 1e-2), 1.0);

    {
        std::vector<double> depths = log_ladder(0.2, 1.0, 9), ys;
        for (double depth : depths)
            ys.push_back(bcrb_closed_form(single_subcarrier(SensorModel(depth, 10.0 * scale, alpha, beta), prior,
                                                            config.asymptotics_depth_snr_db, 0.0),
                                          method)
                             .bound);
        add("bcrb_slope_depth", Regime::wide, 10.0, 0.0, fit_loglog_slope(depths, ys), -2.0);
    }

    {
        const SensorModel sensor(A, p.half_width, alpha, beta);
        const double spacing = p.half_width / 100.0;
        const auto grid = SubcarrierGrid::uniform(sensor.resonance(prior.mean()), spacing, 10000);
        const Scenario s{sensor, prior, RicianSpec::rician(0.0), snr_to_noise(config.asymptotics_snr_db), grid};
        const auto moments = scenario_moments(s, method);
        std::vector<double> c1s;
        for (const auto &m : moments)
            c1s.push_back(m.c1.value);
        add("wideband_c1_sum", classify_regime(sensor, prior), width_ratio(sensor, prior), 0.0, pairwise_sum(c1s),
            wideband_c1_sum(sensor, grid, prior));
    }

    CommandOutput out;
    out.csv = table.str();
    return out;
}

} // namespace metabcrb::cli
