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


#include "metabcrb/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace metabcrb::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 80, kRight = 150, kTop = 40, kBottom = 60;
constexpr std::array<const char *, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string xml_escape(const std::string &s)
{
    std::string out;
    for (char ch : s)
    {
        switch (ch)
        {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

struct Scale
{
    double lo, hi;
    bool log;

    double map(double v, double a, double b) const
    {
        const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
        return a + t * (b - a);
    }
    double value_at(double t) const { return log ? std::pow(10.0, lo + t * (hi - lo)) : lo + t * (hi - lo); }
};

Scale make_scale(const std::vector<double> &values, bool log)
{
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values)
    {
        const double t = log ? std::log10(v) : v;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (!std::isfinite(lo))
        lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12)
        lo -= 0.5, hi += 0.5;
    return {lo, hi, log};
}

bool placeable(double v, bool log)
{
    return std::isfinite(v) && (!log || v > 0.0);
}

} // namespace

std::string line_chart(const std::vector<Series> &series, const ChartOptions &options)
{
    std::vector<double> all_x, all_y;
    for (const auto &s : series)
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i)
            if (placeable(s.xs[i], options.log_x) && placeable(s.ys[i], options.log_y))
            {
                all_x.push_back(s.xs[i]);
                all_y.push_back(s.ys[i]);
            }
    const Scale sx = make_scale(all_x, options.log_x);
    const Scale sy = make_scale(all_y, options.log_y);
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                      num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
           xml_escape(options.title) + "</text>\n";
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
           num(y0 - y1) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i)
    {
        const double t = i / 4.0;
        const double px = x0 + t * (x1 - x0), py = y0 + t * (y1 - y0);
        out += "<text x=\"" + num(px) + "\" y=\"" + num(y0 + 16) + "\" text-anchor=\"middle\">" + tick(sx.value_at(t)) +
               "</text>\n";
        out += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(py + 4) + "\" text-anchor=\"end\">" + tick(sy.value_at(t)) +
               "</text>\n";
    }
    out += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(kHeight - 18) + "\" text-anchor=\"middle\">" +
           xml_escape(options.x_label) + (options.log_x ? " (log)" : "") + "</text>\n";
    out += "<text x=\"18\" y=\"" + num((y0 + y1) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           num((y0 + y1) / 2) + ")\">" + xml_escape(options.y_label) + (options.log_y ? " (log)" : "") + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k)
    {
        const auto &s = series[k];
        const char *color = kColors[k % kColors.size()];
        std::string pts;
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i)
        {
            if (!placeable(s.xs[i], options.log_x) || !placeable(s.ys[i], options.log_y))
                continue;
            if (!pts.empty())
                pts += ' ';
            pts += num(sx.map(s.xs[i], x0, x1)) + "," + num(sy.map(s.ys[i], y0, y1));
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
        const double ly = y1 + 16.0 * static_cast<double>(k + 1);
        out += "<line x1=\"" + num(x1 + 10) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(x1 + 30) + "\" y2=\"" +
               num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(x1 + 34) + "\" y=\"" + num(ly) + "\">" + xml_escape(s.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace metabcrb::cli
