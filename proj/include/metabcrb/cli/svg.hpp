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

#include <string>
#include <vector>

namespace metabcrb::cli {

struct Series
{
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

struct ChartOptions
{
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

/// Standalone SVG document with one polyline per series. Points that cannot be placed on a
/// log axis are dropped.
std::string line_chart(const std::vector<Series> &series, const ChartOptions &options);

} // namespace metabcrb::cli
