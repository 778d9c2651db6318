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


#include "metabcrb/cli/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace metabcrb::cli {

namespace {

std::string escape(const std::string &cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos)
        return cell;
    std::string out = "\"";
    for (char ch : cell)
    {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

void append_line(std::string &out, const std::vector<std::string> &cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (i > 0)
            out += ',';
        out += escape(cells[i]);
    }
    out += '\n';
}

} // namespace

std::string csv_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != header_.size())
        throw std::invalid_argument("CsvTable: row has " + std::to_string(cells.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::string out;
    append_line(out, header_);
    for (const auto &row : rows_)
        append_line(out, row);
    return out;
}

} // namespace metabcrb::cli
