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

/// 17 significant digits in scientific notation; nan and +/-inf spelled out.
std::string csv_number(double value);

/// Comma-separated table with a header row and LF line endings. Cells containing commas or
/// quotes are quoted.
class CsvTable
{
  public:
    explicit CsvTable(std::vector<std::string> header);

    /// Throws std::invalid_argument if the cell count differs from the header.
    void add_row(std::vector<std::string> cells);

    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace metabcrb::cli
