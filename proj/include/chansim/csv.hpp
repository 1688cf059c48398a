// SPDX-License-Identifier: Apache-2.0
//
// chansim - statistical radio channel simulation for positioning evaluation
// Copyright (C) 2026 The chansim authors
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
#ifndef CHANSIM_CSV_HPP
#define CHANSIM_CSV_HPP

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace chansim::csv
{

// Fixed "%.10g" rendering; infinities as "inf" / "-inf", NaN as "nan".
std::string num(double v);

// Buffers a CSV file: a "# chansim-csv schema=<v> key=value ..." comment,
// a column header, then rows. Nothing touches disk until save().
class Table
{
public:
    Table(std::string description, std::vector<std::string> columns);

    void row(std::initializer_list<std::string> cells);
    void row(const std::vector<std::string> &cells);
    std::size_t rows() const { return rows_; }
    const std::string &text() const { return text_; }

    // Creates parent directories. Throws IoError on failure.
    void save(const std::filesystem::path &path) const;

private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

} // namespace chansim::csv

#endif
