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
#include "chansim/csv.hpp"
#include "chansim/errors.hpp"
#include "chansim/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace chansim::csv
{

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Table::Table(std::string description, std::vector<std::string> columns) : columns_(columns.size())
{
    text_ = "# chansim-csv schema=" + std::to_string(csv_schema_version) + " " + description + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        text_ += (i ? "," : "") + columns[i];
    text_ += "\n";
}

void Table::row(std::initializer_list<std::string> cells) { row(std::vector<std::string>(cells)); }

void Table::row(const std::vector<std::string> &cells)
{
    if (cells.size() != columns_)
        throw Error("CSV row has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(columns_));
    for (std::size_t i = 0; i < cells.size(); ++i)
        text_ += (i ? "," : "") + cells[i];
    text_ += "\n";
    ++rows_;
}

void Table::save(const std::filesystem::path &path) const
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
        throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << text_;
    if (!out)
        throw IoError("write to " + path.string() + " failed");
}

} // namespace chansim::csv
