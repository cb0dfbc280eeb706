// Copyright 2026 The qmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace qmlab {

using Cell = std::variant<double, std::string>;

/// Rectangular table of numeric and string cells.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::size_t column_index(const std::string& name) const;
  double number(std::size_t row, const std::string& column) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// %.17g: parsing the text back yields the same double.
std::string format_double(double v);

/// Header line plus one line per row, '\n' terminated. Fields containing a
/// comma, quote or newline are quoted with doubled inner quotes.
std::string render_csv(const ResultTable& table);

/// Throws IoError when the file cannot be written.
void emit_csv(const ResultTable& table, const std::filesystem::path& path);

/// Inverse of render_csv for tables whose cells all parse as numbers or are
/// kept as strings otherwise.
ResultTable parse_csv(const std::string& text);

}  // namespace qmlab
