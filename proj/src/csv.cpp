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

#include "qmlab/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "qmlab/errors.hpp"

namespace qmlab {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_record(const std::string& text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw InvalidInput("csv: unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

Cell parse_cell(const std::string& s) {
  double v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (!s.empty() && res.ec == std::errc() && res.ptr == last) return v;
  return s;
}

}  // namespace

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidInput("table: no columns");
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw InvalidInput("table: row has " + std::to_string(row.size()) + " cells, expected " +
                       std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::size_t ResultTable::column_index(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw InvalidInput("table: no column '" + name + "'");
  return static_cast<std::size_t>(it - columns_.begin());
}

double ResultTable::number(std::size_t row, const std::string& column) const {
  const auto& cell = rows_.at(row).at(column_index(column));
  if (const auto* v = std::get_if<double>(&cell)) return *v;
  throw InvalidInput("table: cell in column '" + column + "' is not numeric");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const ResultTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns().size(); ++c) {
    if (c) out += ',';
    out += quote(table.columns()[c]);
  }
  out += '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (const auto* v = std::get_if<double>(&row[c])) {
        out += format_double(*v);
      } else {
        out += quote(std::get<std::string>(row[c]));
      }
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << render_csv(table);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

ResultTable parse_csv(const std::string& text) {
  std::size_t pos = 0;
  ResultTable table(split_record(text, pos));
  while (pos < text.size()) {
    const auto fields = split_record(text, pos);
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace qmlab
