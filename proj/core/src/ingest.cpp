// Copyright 2026 The BrainPaint Authors.
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

#include "brainpaint/ingest.hpp"

#include <cmath>
#include <set>

#include "text_util.hpp"

namespace brainpaint {

namespace {

[[noreturn]] void cell_error(std::string code, int row, int column,
                             const std::string& message, Diagnostics details = {}) {
  Diagnostic d{Severity::kError, code, row, column, message};
  details.insert(details.begin(), d);
  throw Error(ErrorKind::kInput, std::move(code),
              "row " + std::to_string(row) + ", column " + std::to_string(column) +
                  ": " + message,
              std::move(details));
}

std::string quote_cell(std::string_view cell) {
  const bool needs_quotes =
      cell.find_first_of(",\"\r\n") != std::string_view::npos ||
      (!cell.empty() && (detail::is_space(cell.front()) || detail::is_space(cell.back())));
  if (!needs_quotes) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

double RegionValueTable::value_or_default(std::size_t row,
                                          const std::string& region) const {
  const auto& values = rows.at(row).values;
  auto it = values.find(region);
  return it == values.end() ? 0.0 : it->second;
}

ParsedTable parse_biomarker_csv(std::string_view text, const Atlas& atlas) {
  const auto records = read_csv_records(text);
  if (records.empty()) {
    throw Error(ErrorKind::kInput, "empty_csv", "CSV document is empty");
  }

  ParsedTable out;
  RegionValueTable& table = out.table;
  const CsvRecord& header = records.front();
  table.id_header = std::string(detail::trim(header.cells.front()));

  std::set<std::string> seen_regions;
  for (std::size_t col = 1; col < header.cells.size(); ++col) {
    const int column = static_cast<int>(col) + 1;
    const RegionDef* region = nullptr;
    try {
      region = &resolve_region(atlas, header.cells[col]);
    } catch (const Error& e) {
      cell_error(e.code(), 1, column, e.what(), e.details());
    }
    if (!seen_regions.insert(region->canonical_name).second) {
      cell_error("duplicate_region", 1, column,
                 "column '" + header.cells[col] + "' repeats region '" +
                     region->canonical_name + "'");
    }
    table.region_order.push_back(region->canonical_name);
  }

  std::set<std::string> seen_images;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& record = records[r];
    const int row = static_cast<int>(r) + 1;
    if (record.cells.size() != header.cells.size()) {
      cell_error("ragged_row", row, static_cast<int>(record.cells.size()),
                 "expected " + std::to_string(header.cells.size()) + " cells, found " +
                     std::to_string(record.cells.size()) + " (line " +
                     std::to_string(record.line) + ")");
    }
    RegionValueRow value_row;
    value_row.image_name = std::string(detail::trim(record.cells.front()));
    if (value_row.image_name.empty()) {
      cell_error("empty_image_name", row, 1, "image name is empty");
    }
    if (!seen_images.insert(value_row.image_name).second) {
      cell_error("duplicate_image_name", row, 1,
                 "image name '" + value_row.image_name + "' appears more than once");
    }
    for (std::size_t col = 1; col < record.cells.size(); ++col) {
      const int column = static_cast<int>(col) + 1;
      const std::string_view cell = detail::trim(record.cells[col]);
      const auto value = detail::parse_double(cell);
      if (!value) {
        cell_error("non_numeric_value", row, column,
                   "'" + std::string(cell) + "' is not a decimal number");
      }
      if (!std::isfinite(*value)) {
        cell_error("non_finite_value", row, column,
                   "'" + std::string(cell) + "' is not finite");
      }
      value_row.values.emplace(table.region_order[col - 1], *value);
    }
    table.rows.push_back(std::move(value_row));
  }

  for (const RegionDef& region : atlas.regions()) {
    if (!seen_regions.count(region.canonical_name)) {
      table.missing_regions.push_back(region.canonical_name);
      out.warnings.push_back(make_warning(
          "missing_region",
          "region '" + region.canonical_name + "' has no CSV column; using value 0"));
    }
  }
  return out;
}

Diagnostics check_range(const RegionValueTable& table, const GradientSpec& gradient) {
  Diagnostics warnings;
  const double k = gradient.max_value();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.region_order.size(); ++c) {
      const std::string& region = table.region_order[c];
      auto it = table.rows[r].values.find(region);
      if (it == table.rows[r].values.end()) continue;
      const double v = it->second;
      if (v < 0.0 || v > k) {
        warnings.push_back(make_warning(
            "value_out_of_range",
            "value " + detail::format_double(v) + " for '" + region + "' in '" +
                table.rows[r].image_name + "' is outside [0, " +
                std::to_string(gradient.max_value()) + "]; clamped",
            static_cast<int>(r) + 2, static_cast<int>(c) + 2));
      }
    }
  }
  return warnings;
}

std::string write_biomarker_csv(const RegionValueTable& table) {
  std::string out = quote_cell(table.id_header);
  for (const auto& region : table.region_order) {
    out += ',';
    out += quote_cell(region);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    out += quote_cell(row.image_name);
    for (const auto& region : table.region_order) {
      out += ',';
      out += detail::format_double(row.values.at(region));
    }
    out += '\n';
  }
  return out;
}

}  // namespace brainpaint
