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

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "brainpaint/atlas.hpp"
#include "brainpaint/error.hpp"
#include "brainpaint/gradient.hpp"

namespace brainpaint {

/// RFC 4180 records. Accepts LF and CRLF, quoted cells with "" escapes and
/// embedded newlines. A leading UTF-8 BOM is dropped. Fully blank lines are
/// skipped. `line` is the 1-based line on which each record starts.
struct CsvRecord {
  int line = 0;
  std::vector<std::string> cells;
};
std::vector<CsvRecord> read_csv_records(std::string_view text);

struct RegionValueRow {
  std::string image_name;
  std::map<std::string, double> values;  // canonical region name -> value

  bool operator==(const RegionValueRow&) const = default;
};

struct RegionValueTable {
  std::string id_header;
  std::vector<std::string> region_order;  // CSV column order, canonical names
  std::vector<RegionValueRow> rows;
  /// Atlas regions with no CSV column. They render with value 0.
  std::vector<std::string> missing_regions;

  /// Value of `region` in row `row`, 0 when the region is missing.
  double value_or_default(std::size_t row, const std::string& region) const;

  bool operator==(const RegionValueTable&) const = default;
};

struct ParsedTable {
  RegionValueTable table;
  Diagnostics warnings;
};

/// Parses a biomarker CSV: first record is a header (ID column, then region
/// names), one record per output image after that. Row and column numbers in
/// errors are 1-based and count the header as row 1.
///
/// Errors (all ErrorKind::kInput): empty_csv, unresolved_region,
/// duplicate_region, ragged_row, non_numeric_value, non_finite_value,
/// duplicate_image_name, empty_image_name.
ParsedTable parse_biomarker_csv(std::string_view text, const Atlas& atlas);

/// One "value_out_of_range" warning per (row, region) outside [0, K].
Diagnostics check_range(const RegionValueTable& table, const GradientSpec& gradient);

/// Inverse of parse_biomarker_csv for a parsed table. Values are written with
/// the shortest text that reparses to the same double.
std::string write_biomarker_csv(const RegionValueTable& table);

}  // namespace brainpaint
