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

#include "brainpaint/error.hpp"
#include "brainpaint/ingest.hpp"

namespace brainpaint {

std::vector<CsvRecord> read_csv_records(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<CsvRecord> records;
  CsvRecord record;
  std::string cell;
  bool in_quotes = false;
  bool cell_was_quoted = false;
  bool record_has_content = false;
  int line = 1;
  record.line = 1;

  auto end_cell = [&] {
    record.cells.push_back(std::move(cell));
    cell.clear();
    cell_was_quoted = false;
  };
  auto end_record = [&] {
    end_cell();
    const bool blank = record.cells.size() == 1 && record.cells[0].empty() &&
                       !record_has_content;
    if (!blank) records.push_back(std::move(record));
    record = CsvRecord{};
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!cell.empty() || cell_was_quoted) {
          throw Error(ErrorKind::kInput, "malformed_csv",
                      "line " + std::to_string(line) +
                          ": quote inside an unquoted cell");
        }
        in_quotes = true;
        cell_was_quoted = true;
        record_has_content = true;
        break;
      case ',':
        end_cell();
        record_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        end_record();
        ++line;
        record.line = line;
        break;
      default:
        if (cell_was_quoted) {
          throw Error(ErrorKind::kInput, "malformed_csv",
                      "line " + std::to_string(line) +
                          ": text after closing quote");
        }
        cell.push_back(c);
        record_has_content = true;
        break;
    }
  }
  if (in_quotes) {
    throw Error(ErrorKind::kInput, "malformed_csv",
                "unterminated quoted cell starting on line " + std::to_string(record.line));
  }
  if (record_has_content || !cell.empty()) end_record();
  return records;
}

}  // namespace brainpaint
