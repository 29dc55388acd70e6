// Copyright 2026 The wecs-sim Authors
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

#include "wecs/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wecs/error.hpp"

namespace wecs {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

NumericTable read_numeric_csv(const std::string& path,
                              const std::vector<std::string>& expected_header) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path + "'");

  NumericTable table;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_cells(line);
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    if (!have_header) {
      if (cells != expected_header) {
        std::string want;
        for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
        fail(ErrorKind::kParse, where + "expected header '" + want + "'");
      }
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != expected_header.size()) {
      fail(ErrorKind::kParse, where + "expected " + std::to_string(expected_header.size()) +
                                  " columns, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      double value = 0.0;
      const auto* end = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(cell.data(), end, value);
      if (ec != std::errc() || ptr != end) {
        fail(ErrorKind::kParse, where + "not a number: '" + cell + "'");
      }
      row.push_back(value);
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) fail(ErrorKind::kParse, path + ": empty file, header row required");
  return table;
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace wecs
