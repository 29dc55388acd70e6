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

#pragma once

#include <string>
#include <vector>

namespace wecs {

// A numeric CSV table: one header row, then rows of doubles.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<int> line_numbers;  // source line of each row, 1-based
};

// Reads a comma-separated numeric table. `expected_header` must match the
// header row exactly (whitespace around cells is ignored). Throws
// Error(kIo) when the file cannot be opened and Error(kParse) with a
// "path:line:" prefix on malformed content.
NumericTable read_numeric_csv(const std::string& path,
                              const std::vector<std::string>& expected_header);

// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

}  // namespace wecs
