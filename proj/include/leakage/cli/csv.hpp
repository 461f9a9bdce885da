// Copyright 2026 The Leakage Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <string>
#include <vector>

namespace leakage {
namespace cli {

// Quotes a field when it contains a comma, quote, or line break; embedded
// quotes are doubled.
std::string csv_field(const std::string& value);

// Shortest decimal form at 9 significant digits.
std::string format_double(double value);

std::string format_int(long long value);

// Accumulates rows and serializes them with CRLF line endings and a
// leading header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  // Throws std::invalid_argument when the cell count differs from the header.
  void add_row(std::vector<std::string> cells);

  std::string serialize() const;
  void write_file(const std::string& path) const;

  std::size_t row_count() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace cli
}  // namespace leakage
