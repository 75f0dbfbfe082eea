// Copyright 2026 The excitonq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace excitonq {

/// Shortest round-trip decimal form; identical bits give identical text.
std::string format_number(double value);

/// CSV text: one `#` comment line, a header row, then data rows.
class CsvTable {
 public:
  CsvTable(std::string comment, std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);
  std::size_t rows() const noexcept { return rows_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::string comment_;
  std::vector<std::string> columns_;
  std::string body_;
  std::size_t rows_ = 0;
};

/// Writes `text` to `path`, throwing on I/O failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace excitonq
