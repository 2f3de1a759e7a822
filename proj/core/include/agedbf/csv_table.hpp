// SPDX-License-Identifier: Apache-2.0
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

#ifndef AGEDBF_CSV_TABLE_HPP
#define AGEDBF_CSV_TABLE_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace agedbf {

/// Shortest decimal text that round-trips to the same double
/// ("nan", "inf" and "-inf" for non-finite values).
std::string format_double(double v);

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(std::int64_t v) { return std::to_string(v); }
inline std::string cell(int v) { return std::to_string(v); }
inline std::string cell(bool v) { return v ? "true" : "false"; }
inline std::string cell(std::string_view v) { return std::string(v); }
inline std::string cell(const char* v) { return std::string(v); }

/// In-memory CSV with a fixed header. Cells are stored as text so that
/// written files are byte-stable.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Append a row; its width must match the header.
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  std::size_t column(std::string_view name) const;

  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace agedbf

#endif  // AGEDBF_CSV_TABLE_HPP
