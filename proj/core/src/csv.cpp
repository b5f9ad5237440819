// Copyright 2026 The tfim Authors
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

#include "tfim/csv.hpp"

#include "tfim/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace tfim {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                 std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != header_.size()) {
    throw DimensionMismatch("CSV row has " + std::to_string(row.size()) +
                            " cells, header has " +
                            std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::visit(
          [&](const auto& cell) {
            using T = std::decay_t<decltype(cell)>;
            if constexpr (std::is_same_v<T, double>) {
              out += format_number(cell);
            } else if constexpr (std::is_same_v<T, bool>) {
              out += cell ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
              out += std::to_string(cell);
            } else {
              out += cell;
            }
          },
          row[i]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ComputationError("cannot open " + path.string() + " for writing");
  const std::string text = str();
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw ComputationError("failed writing " + path.string());
}

}  // namespace tfim
