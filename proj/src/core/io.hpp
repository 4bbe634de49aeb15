// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace waverate {

/// 17 significant digits, '.' decimal point; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

/// Comma-separated table with LF line endings; cells holding commas, quotes or
/// newlines are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& row(std::vector<std::string> cells);
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace waverate
