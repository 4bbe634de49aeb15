// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace waverate {

enum class CriterionStatus { pass, fail, expected_fail, unexpected_pass };

const char* to_string(CriterionStatus s);

struct CriterionResult {
  /// "1".."12", or "3s" for the Shannon kernel row.
  std::string id;
  std::string tag;
  std::string title;
  std::string expected;
  std::string observed;
  CriterionStatus status = CriterionStatus::fail;
  /// File name -> content, written into the report directory.
  std::map<std::string, std::string> artifacts;

  /// Counts against the exit status.
  bool blocking_failure() const noexcept { return status == CriterionStatus::fail; }
};

struct SuiteConfig {
  /// Tags or criterion ids; empty selects everything.
  std::vector<std::string> only;
  int jobs = 1;
  std::uint64_t seed = 20260101;
  /// 0 selects the default grid level.
  int level = 0;
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool passed() const noexcept;
  std::string summary_csv() const;
  std::string summary_json() const;
};

/// Tags accepted by SuiteConfig::only besides plain criterion ids.
std::vector<std::string> suite_tags();

/// Throws ConfigError for unknown selectors.
SuiteResult run_suite(const SuiteConfig& config);

/// summary.csv, summary.json and every artifact, each written atomically.
void write_suite_report(const SuiteResult& result, const std::filesystem::path& dir);

}  // namespace waverate
