// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

// Runs the battery twice through the C API and prints one verdict per criterion.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "waverate/waverate.h"

namespace fs = std::filesystem;

namespace {

struct Row {
  std::string status;
  std::string title;
  std::string observed;
  bool blocking = false;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool run(const fs::path& dir, int jobs, std::map<std::string, Row>& rows) {
  waverate_suite_options opts;
  waverate_suite_options_init(&opts);
  opts.jobs = jobs;
  waverate_suite* suite = nullptr;
  if (waverate_suite_run(&opts, &suite) != WAVERATE_OK) {
    std::printf("error: %s\n", waverate_last_error());
    return false;
  }
  fs::remove_all(dir);
  const bool written = waverate_suite_write(suite, dir.c_str()) == WAVERATE_OK;
  if (!written) std::printf("error: %s\n", waverate_last_error());
  for (size_t i = 0; i < waverate_suite_count(suite); ++i) {
    waverate_criterion_view v{};
    if (waverate_suite_criterion(suite, i, &v) != WAVERATE_OK) continue;
    rows[v.id] = {v.status, v.title, v.observed, v.blocking_failure != 0};
  }
  waverate_suite_destroy(suite);
  return written;
}

/// Names of files that differ or exist on one side only.
std::vector<std::string> compare_dirs(const fs::path& a, const fs::path& b) {
  std::vector<std::string> names, diff;
  for (const fs::path& root : {a, b})
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file()) names.push_back(fs::relative(e.path(), root).string());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const std::string& n : names)
    if (!fs::exists(a / n) || !fs::exists(b / n) || slurp(a / n) != slurp(b / n)) diff.push_back(n);
  return diff;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path base = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "waverate_acceptance";
  const int wide = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
  std::map<std::string, Row> first, second;
  if (!run(base / "run_serial", 1, first) || !run(base / "run_parallel", wide, second)) return 2;

  const std::vector<std::string> diff = compare_dirs(base / "run_serial", base / "run_parallel");
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(base / "run_serial")) files += e.is_regular_file() ? 1 : 0;

  int failed = 0;
  for (int id = 1; id <= 12; ++id) {
    const std::string key = std::to_string(id);
    auto it = first.find(key);
    if (it == first.end()) {
      std::printf("FAIL criterion %2d: missing from the battery\n", id);
      ++failed;
      continue;
    }
    Row row = it->second;
    bool ok = row.status == "PASS";
    if (id == 3) {
      auto sh = first.find("3s");
      if (sh != first.end()) row.observed += "; shannon " + sh->second.status + " (" + sh->second.observed + ")";
      ok = ok && (sh == first.end() || !sh->second.blocking);
    }
    if (id == 12) {
      std::ostringstream extra;
      extra << "; two full runs (1 and " << wide << " workers): " << files << " files, " << diff.size() << " differ";
      for (const std::string& d : diff) extra << " [" << d << "]";
      row.observed += extra.str();
      ok = ok && diff.empty();
    }
    std::printf("%s criterion %2d: %s: %s\n", ok ? "PASS" : "FAIL", id, row.title.c_str(), row.observed.c_str());
    failed += ok ? 0 : 1;
  }
  std::printf("%d of 12 criteria passed\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
