// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <map>
#include <mutex>
#include <string>

#include "core/families.hpp"

namespace waverate::testing {

/// Families are built once per test binary.
inline const MRAFamily& family(const std::string& spec) {
  static std::mutex mu;
  static std::map<std::string, MRAFamily> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(spec);
  if (it == cache.end()) it = cache.emplace(spec, make_family_from_spec(spec)).first;
  return it->second;
}

}  // namespace waverate::testing
