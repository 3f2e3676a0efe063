// Copyright 2026 The sepmaps Authors
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

// The numbered end-to-end checks shared by `sepmaps verify` and the
// acceptance test binary.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sepmaps/states.hpp"

namespace sepmaps {

inline constexpr int kAcceptanceCount = 12;

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::string acceptance_name(int id);

/// Runs check `id` in [1, 12]. Exceptions are caught and reported as FAIL.
CheckResult run_acceptance(int id, Seed seed);

/// Suites: roundtrips, regions, paper-examples, soundness, all.
std::vector<int> suite_checks(const std::string& suite);

/// "[PASS] 03 name: detail (0.12 s)"
std::string format_check(const CheckResult& r);

/// Runs the checks, prints one line each; returns true iff all passed.
bool run_checks(const std::vector<int>& ids, Seed seed, std::ostream& out);

}  // namespace sepmaps
