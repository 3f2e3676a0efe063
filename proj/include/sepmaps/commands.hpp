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

// Subcommands behind the `sepmaps` executable. Each returns the process exit
// code: 0 when the command ran, 2 for invalid input. Physics verdicts live in
// the output, never in the exit code; only `verify` uses 1 for a failed check.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sepmaps/oracle.hpp"

namespace sepmaps {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalid = 2;

struct AnalyzeOptions {
  std::string input;
  std::string output;  // empty: stdout
  std::vector<std::string> criteria;
  std::vector<double> criterion1_alphas;
  std::vector<double> boundary_alphas;
  std::vector<double> criterion3_params;
  std::vector<double> criterion5_alphas;
  std::vector<double> schmidt_alphas;
  std::optional<double> psd_tol;
  std::optional<double> herm_tol;
};

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);

struct GenerateOptions {
  std::string family;
  std::string output;  // empty: stdout
  std::vector<int> dims;
  std::optional<double> a;
  std::optional<double> p;
  std::optional<double> beta;
  std::optional<int> d;
  std::vector<double> coeffs;
  std::optional<std::uint64_t> seed;
  std::string label;
};

const std::vector<std::string>& generate_families();
int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err);

struct ScanOptions {
  std::string family;
  std::vector<int> dims{2, 2};
  /// Parameter name -> "lo:hi:step" or a single value.
  std::map<std::string, std::string> axes;
  /// Step for parameters without an explicit axis.
  std::optional<double> grid;
  int k = -1;
  int samples = 50;
  std::uint64_t seed = 1;
  int threads = 0;
  bool region = false;
  std::string output;  // empty: stdout
};

/// "lo:hi:step" or "v". Throws Error(Parse).
Axis parse_axis(const std::string& text);
/// Fills unspecified axes with the family's default range.
ScanSpec build_scan_spec(const ScanOptions& opts);
int cmd_scan(const ScanOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::string suite = "all";
  std::vector<int> checks;  // overrides suite when non-empty
  std::uint64_t seed = 20260101;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace sepmaps
