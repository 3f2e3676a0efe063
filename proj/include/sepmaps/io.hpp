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

// JSON state and report files, CSV scan output.
//
// State file (schema 1):
//   {"schema": 1, "dims": [m, n],
//    "matrix": [[[re, im], ...], ...],     // row-major, (mn) x (mn)
//    "metadata": {"label": "...", "source": "..."}}

#pragma once

#include <string>
#include <vector>

#include "sepmaps/criteria.hpp"
#include "sepmaps/linalg.hpp"
#include "sepmaps/oracle.hpp"

namespace sepmaps {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct StateFile {
  BipartiteOperator state;
  std::string label;
  std::string source;
};

/// One matrix row per line; doubles written with 17 significant digits so
/// that loading reproduces every entry bit for bit.
std::string write_state_json(const StateFile& file);

/// Throws Error(Parse) with "line L, field F" diagnostics, or NotHermitian.
StateFile parse_state_json(const std::string& text, const ToleranceConfig& tol = {});

StateFile load_state_file(const std::string& path, const ToleranceConfig& tol = {});
void save_state_file(const std::string& path, const StateFile& file);

std::string report_to_json(const CriterionReport& report, const ReportConfig& config,
                           const std::string& label = {});

/// Columns: family, <param names>, worst_psd_margin, worst_ppt_margin,
/// n_samples, and with with_region also theorem_inside, theorem_slack,
/// binding_constraint.
std::string scan_to_csv(const ScanSpec& spec, const std::vector<ScanResult>& results,
                        bool with_region);

std::string read_text_file(const std::string& path);
/// Writes to a sibling temporary and renames it over the target.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace sepmaps
