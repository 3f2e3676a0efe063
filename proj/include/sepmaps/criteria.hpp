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

// Sufficient separability and Schmidt-number tests obtained by inverting the
// maps, together with the PPT test (necessary) and two independent
// sufficient tests (purity ball, equal partial transpose).

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sepmaps/linalg.hpp"

namespace sepmaps {

enum class VerdictKind { Separable, SchmidtNumberAtMost, EntangledNPT, Inconclusive };

std::string_view to_string(VerdictKind kind);

using ParamList = std::vector<std::pair<std::string, double>>;

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  int schmidt_n = 0;  // only meaningful for SchmidtNumberAtMost
  std::string criterion;
  double margin = 0.0;
  ParamList params;
  std::string error;  // set when the criterion could not be evaluated

  bool fired() const {
    return kind == VerdictKind::Separable ||
           kind == VerdictKind::SchmidtNumberAtMost;
  }
};

Verdict criterion1(const BipartiteOperator& sigma, double alpha,
                   const ToleranceConfig& tol = {});
/// sigma - Tr(sigma) I / (MN + 2) >= 0.
Verdict criterion1_alpha2(const BipartiteOperator& sigma,
                          const ToleranceConfig& tol = {});
/// Tr(sigma) I / (MN - 1) - sigma >= 0.
Verdict criterion1_alpha_minus1(const BipartiteOperator& sigma,
                                const ToleranceConfig& tol = {});

Verdict criterion2(const BipartiteOperator& sigma, double alpha, double beta,
                   const ToleranceConfig& tol = {});

enum class Branch { A, B };

/// Branch A: alpha sigma - (alpha/2 - 1) sigma~_A - c Tr(sigma) I >= 0;
/// branch B swaps the roles of sigma and sigma~_A. param >= 0.
Verdict criterion3(const BipartiteOperator& sigma, double param, Branch branch,
                   const ToleranceConfig& tol = {});
/// Fires if either branch fires; margin is the larger of the two.
Verdict criterion3_both(const BipartiteOperator& sigma, double param,
                        const ToleranceConfig& tol = {});

/// sigma - sigma~_A/2 > 0 or sigma~_A - sigma/2 > 0, strictly.
Verdict criterion4(const BipartiteOperator& sigma, const ToleranceConfig& tol = {});

Verdict criterion5(const BipartiteOperator& sigma, double alpha,
                   const ToleranceConfig& tol = {});

/// sigma = sigma^{T_A} within herm_tol * ||sigma||_op.
Verdict karnas_equal_pt(const BipartiteOperator& sigma,
                        const ToleranceConfig& tol = {});
/// ||(sigma + sigma^{T_A})^-1|| ||sigma - sigma^{T_A}|| <= 1 with
/// sigma + sigma^{T_A} positive definite.
Verdict karnas_norm(const BipartiteOperator& sigma, const ToleranceConfig& tol = {});

/// tr(rho^2) <= 1/(MN - 1) on sigma / Tr(sigma).
Verdict purity_ball(const BipartiteOperator& sigma, const ToleranceConfig& tol = {});

/// NPT => entangled. At 2x2 and 2x3 PPT also certifies separability.
Verdict ppt_necessary(const BipartiteOperator& sigma,
                      const ToleranceConfig& tol = {});
bool ppt_is_exact(Dims dims);

/// Upper end of the admissible alpha interval, 2(dn - 1)/(d - n).
double schmidt_alpha_upper(int d, int n);
Verdict schmidt_bound_criterion(const BipartiteOperator& sigma, int n,
                                double alpha, const ToleranceConfig& tol = {});

struct ReportConfig {
  ToleranceConfig tol;
  /// Empty selects every applicable criterion. Names as in criterion_names().
  std::set<std::string> selected;
  std::vector<double> criterion1_alphas{-1.0, -0.5, 1.0, 2.0};
  /// Boundary beta = alpha/2 - 1 for each listed alpha.
  std::vector<double> boundary_alphas{0.0, 2.0, 6.0, 20.0};
  std::vector<double> criterion3_params{0.0, 2.0, 6.0, 20.0};
  /// Empty means {-2N/(3N-1), -0.5, 0.5, 1}.
  std::vector<double> criterion5_alphas;
  /// Empty means {-1, 2(dn-1)/(d-n)} for each n.
  std::vector<double> schmidt_alphas;
};

const std::vector<std::string>& criterion_names();

struct InputDigest {
  Dims dims;
  double trace = 0.0;
  double purity = 0.0;
  double min_eigenvalue = 0.0;
};

struct CriterionReport {
  InputDigest digest;
  std::vector<Verdict> verdicts;
  VerdictKind summary = VerdictKind::Inconclusive;
  int summary_schmidt_n = 0;
  /// Separable and EntangledNPT both present: a tolerance problem.
  bool conflict = false;
  std::string conflict_detail;
};

/// Throws NotHermitian / NotPSD for invalid input; per-criterion failures are
/// recorded in Verdict::error.
CriterionReport aggregate_report(const BipartiteOperator& sigma,
                                 const ReportConfig& config = {});

}  // namespace sepmaps
