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

#include "sepmaps/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sepmaps/maps.hpp"
#include "sepmaps/states.hpp"

namespace sepmaps {

namespace {

void require_psd_input(const BipartiteOperator& sigma, const ToleranceConfig& tol) {
  const PsdResult r = psd_check(sigma, tol);
  if (!r.holds) {
    throw Error(ErrorCode::NotPSD,
                "input has eigenvalue " + std::to_string(r.margin));
  }
}

void require_alice_qubit(const BipartiteOperator& sigma, const char* what) {
  if (sigma.dims().m != 2) {
    throw Error(ErrorCode::WrongDims,
                std::string(what) + " needs dims (2, N), got M = " +
                    std::to_string(sigma.dims().m));
  }
}

void require_in(const Interval& iv, double alpha, const char* what) {
  if (!std::isfinite(alpha) || !iv.contains(alpha)) {
    throw Error(ErrorCode::RegionViolation,
                std::string(what) + ": alpha = " + std::to_string(alpha) +
                    " outside [" + std::to_string(iv.lower) + ", " +
                    std::to_string(iv.upper) + "]");
  }
}

// Separable iff `image` is PSD within tolerance.
Verdict psd_verdict(std::string label, const BipartiteOperator& image,
                    ParamList params, const ToleranceConfig& tol) {
  const PsdResult r = psd_check(image, tol);
  Verdict v;
  v.criterion = std::move(label);
  v.params = std::move(params);
  v.margin = r.margin;
  v.kind = r.holds ? VerdictKind::Separable : VerdictKind::Inconclusive;
  return v;
}

double strict_threshold(const BipartiteOperator& x, const ToleranceConfig& tol) {
  return tol.psd_tol * std::max(1.0, operator_norm(x));
}

}  // namespace

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Separable: return "Separable";
    case VerdictKind::SchmidtNumberAtMost: return "SchmidtNumberAtMost";
    case VerdictKind::EntangledNPT: return "EntangledNPT";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

Verdict criterion1(const BipartiteOperator& sigma, double alpha,
                   const ToleranceConfig& tol) {
  require_in(reduction_like_interval(), alpha, "criterion1");
  require_psd_input(sigma, tol);
  return psd_verdict("criterion1", reduction_like_invert(sigma, alpha, tol),
                     {{"alpha", alpha}}, tol);
}

Verdict criterion1_alpha2(const BipartiteOperator& sigma, const ToleranceConfig& tol) {
  return criterion1(sigma, 2.0, tol);
}

Verdict criterion1_alpha_minus1(const BipartiteOperator& sigma,
                                const ToleranceConfig& tol) {
  return criterion1(sigma, -1.0, tol);
}

Verdict criterion2(const BipartiteOperator& sigma, double alpha, double beta,
                   const ToleranceConfig& tol) {
  require_alice_qubit(sigma, "criterion2");
  const RegionVerdict region = bh_two_param_region(alpha, beta);
  if (!region.inside) {
    throw Error(ErrorCode::RegionViolation,
                "criterion2: (" + std::to_string(alpha) + ", " +
                    std::to_string(beta) + ") violates " +
                    region.binding_constraint);
  }
  require_psd_input(sigma, tol);
  return psd_verdict("criterion2", bh_two_param_invert(sigma, alpha, beta, tol),
                     {{"alpha", alpha}, {"beta", beta}}, tol);
}

Verdict criterion3(const BipartiteOperator& sigma, double param, Branch branch,
                   const ToleranceConfig& tol) {
  require_alice_qubit(sigma, "criterion3");
  if (!std::isfinite(param) || param < 0.0) {
    throw Error(ErrorCode::RegionViolation,
                "criterion3 parameter must be finite and >= 0, got " +
                    std::to_string(param));
  }
  require_psd_input(sigma, tol);
  const double n2 = sigma.dims().total();
  const BipartiteOperator st = tilde_A(sigma, tol);
  const Complex c = (1.0 + param / 2.0) / (n2 + 1.5 * param - 1.0) * trace(sigma);
  const BipartiteOperator& lead = branch == Branch::A ? sigma : st;
  const BipartiteOperator& other = branch == Branch::A ? st : sigma;
  BipartiteOperator image = param * lead - (param / 2.0 - 1.0) * other;
  image -= c * BipartiteOperator::identity(sigma.dims());
  const char* name = branch == Branch::A ? "beta" : "alpha";
  // Branch A sits on beta = alpha/2 - 1, branch B on alpha = beta/2 - 1.
  return psd_verdict("criterion3",
                     image,
                     {{branch == Branch::A ? "alpha" : "beta", param},
                      {name, param / 2.0 - 1.0},
                      {"branch", branch == Branch::A ? 0.0 : 1.0}},
                     tol);
}

Verdict criterion3_both(const BipartiteOperator& sigma, double param,
                        const ToleranceConfig& tol) {
  Verdict a = criterion3(sigma, param, Branch::A, tol);
  Verdict b = criterion3(sigma, param, Branch::B, tol);
  return b.margin > a.margin ? b : a;
}

Verdict criterion4(const BipartiteOperator& sigma, const ToleranceConfig& tol) {
  require_alice_qubit(sigma, "criterion4");
  require_psd_input(sigma, tol);
  const BipartiteOperator st = tilde_A(sigma, tol);
  const BipartiteOperator a = sigma - 0.5 * st;
  const BipartiteOperator b = st - 0.5 * sigma;
  const double ma = psd_check(a, tol).margin;
  const double mb = psd_check(b, tol).margin;
  Verdict v;
  v.criterion = "criterion4";
  const bool use_a = ma >= mb;
  v.margin = use_a ? ma : mb;
  v.params = {{"branch", use_a ? 0.0 : 1.0}};
  v.kind = v.margin > strict_threshold(use_a ? a : b, tol) ? VerdictKind::Separable
                                                            : VerdictKind::Inconclusive;
  return v;
}

Verdict criterion5(const BipartiteOperator& sigma, double alpha,
                   const ToleranceConfig& tol) {
  require_alice_qubit(sigma, "criterion5");
  require_in(ando_2xN_interval(-1, sigma.dims().n), alpha, "criterion5");
  require_psd_input(sigma, tol);
  return psd_verdict("criterion5", ando_2xN_invert(sigma, alpha, tol),
                     {{"alpha", alpha}}, tol);
}

Verdict karnas_equal_pt(const BipartiteOperator& sigma, const ToleranceConfig& tol) {
  require_alice_qubit(sigma, "karnas_equal_pt");
  require_psd_input(sigma, tol);
  const double defect =
      max_abs(sigma.matrix() - partial_transpose(sigma, Subsystem::A).matrix());
  Verdict v;
  v.criterion = "karnas_equal_pt";
  v.margin = tol.herm_tol * operator_norm(sigma) - defect;
  v.kind = v.margin >= 0.0 ? VerdictKind::Separable : VerdictKind::Inconclusive;
  return v;
}

Verdict karnas_norm(const BipartiteOperator& sigma, const ToleranceConfig& tol) {
  require_alice_qubit(sigma, "karnas_norm");
  require_psd_input(sigma, tol);
  const BipartiteOperator pt = partial_transpose(sigma, Subsystem::A);
  const Matrix p = (sigma + pt).matrix();
  const Matrix q = (sigma - pt).matrix();
  const Matrix p_inv = matrix_inverse(p, tol);  // throws Singular
  Verdict v;
  v.criterion = "karnas_norm";
  v.margin = 1.0 - operator_norm(p_inv) * operator_norm(q);
  const double p_min = hermitian_spectrum(p, tol).front();
  v.params = {{"min_eig_sum", p_min}};
  v.kind = (p_min > 0.0 && v.margin >= 0.0) ? VerdictKind::Separable
                                             : VerdictKind::Inconclusive;
  return v;
}

Verdict purity_ball(const BipartiteOperator& sigma, const ToleranceConfig& tol) {
  require_psd_input(sigma, tol);
  const double bound = 1.0 / (sigma.dims().total() - 1.0);
  Verdict v;
  v.criterion = "purity_ball";
  v.margin = bound - purity(sigma);
  v.kind = v.margin >= 0.0 ? VerdictKind::Separable : VerdictKind::Inconclusive;
  return v;
}

bool ppt_is_exact(Dims dims) {
  return std::min(dims.m, dims.n) == 2 && std::max(dims.m, dims.n) <= 3;
}

Verdict ppt_necessary(const BipartiteOperator& sigma, const ToleranceConfig& tol) {
  require_psd_input(sigma, tol);
  const PsdResult r = psd_check(partial_transpose(sigma, Subsystem::A), tol);
  Verdict v;
  v.criterion = "ppt";
  v.margin = r.margin;
  if (!r.holds) {
    v.kind = VerdictKind::EntangledNPT;
  } else {
    v.kind = ppt_is_exact(sigma.dims()) ? VerdictKind::Separable
                                        : VerdictKind::Inconclusive;
  }
  return v;
}

double schmidt_alpha_upper(int d, int n) {
  if (n < 1 || n >= d) {
    throw Error(ErrorCode::InvalidParameter,
                "Schmidt bound needs 1 <= n < d, got n = " + std::to_string(n) +
                    ", d = " + std::to_string(d));
  }
  return 2.0 * (static_cast<double>(d) * n - 1.0) / (d - n);
}

Verdict schmidt_bound_criterion(const BipartiteOperator& sigma, int n,
                                double alpha, const ToleranceConfig& tol) {
  const Dims& dims = sigma.dims();
  if (dims.m != dims.n) {
    throw Error(ErrorCode::WrongDims, "Schmidt bound needs square dims (d, d)");
  }
  const double upper = schmidt_alpha_upper(dims.m, n);
  require_in({-1.0, upper}, alpha, "schmidt_bound");
  require_psd_input(sigma, tol);
  Verdict v = psd_verdict("schmidt_bound", reduction_like_invert(sigma, alpha, tol),
                          {{"n", static_cast<double>(n)}, {"alpha", alpha}}, tol);
  if (v.kind == VerdictKind::Separable && n > 1) {
    v.kind = VerdictKind::SchmidtNumberAtMost;
    v.schmidt_n = n;
  } else if (v.kind == VerdictKind::Separable) {
    v.schmidt_n = 1;
  }
  return v;
}

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names{
      "ppt",        "purity_ball", "criterion1",      "criterion2",
      "criterion3", "criterion4",  "criterion5",      "karnas_equal_pt",
      "karnas_norm", "schmidt_bound"};
  return names;
}

CriterionReport aggregate_report(const BipartiteOperator& sigma,
                                 const ReportConfig& config) {
  const ToleranceConfig& tol = config.tol;
  tol.validate();
  require_psd_input(sigma, tol);

  for (const auto& name : config.selected) {
    const auto& all = criterion_names();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw Error(ErrorCode::InvalidParameter, "unknown criterion '" + name + "'");
    }
  }

  CriterionReport report;
  const Dims& dims = sigma.dims();
  report.digest.dims = dims;
  report.digest.trace = trace(sigma).real();
  report.digest.purity = purity(sigma);
  report.digest.min_eigenvalue = hermitian_spectrum(sigma, tol).front();

  auto wanted = [&](const std::string& name) {
    return config.selected.empty() || config.selected.count(name) > 0;
  };
  auto run = [&](const std::string& name, ParamList params,
                 const std::function<Verdict()>& fn) {
    try {
      report.verdicts.push_back(fn());
    } catch (const Error& e) {
      Verdict v;
      v.criterion = name;
      v.params = std::move(params);
      v.error = e.what();
      report.verdicts.push_back(std::move(v));
    }
  };

  const bool qubit_alice = dims.m == 2;

  if (wanted("ppt")) run("ppt", {}, [&] { return ppt_necessary(sigma, tol); });
  if (wanted("purity_ball")) {
    run("purity_ball", {}, [&] { return purity_ball(sigma, tol); });
  }
  if (wanted("criterion1")) {
    for (double a : config.criterion1_alphas) {
      run("criterion1", {{"alpha", a}}, [&] { return criterion1(sigma, a, tol); });
    }
  }
  if (qubit_alice && wanted("criterion2")) {
    for (double a : config.boundary_alphas) {
      const double b = a / 2.0 - 1.0;
      run("criterion2", {{"alpha", a}, {"beta", b}},
          [&] { return criterion2(sigma, a, b, tol); });
    }
  }
  if (qubit_alice && wanted("criterion3")) {
    for (double a : config.criterion3_params) {
      for (Branch br : {Branch::A, Branch::B}) {
        run("criterion3", {{"param", a}},
            [&] { return criterion3(sigma, a, br, tol); });
      }
    }
  }
  if (qubit_alice && wanted("criterion4")) {
    run("criterion4", {}, [&] { return criterion4(sigma, tol); });
  }
  if (qubit_alice && wanted("criterion5")) {
    std::vector<double> alphas = config.criterion5_alphas;
    if (alphas.empty()) alphas = {ando_2xN_interval(-1, dims.n).lower, -0.5, 0.5, 1.0};
    for (double a : alphas) {
      run("criterion5", {{"alpha", a}}, [&] { return criterion5(sigma, a, tol); });
    }
  }
  if (qubit_alice && wanted("karnas_equal_pt")) {
    run("karnas_equal_pt", {}, [&] { return karnas_equal_pt(sigma, tol); });
  }
  if (qubit_alice && wanted("karnas_norm")) {
    run("karnas_norm", {}, [&] { return karnas_norm(sigma, tol); });
  }
  if (dims.m == dims.n && dims.m >= 2 && wanted("schmidt_bound")) {
    const int d = dims.m;
    for (int n = 1; n < d; ++n) {
      std::vector<double> alphas = config.schmidt_alphas;
      if (alphas.empty()) alphas = {-1.0, schmidt_alpha_upper(d, n)};
      for (double a : alphas) {
        run("schmidt_bound", {{"n", static_cast<double>(n)}, {"alpha", a}},
            [&] { return schmidt_bound_criterion(sigma, n, a, tol); });
      }
    }
  }

  bool any_sep = false;
  bool any_npt = false;
  int best_n = 0;
  for (const Verdict& v : report.verdicts) {
    if (!v.error.empty()) continue;
    if (v.kind == VerdictKind::Separable) any_sep = true;
    if (v.kind == VerdictKind::EntangledNPT) any_npt = true;
    if (v.kind == VerdictKind::SchmidtNumberAtMost &&
        (best_n == 0 || v.schmidt_n < best_n)) {
      best_n = v.schmidt_n;
    }
  }

  if (any_sep && any_npt) {
    report.conflict = true;
    report.conflict_detail =
        std::string(to_string(ErrorCode::ToleranceConflict)) +
        ": Separable and EntangledNPT verdicts on the same input";
    report.summary = VerdictKind::Inconclusive;
  } else if (any_npt) {
    report.summary = VerdictKind::EntangledNPT;
  } else if (any_sep) {
    report.summary = VerdictKind::Separable;
  } else if (best_n > 0) {
    report.summary = VerdictKind::SchmidtNumberAtMost;
    report.summary_schmidt_n = best_n;
  }
  return report;
}

}  // namespace sepmaps
