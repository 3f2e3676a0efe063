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

// Linear maps that send every state to a separable (or low Schmidt number)
// operator for parameters inside a closed-form region, plus inverses where
// they exist. All maps accept unnormalized Hermitian inputs.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sepmaps/linalg.hpp"

namespace sepmaps {

struct FourParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

struct AndoParams {
  int k = -1;
  double alpha = 0.0;
};

struct RegionVerdict {
  bool inside = false;
  std::string binding_constraint;
  double slack = 0.0;  // min over constraint slacks; inside <=> slack >= 0
  bool proven = true;  // false for conjectured or absent regions
};

/// Builds a verdict from labelled slacks (constraint holds iff slack >= 0).
RegionVerdict region_from_slacks(
    const std::vector<std::pair<std::string, double>>& slacks,
    bool proven = true);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x) const { return x >= lower && x <= upper; }
};

RegionVerdict interval_region(const Interval& iv, double alpha,
                              bool proven = true);

// --- twisted transposes ----------------------------------------------------

/// sigma_2 X^{T_A} sigma_2; needs M = 2.
BipartiteOperator tilde_A(const BipartiteOperator& x,
                          const ToleranceConfig& tol = {});
/// V X^{T_B} V^dag with V on Bob; needs N even.
BipartiteOperator tilde_B(const BipartiteOperator& x,
                          const ToleranceConfig& tol = {});
BipartiteOperator tilde_B(const BipartiteOperator& x, const Matrix& v,
                          const ToleranceConfig& tol = {});
/// (sigma_2 (x) V) X^T (sigma_2 (x) V)^dag; needs M = 2, N even.
BipartiteOperator tilde_full(const BipartiteOperator& x,
                             const ToleranceConfig& tol = {});

// --- reduction-like: Tr(rho) I + alpha rho ---------------------------------

BipartiteOperator reduction_like_apply(const BipartiteOperator& rho,
                                       double alpha,
                                       const ToleranceConfig& tol = {});
/// (sigma - Tr(sigma) I / (MN + alpha)) / alpha.
BipartiteOperator reduction_like_invert(const BipartiteOperator& sigma,
                                        double alpha,
                                        const ToleranceConfig& tol = {});
Interval reduction_like_interval();
RegionVerdict reduction_like_region(double alpha);

// --- two-parameter map on 2 (x) N: Tr I + alpha rho + beta rho~_A ----------

BipartiteOperator bh_two_param_apply(const BipartiteOperator& rho,
                                     double alpha, double beta,
                                     const ToleranceConfig& tol = {});
BipartiteOperator bh_two_param_invert(const BipartiteOperator& sigma,
                                      double alpha, double beta,
                                      const ToleranceConfig& tol = {});
RegionVerdict bh_two_param_region(double alpha, double beta);

// --- four-parameter map on 2 (x) N, N even ---------------------------------

BipartiteOperator four_param_apply(const BipartiteOperator& rho,
                                   const FourParams& p,
                                   const ToleranceConfig& tol = {});
/// Existence of 0 <= a, b, a + b <= 1 solved in closed form.
RegionVerdict four_param_region(const FourParams& p, Dims dims);
/// Sharper region at 2 (x) 2 with s = alpha + delta, s~ = beta + gamma.
RegionVerdict two_by_two_region(const FourParams& p);

// --- Ando-like maps ----------------------------------------------------------

/// sum_m eps(S_B^m X S_B^m^dag) = diag(Tr_B X) (x) I_N.
BipartiteOperator bob_shift_twirl(const BipartiteOperator& x);

/// k = -1 drops the S_A sum and uses coefficient N on eps(rho).
BipartiteOperator ando_2xN_apply(const BipartiteOperator& rho,
                                 const AndoParams& params,
                                 const ToleranceConfig& tol = {});
Interval ando_2xN_interval(int k, int n);
/// Numerically suggested (unproven) band for k = -1.
Interval ando_2xN_conjectured_interval();
RegionVerdict ando_2xN_region(const AndoParams& params, int n);
RegionVerdict ando_2xN_conjectured_region(double alpha);
/// Inverse of the k = -1 map.
BipartiteOperator ando_2xN_invert(const BipartiteOperator& sigma, double alpha,
                                  const ToleranceConfig& tol = {});

/// (M - 1) N eps(rho) + sum_m eps(S_B^m rho S_B^m^dag) + alpha rho.
BipartiteOperator ando_MxN_apply(const BipartiteOperator& rho, double alpha,
                                 const ToleranceConfig& tol = {});
Interval ando_MxN_interval();
RegionVerdict ando_MxN_region(double alpha);

BipartiteOperator ando_MxN_k_apply(const BipartiteOperator& rho, int k,
                                   double alpha,
                                   const ToleranceConfig& tol = {});
/// Only k = 0 has a proven interval.
Interval ando_MxN_k0_interval(Dims dims);
RegionVerdict ando_MxN_k_region(int k, double alpha, Dims dims);

// --- non-invertible block maps ---------------------------------------------

/// [[I_N Tr X11, alpha B], [alpha B^dag, I_N Tr X22]], B = X12 + R(X12^dag).
BipartiteOperator phi_alpha(const BipartiteOperator& x, double alpha,
                            const ToleranceConfig& tol = {});
/// Same block layout with 2N blocks on dims (4, N) and C = X12 + U X12* U^dag.
BipartiteOperator psi_alpha(const BipartiteOperator& x, double alpha,
                            const ToleranceConfig& tol = {});
BipartiteOperator psi_alpha(const BipartiteOperator& x, double alpha,
                            const Matrix& u, const ToleranceConfig& tol = {});

// --- decomposable pre-witnesses ---------------------------------------------

struct PrewitnessImage {
  BipartiteOperator image;
  RegionVerdict region;  // outside => the image carries no guarantee
};

/// Lambda_p(P + Q^{T_A}) for P, Q >= 0.
PrewitnessImage prewitness_image(const BipartiteOperator& p_op,
                                 const BipartiteOperator& q_op,
                                 const FourParams& p,
                                 const ToleranceConfig& tol = {});

}  // namespace sepmaps
