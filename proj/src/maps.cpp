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

#include "sepmaps/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>

namespace sepmaps {

namespace {

void require_qubit_alice(const Dims& d, const char* what) {
  if (d.m != 2) {
    throw Error(ErrorCode::WrongDims, std::string(what) + " needs M = 2, got M = " +
                                          std::to_string(d.m));
  }
}

void require_even_bob(const Dims& d, const char* what) {
  if (d.n % 2 != 0) {
    throw Error(ErrorCode::OddDimension,
                std::string(what) + " needs even N, got N = " + std::to_string(d.n));
  }
}

void require_nonsingular(double value, const ToleranceConfig& tol,
                         const char* what) {
  if (!(std::abs(value) > tol.inverse_singularity_tol)) {
    throw Error(ErrorCode::SingularMap,
                std::string(what) + " = " + std::to_string(value));
  }
}

// eps(S_A^di S_B^dj X S_A^di^dag S_B^dj^dag) as a diagonal operator.
BipartiteOperator shifted_dephasing(const BipartiteOperator& x, int di, int dj) {
  const Dims& d = x.dims();
  Matrix out = Matrix::Zero(d.total(), d.total());
  for (int a = 0; a < d.m; ++a) {
    for (int b = 0; b < d.n; ++b) {
      const int src = d.index(((a - di) % d.m + d.m) % d.m,
                              ((b - dj) % d.n + d.n) % d.n);
      out(d.index(a, b), d.index(a, b)) = x(src, src);
    }
  }
  return {d, std::move(out)};
}

BipartiteOperator scaled_identity(Dims dims, Complex s) {
  return {dims, s * Matrix::Identity(dims.total(), dims.total())};
}

}  // namespace

RegionVerdict region_from_slacks(
    const std::vector<std::pair<std::string, double>>& slacks, bool proven) {
  RegionVerdict v;
  v.proven = proven;
  v.slack = std::numeric_limits<double>::infinity();
  for (const auto& [label, s] : slacks) {
    if (s < v.slack) {
      v.slack = s;
      v.binding_constraint = label;
    }
  }
  v.inside = v.slack >= 0.0;
  return v;
}

RegionVerdict interval_region(const Interval& iv, double alpha, bool proven) {
  return region_from_slacks({{fmt::format("alpha >= {:.6g}", iv.lower), alpha - iv.lower},
                             {fmt::format("alpha <= {:.6g}", iv.upper), iv.upper - alpha}},
                            proven);
}

BipartiteOperator tilde_A(const BipartiteOperator& x, const ToleranceConfig& tol) {
  require_qubit_alice(x.dims(), "tilde_A");
  require_hermitian(x, tol);
  const Matrix v2 = breuer_hall_unitary(2);
  const BipartiteOperator u = kron(v2, Matrix::Identity(x.dims().n, x.dims().n));
  return conjugate_by(u.matrix(), partial_transpose(x, Subsystem::A));
}

BipartiteOperator tilde_B(const BipartiteOperator& x, const ToleranceConfig& tol) {
  require_even_bob(x.dims(), "tilde_B");
  return tilde_B(x, breuer_hall_unitary(x.dims().n), tol);
}

BipartiteOperator tilde_B(const BipartiteOperator& x, const Matrix& v,
                          const ToleranceConfig& tol) {
  require_even_bob(x.dims(), "tilde_B");
  require_hermitian(x, tol);
  if (v.rows() != x.dims().n) {
    throw Error(ErrorCode::DimensionMismatch, "tilde_B: V must be N x N");
  }
  validate_antisymmetric_unitary(v);
  const BipartiteOperator u = kron(Matrix::Identity(x.dims().m, x.dims().m), v);
  return conjugate_by(u.matrix(), partial_transpose(x, Subsystem::B));
}

BipartiteOperator tilde_full(const BipartiteOperator& x, const ToleranceConfig& tol) {
  require_qubit_alice(x.dims(), "tilde_full");
  require_even_bob(x.dims(), "tilde_full");
  require_hermitian(x, tol);
  const BipartiteOperator u =
      kron(breuer_hall_unitary(2), breuer_hall_unitary(x.dims().n));
  return conjugate_by(u.matrix(), transpose(x));
}

BipartiteOperator reduction_like_apply(const BipartiteOperator& rho, double alpha,
                                       const ToleranceConfig& tol) {
  require_hermitian(rho, tol);
  return scaled_identity(rho.dims(), trace(rho)) + alpha * rho;
}

BipartiteOperator reduction_like_invert(const BipartiteOperator& sigma,
                                        double alpha, const ToleranceConfig& tol) {
  require_hermitian(sigma, tol);
  const double mn = sigma.dims().total();
  require_nonsingular(alpha, tol, "alpha");
  require_nonsingular(mn + alpha, tol, "MN + alpha");
  const BipartiteOperator shifted =
      sigma - scaled_identity(sigma.dims(), trace(sigma) / (mn + alpha));
  return (1.0 / alpha) * shifted;
}

Interval reduction_like_interval() { return {-1.0, 2.0}; }

RegionVerdict reduction_like_region(double alpha) {
  return interval_region(reduction_like_interval(), alpha);
}

BipartiteOperator bh_two_param_apply(const BipartiteOperator& rho, double alpha,
                                     double beta, const ToleranceConfig& tol) {
  require_qubit_alice(rho.dims(), "bh_two_param");
  return reduction_like_apply(rho, alpha, tol) + beta * tilde_A(rho, tol);
}

BipartiteOperator bh_two_param_invert(const BipartiteOperator& sigma,
                                      double alpha, double beta,
                                      const ToleranceConfig& tol) {
  require_qubit_alice(sigma.dims(), "bh_two_param");
  const double n2 = sigma.dims().total();
  require_nonsingular(alpha * alpha - beta * beta, tol, "alpha^2 - beta^2");
  require_nonsingular(n2 + alpha + beta, tol, "2N + alpha + beta");
  BipartiteOperator out = alpha * sigma - beta * tilde_A(sigma, tol);
  out -= scaled_identity(sigma.dims(),
                         (alpha - beta) * trace(sigma) / (n2 + alpha + beta));
  return (1.0 / (alpha * alpha - beta * beta)) * out;
}

RegionVerdict bh_two_param_region(double alpha, double beta) {
  return region_from_slacks({{"alpha >= -1", alpha + 1.0},
                             {"alpha >= beta/2 - 1", alpha - (beta / 2.0 - 1.0)},
                             {"beta >= -1", beta + 1.0},
                             {"beta >= alpha/2 - 1", beta - (alpha / 2.0 - 1.0)}});
}

BipartiteOperator four_param_apply(const BipartiteOperator& rho,
                                   const FourParams& p, const ToleranceConfig& tol) {
  require_qubit_alice(rho.dims(), "four_param");
  require_even_bob(rho.dims(), "four_param");
  BipartiteOperator out = bh_two_param_apply(rho, p.alpha, p.beta, tol);
  out += p.gamma * tilde_B(rho, tol);
  out += p.delta * tilde_full(rho, tol);
  return out;
}

RegionVerdict four_param_region(const FourParams& p, Dims dims) {
  require_qubit_alice(dims, "four_param_region");
  require_even_bob(dims, "four_param_region");
  const double a_min =
      std::max({0.0, p.beta / 2.0 - p.alpha, p.alpha / 2.0 - p.beta});
  const double b_min =
      std::max({0.0, p.delta / 2.0 - p.gamma, p.gamma / 2.0 - p.delta});
  return region_from_slacks({{"alpha >= -1", p.alpha + 1.0},
                             {"beta >= -1", p.beta + 1.0},
                             {"gamma >= -1", p.gamma + 1.0},
                             {"delta >= -1", p.delta + 1.0},
                             {"a_min <= 1", 1.0 - a_min},
                             {"b_min <= 1", 1.0 - b_min},
                             {"a_min + b_min <= 1", 1.0 - a_min - b_min}});
}

RegionVerdict two_by_two_region(const FourParams& p) {
  // alpha pairs with delta and beta with gamma: with V = sigma_2 the full
  // twist rho~ acts on a Bell vector like rho itself does.
  const double s = p.alpha + p.delta;
  const double st = p.beta + p.gamma;
  return region_from_slacks({{"alpha >= -1", p.alpha + 1.0},
                             {"beta >= -1", p.beta + 1.0},
                             {"gamma >= -1", p.gamma + 1.0},
                             {"delta >= -1", p.delta + 1.0},
                             {"s >= -1", s + 1.0},
                             {"s >= s~/2 - 1", s - (st / 2.0 - 1.0)},
                             {"s~ >= -1", st + 1.0},
                             {"s~ >= s/2 - 1", st - (s / 2.0 - 1.0)}});
}

BipartiteOperator bob_shift_twirl(const BipartiteOperator& x) {
  BipartiteOperator out = BipartiteOperator::zero(x.dims());
  for (int m = 0; m < x.dims().n; ++m) out += shifted_dephasing(x, 0, m);
  return out;
}

BipartiteOperator ando_2xN_apply(const BipartiteOperator& rho,
                                 const AndoParams& params,
                                 const ToleranceConfig& tol) {
  const Dims& d = rho.dims();
  require_qubit_alice(d, "ando_2xN");
  require_hermitian(rho, tol);
  if (params.k < -1 || params.k > d.n - 1) {
    throw Error(ErrorCode::InvalidParameter,
                "k = " + std::to_string(params.k) + " outside [-1, N-1]");
  }
  // N - k - 1 equals N at k = -1, where the S_A sum is empty.
  BipartiteOperator out =
      static_cast<double>(d.n - params.k - 1) * dephase_diagonal(rho);
  out += bob_shift_twirl(rho);
  for (int m = 0; m <= params.k; ++m) out += shifted_dephasing(rho, 1, m);
  out += params.alpha * rho;
  return out;
}

Interval ando_2xN_interval(int k, int n) {
  if (n < 2 || k < -1 || k > n - 1) {
    throw Error(ErrorCode::InvalidParameter,
                "ando interval: need N >= 2 and -1 <= k <= N-1");
  }
  const double nn = n;
  if (k == -1) return {-2.0 * nn / (3.0 * nn - 1.0), 1.0};
  if (k == n - 1) return {-1.0, 2.0};
  return {-(2.0 * nn - k - 1.0) / (3.0 * nn - 2.0), 1.0};
}

Interval ando_2xN_conjectured_interval() { return {-1.0, 1.0}; }

RegionVerdict ando_2xN_region(const AndoParams& params, int n) {
  return interval_region(ando_2xN_interval(params.k, n), params.alpha);
}

RegionVerdict ando_2xN_conjectured_region(double alpha) {
  return interval_region(ando_2xN_conjectured_interval(), alpha, false);
}

BipartiteOperator ando_2xN_invert(const BipartiteOperator& sigma, double alpha,
                                  const ToleranceConfig& tol) {
  require_qubit_alice(sigma.dims(), "ando_2xN_invert");
  require_hermitian(sigma, tol);
  const double n = sigma.dims().n;
  require_nonsingular(alpha, tol, "alpha");
  require_nonsingular(n + alpha, tol, "N + alpha");
  require_nonsingular(2.0 * n + alpha, tol, "2N + alpha");
  BipartiteOperator out = sigma - (n / (n + alpha)) * dephase_diagonal(sigma);
  out -= (alpha / ((n + alpha) * (2.0 * n + alpha))) * bob_shift_twirl(sigma);
  return (1.0 / alpha) * out;
}

BipartiteOperator ando_MxN_apply(const BipartiteOperator& rho, double alpha,
                                 const ToleranceConfig& tol) {
  require_hermitian(rho, tol);
  const Dims& d = rho.dims();
  BipartiteOperator out =
      static_cast<double>((d.m - 1) * d.n) * dephase_diagonal(rho);
  out += bob_shift_twirl(rho);
  out += alpha * rho;
  return out;
}

Interval ando_MxN_interval() { return {-0.5, 0.5}; }

RegionVerdict ando_MxN_region(double alpha) {
  return interval_region(ando_MxN_interval(), alpha);
}

BipartiteOperator ando_MxN_k_apply(const BipartiteOperator& rho, int k,
                                   double alpha, const ToleranceConfig& tol) {
  require_hermitian(rho, tol);
  const Dims& d = rho.dims();
  if (k < 0 || k > d.n - 1) {
    throw Error(ErrorCode::InvalidParameter,
                "k = " + std::to_string(k) + " outside [0, N-1]");
  }
  BipartiteOperator out = static_cast<double>(d.n - 1) * dephase_diagonal(rho);
  for (int i = 0; i <= d.m - 2; ++i) {
    for (int j = 0; j < d.n; ++j) out += shifted_dephasing(rho, i, j);
  }
  for (int j = 0; j <= k; ++j) out += shifted_dephasing(rho, d.m - 1, j);
  out += alpha * rho;
  return out;
}

Interval ando_MxN_k0_interval(Dims dims) {
  const double m = dims.m;
  const double n = dims.n;
  const double lower = -(2.0 * n - 1.0) / (n + (n + 2.0) * (m - 1.0));
  return {std::max(lower, -0.5), 0.5};
}

RegionVerdict ando_MxN_k_region(int k, double alpha, Dims dims) {
  if (k != 0) {
    RegionVerdict v;
    v.inside = false;
    v.proven = false;
    v.slack = -std::numeric_limits<double>::infinity();
    v.binding_constraint = "no proven region for k != 0";
    return v;
  }
  return interval_region(ando_MxN_k0_interval(dims), alpha);
}

BipartiteOperator phi_alpha(const BipartiteOperator& x, double alpha,
                            const ToleranceConfig& tol) {
  require_qubit_alice(x.dims(), "phi_alpha");
  require_hermitian(x, tol);
  const int n = x.dims().n;
  const Matrix& m = x.matrix();
  const Matrix x12 = m.block(0, n, n, n);
  const Matrix id = Matrix::Identity(n, n);
  const Matrix b = x12 + x12.adjoint().trace() * id - x12.adjoint();

  Matrix out(2 * n, 2 * n);
  out.block(0, 0, n, n) = m.block(0, 0, n, n).trace() * id;
  out.block(n, n, n, n) = m.block(n, n, n, n).trace() * id;
  out.block(0, n, n, n) = alpha * b;
  out.block(n, 0, n, n) = alpha * b.adjoint();
  return {x.dims(), std::move(out)};
}

BipartiteOperator psi_alpha(const BipartiteOperator& x, double alpha,
                            const ToleranceConfig& tol) {
  return psi_alpha(x, alpha, breuer_hall_unitary(2 * x.dims().n), tol);
}

BipartiteOperator psi_alpha(const BipartiteOperator& x, double alpha,
                            const Matrix& u, const ToleranceConfig& tol) {
  if (x.dims().m != 4) {
    throw Error(ErrorCode::WrongDims,
                "psi_alpha needs M = 4, got M = " + std::to_string(x.dims().m));
  }
  require_hermitian(x, tol);
  const int h = 2 * x.dims().n;
  if (u.rows() != h) {
    throw Error(ErrorCode::DimensionMismatch, "psi_alpha: U must be 2N x 2N");
  }
  validate_antisymmetric_unitary(u);
  const Matrix& m = x.matrix();
  const Matrix x12 = m.block(0, h, h, h);
  const Matrix c = x12 + u * x12.conjugate() * u.adjoint();
  const Matrix id = Matrix::Identity(h, h);

  Matrix out(2 * h, 2 * h);
  out.block(0, 0, h, h) = m.block(0, 0, h, h).trace() * id;
  out.block(h, h, h, h) = m.block(h, h, h, h).trace() * id;
  out.block(0, h, h, h) = alpha * c;
  out.block(h, 0, h, h) = alpha * c.adjoint();
  return {x.dims(), std::move(out)};
}

PrewitnessImage prewitness_image(const BipartiteOperator& p_op,
                                 const BipartiteOperator& q_op,
                                 const FourParams& p, const ToleranceConfig& tol) {
  if (!(p_op.dims() == q_op.dims())) {
    throw Error(ErrorCode::DimensionMismatch, "prewitness: P and Q dims differ");
  }
  if (const auto r = psd_check(p_op, tol); !r.holds) {
    throw Error(ErrorCode::NotPSD, "P has eigenvalue " + std::to_string(r.margin));
  }
  if (const auto r = psd_check(q_op, tol); !r.holds) {
    throw Error(ErrorCode::NotPSD, "Q has eigenvalue " + std::to_string(r.margin));
  }
  const BipartiteOperator w = p_op + partial_transpose(q_op, Subsystem::A);
  return {four_param_apply(w, p, tol), four_param_region(p, p_op.dims())};
}

}  // namespace sepmaps
