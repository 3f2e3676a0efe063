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

#include "sepmaps/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sepmaps {

namespace {

void require_same_dims(const BipartiteOperator& a, const BipartiteOperator& b,
                       const char* op) {
  if (!(a.dims() == b.dims())) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + ": dims (" + std::to_string(a.dims().m) +
                    "," + std::to_string(a.dims().n) + ") vs (" +
                    std::to_string(b.dims().m) + "," +
                    std::to_string(b.dims().n) + ")");
  }
}

}  // namespace

Dims::Dims(int m_, int n_) : m(m_), n(n_) {
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::InvalidParameter,
                "dims must be positive, got (" + std::to_string(m) + "," +
                    std::to_string(n) + ")");
  }
}

void ToleranceConfig::validate() const {
  if (!(psd_tol >= 0.0) || !(herm_tol >= 0.0) ||
      !(inverse_singularity_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "tolerances must be >= 0");
  }
}

BipartiteOperator::BipartiteOperator(Dims dims, Matrix matrix)
    : dims_(dims), matrix_(std::move(matrix)) {
  if (matrix_.rows() != dims_.total() || matrix_.cols() != dims_.total()) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix is " + std::to_string(matrix_.rows()) + "x" +
                    std::to_string(matrix_.cols()) + ", dims require " +
                    std::to_string(dims_.total()) + "x" +
                    std::to_string(dims_.total()));
  }
}

BipartiteOperator BipartiteOperator::identity(Dims dims) {
  return {dims, Matrix::Identity(dims.total(), dims.total())};
}

BipartiteOperator BipartiteOperator::zero(Dims dims) {
  return {dims, Matrix::Zero(dims.total(), dims.total())};
}

BipartiteOperator BipartiteOperator::projector(Dims dims, const Vector& v) {
  if (v.size() != dims.total()) {
    throw Error(ErrorCode::DimensionMismatch, "projector vector length");
  }
  return {dims, v * v.adjoint()};
}

BipartiteOperator& BipartiteOperator::operator+=(const BipartiteOperator& rhs) {
  require_same_dims(*this, rhs, "add");
  matrix_ += rhs.matrix_;
  return *this;
}

BipartiteOperator& BipartiteOperator::operator-=(const BipartiteOperator& rhs) {
  require_same_dims(*this, rhs, "subtract");
  matrix_ -= rhs.matrix_;
  return *this;
}

BipartiteOperator& BipartiteOperator::operator*=(Complex s) {
  matrix_ *= s;
  return *this;
}

BipartiteOperator operator+(BipartiteOperator lhs, const BipartiteOperator& rhs) {
  lhs += rhs;
  return lhs;
}

BipartiteOperator operator-(BipartiteOperator lhs, const BipartiteOperator& rhs) {
  lhs -= rhs;
  return lhs;
}

BipartiteOperator operator*(Complex s, BipartiteOperator x) {
  x *= s;
  return x;
}

BipartiteOperator operator*(BipartiteOperator x, Complex s) {
  x *= s;
  return x;
}

BipartiteOperator operator*(const BipartiteOperator& lhs,
                            const BipartiteOperator& rhs) {
  require_same_dims(lhs, rhs, "multiply");
  return {lhs.dims(), lhs.matrix() * rhs.matrix()};
}

BipartiteOperator adjoint(const BipartiteOperator& x) {
  return {x.dims(), x.matrix().adjoint()};
}

BipartiteOperator conjugate(const BipartiteOperator& x) {
  return {x.dims(), x.matrix().conjugate()};
}

BipartiteOperator transpose(const BipartiteOperator& x) {
  return {x.dims(), x.matrix().transpose()};
}

Complex trace(const BipartiteOperator& x) { return x.matrix().trace(); }

BipartiteOperator kron(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "kron factors must be square");
  }
  const Dims dims(static_cast<int>(a.rows()), static_cast<int>(b.rows()));
  Matrix out(dims.total(), dims.total());
  for (int i = 0; i < dims.m; ++i) {
    for (int k = 0; k < dims.m; ++k) {
      out.block(i * dims.n, k * dims.n, dims.n, dims.n) = a(i, k) * b;
    }
  }
  return {dims, std::move(out)};
}

BipartiteOperator conjugate_by(const Matrix& u, const BipartiteOperator& x) {
  if (u.rows() != x.size() || u.cols() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "conjugate_by: unitary size");
  }
  return {x.dims(), u * x.matrix() * u.adjoint()};
}

BipartiteOperator partial_transpose(const BipartiteOperator& x, Subsystem s) {
  const Dims& d = x.dims();
  Matrix out(d.total(), d.total());
  for (int i = 0; i < d.m; ++i) {
    for (int j = 0; j < d.n; ++j) {
      for (int k = 0; k < d.m; ++k) {
        for (int l = 0; l < d.n; ++l) {
          // <ij|X^{T_A}|kl> = <kj|X|il>,  <ij|X^{T_B}|kl> = <il|X|kj>
          const Complex v = s == Subsystem::A ? x(d.index(k, j), d.index(i, l))
                                              : x(d.index(i, l), d.index(k, j));
          out(d.index(i, j), d.index(k, l)) = v;
        }
      }
    }
  }
  return {d, std::move(out)};
}

Matrix partial_trace(const BipartiteOperator& x, Subsystem traced) {
  const Dims& d = x.dims();
  if (traced == Subsystem::A) {
    Matrix out = Matrix::Zero(d.n, d.n);
    for (int i = 0; i < d.m; ++i) {
      out += x.matrix().block(i * d.n, i * d.n, d.n, d.n);
    }
    return out;
  }
  Matrix out = Matrix::Zero(d.m, d.m);
  for (int i = 0; i < d.m; ++i) {
    for (int k = 0; k < d.m; ++k) {
      out(i, k) = x.matrix().block(i * d.n, k * d.n, d.n, d.n).trace();
    }
  }
  return out;
}

BipartiteOperator dephase_diagonal(const BipartiteOperator& x) {
  Matrix out = x.matrix().diagonal().asDiagonal();
  return {x.dims(), std::move(out)};
}

Matrix shift_unitary(int d) {
  if (d < 1) {
    throw Error(ErrorCode::InvalidParameter, "shift_unitary: d must be >= 1");
  }
  Matrix s = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) s((i + 1) % d, i) = 1.0;
  return s;
}

Matrix breuer_hall_unitary(int d) {
  if (d < 1 || d % 2 != 0) {
    throw Error(ErrorCode::OddDimension,
                "Breuer-Hall unitary needs even dimension, got " +
                    std::to_string(d));
  }
  Matrix v = Matrix::Zero(d, d);
  for (int j = 0; j < d / 2; ++j) {
    v(2 * j, 2 * j + 1) = 1.0;
    v(2 * j + 1, 2 * j) = -1.0;
  }
  return v;
}

void validate_antisymmetric_unitary(const Matrix& v, double tol) {
  if (v.rows() != v.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary must be square");
  }
  const Matrix id = Matrix::Identity(v.rows(), v.cols());
  if (max_abs(v.transpose() + v) > tol) {
    throw Error(ErrorCode::InvalidParameter, "V^T != -V");
  }
  if (max_abs(v.adjoint() * v - id) > tol) {
    throw Error(ErrorCode::InvalidParameter, "V is not unitary");
  }
}

double max_abs(const Matrix& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& x) { return max_abs(x - x.adjoint()); }

void require_hermitian(const BipartiteOperator& x, const ToleranceConfig& tol) {
  const double defect = hermiticity_defect(x.matrix());
  if (defect > tol.herm_tol) {
    throw Error(ErrorCode::NotHermitian,
                "||X - X^dag||_max = " + std::to_string(defect));
  }
}

std::vector<double> hermitian_spectrum(const Matrix& x,
                                       const ToleranceConfig& tol) {
  if (x.rows() != x.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "spectrum of non-square matrix");
  }
  const double defect = hermiticity_defect(x);
  if (defect > tol.herm_tol) {
    throw Error(ErrorCode::NotHermitian,
                "||X - X^dag||_max = " + std::to_string(defect));
  }
  const Matrix sym = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  // Eigen returns them ascending already.
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> hermitian_spectrum(const BipartiteOperator& x,
                                       const ToleranceConfig& tol) {
  return hermitian_spectrum(x.matrix(), tol);
}

PsdResult psd_check(const Matrix& x, const ToleranceConfig& tol) {
  const auto spectrum = hermitian_spectrum(x, tol);
  const double lo = spectrum.front();
  const double hi = std::max(std::abs(lo), std::abs(spectrum.back()));
  return {lo >= -tol.psd_tol * std::max(1.0, hi), lo};
}

PsdResult psd_check(const BipartiteOperator& x, const ToleranceConfig& tol) {
  return psd_check(x.matrix(), tol);
}

double operator_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

double operator_norm(const BipartiteOperator& x) {
  return operator_norm(x.matrix());
}

Matrix matrix_inverse(const Matrix& x, const ToleranceConfig& tol) {
  if (x.rows() != x.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  }
  Eigen::JacobiSVD<Matrix> svd(x);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smin <= tol.inverse_singularity_tol * std::max(1.0, smax)) {
    throw Error(ErrorCode::Singular,
                "smallest singular value " + std::to_string(smin));
  }
  return x.partialPivLu().inverse();
}

}  // namespace sepmaps
