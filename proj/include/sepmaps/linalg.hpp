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

// Dense complex linear algebra on operators acting on C^M (x) C^N.
//
// Row/column index of the product basis vector |i>_A (x) |j>_B is i*n + j
// (Alice-major). Every partial operation in the library is defined against
// this ordering.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sepmaps/error.hpp"

namespace sepmaps {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Dims {
  int m = 1;  // Alice
  int n = 1;  // Bob

  Dims() = default;
  Dims(int m_, int n_);

  int total() const { return m * n; }
  int index(int i, int j) const { return i * n + j; }

  friend bool operator==(const Dims&, const Dims&) = default;
};

struct ToleranceConfig {
  double psd_tol = 1e-9;   // relative to max(1, ||X||_op)
  double herm_tol = 1e-10; // absolute, on ||X - X^dag||_max
  double inverse_singularity_tol = 1e-12;

  void validate() const;
};

enum class Subsystem { A, B };

/// Square complex matrix tagged with its bipartite factor dimensions.
class BipartiteOperator {
 public:
  BipartiteOperator() = default;
  BipartiteOperator(Dims dims, Matrix matrix);

  static BipartiteOperator identity(Dims dims);
  static BipartiteOperator zero(Dims dims);
  /// |v><v| for a vector of length m*n.
  static BipartiteOperator projector(Dims dims, const Vector& v);

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }
  int size() const { return dims_.total(); }

  Complex operator()(int row, int col) const { return matrix_(row, col); }

  BipartiteOperator& operator+=(const BipartiteOperator& rhs);
  BipartiteOperator& operator-=(const BipartiteOperator& rhs);
  BipartiteOperator& operator*=(Complex s);

 private:
  Dims dims_;
  Matrix matrix_ = Matrix::Zero(1, 1);
};

BipartiteOperator operator+(BipartiteOperator lhs, const BipartiteOperator& rhs);
BipartiteOperator operator-(BipartiteOperator lhs, const BipartiteOperator& rhs);
BipartiteOperator operator*(Complex s, BipartiteOperator x);
BipartiteOperator operator*(BipartiteOperator x, Complex s);
BipartiteOperator operator*(const BipartiteOperator& lhs, const BipartiteOperator& rhs);

BipartiteOperator adjoint(const BipartiteOperator& x);
BipartiteOperator conjugate(const BipartiteOperator& x);
BipartiteOperator transpose(const BipartiteOperator& x);
Complex trace(const BipartiteOperator& x);

/// Tensor product of an (M x M) and an (N x N) factor.
BipartiteOperator kron(const Matrix& a, const Matrix& b);

/// Conjugation U X U^dag with U acting on the full space.
BipartiteOperator conjugate_by(const Matrix& u, const BipartiteOperator& x);

BipartiteOperator partial_transpose(const BipartiteOperator& x, Subsystem s);
Matrix partial_trace(const BipartiteOperator& x, Subsystem traced);

/// Keeps only the diagonal in the computational product basis.
BipartiteOperator dephase_diagonal(const BipartiteOperator& x);

/// S|i> = |i+1 mod d>.
Matrix shift_unitary(int d);

/// Direct sum of d/2 blocks [[0,1],[-1,0]]. Antisymmetric and unitary, so
/// <e|V|e*> = 0 for every e.
Matrix breuer_hall_unitary(int d);

/// Checks V^T = -V and V^dag V = I; throws InvalidParameter otherwise.
void validate_antisymmetric_unitary(const Matrix& v, double tol = 1e-10);

double hermiticity_defect(const Matrix& x);
void require_hermitian(const BipartiteOperator& x, const ToleranceConfig& tol);

/// Ascending eigenvalues of (X + X^dag)/2. Throws NotHermitian.
std::vector<double> hermitian_spectrum(const BipartiteOperator& x,
                                       const ToleranceConfig& tol = {});
std::vector<double> hermitian_spectrum(const Matrix& x,
                                       const ToleranceConfig& tol = {});

struct PsdResult {
  bool holds = false;
  double margin = 0.0;  // minimum eigenvalue
};

/// holds <=> min eig >= -psd_tol * max(1, ||X||_op).
PsdResult psd_check(const BipartiteOperator& x, const ToleranceConfig& tol = {});
PsdResult psd_check(const Matrix& x, const ToleranceConfig& tol = {});

double operator_norm(const Matrix& x);
double operator_norm(const BipartiteOperator& x);
double max_abs(const Matrix& x);

/// Throws Singular when the smallest singular value is below
/// inverse_singularity_tol * max(1, largest singular value).
Matrix matrix_inverse(const Matrix& x, const ToleranceConfig& tol = {});

}  // namespace sepmaps
