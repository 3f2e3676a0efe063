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

#include "sepmaps/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>

namespace sepmaps {

namespace {

void require_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw Error(ErrorCode::InvalidParameter,
                std::string(name) + " = " + std::to_string(v) +
                    " outside [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
}

Vector basis(Dims dims, int i, int j) {
  Vector v = Vector::Zero(dims.total());
  v(dims.index(i, j)) = 1.0;
  return v;
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t index) {
  std::uint64_t z = master.value + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {z ^ (z >> 31)};
}

Vector Rng::gaussian_vector(int size) {
  Vector v(size);
  for (int i = 0; i < size; ++i) {
    const double re = normal();
    const double im = normal();
    v(i) = Complex(re, im);
  }
  return v;
}

Matrix Rng::gaussian_matrix(int rows, int cols) {
  Matrix g(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      const double re = normal();
      const double im = normal();
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

Vector Rng::pure_vector(Dims dims) {
  Vector v = gaussian_vector(dims.total());
  return v / v.norm();
}

BipartiteOperator Rng::pure(Dims dims) {
  return BipartiteOperator::projector(dims, pure_vector(dims));
}

BipartiteOperator Rng::density(Dims dims) {
  const Matrix g = gaussian_matrix(dims.total(), dims.total());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {dims, std::move(rho)};
}

BipartiteOperator Rng::hermitian(Dims dims) {
  const Matrix g = gaussian_matrix(dims.total(), dims.total());
  return {dims, 0.5 * (g + g.adjoint())};
}

Matrix Rng::unitary(int d) {
  const Matrix g = gaussian_matrix(d, d);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(i) *= diag / mag;
  }
  return q;
}

SchmidtVector::SchmidtVector(std::vector<double> coeffs, Dims dims)
    : coeffs_(std::move(coeffs)), dims_(dims) {
  if (coeffs_.empty() ||
      static_cast<int>(coeffs_.size()) > std::min(dims_.m, dims_.n)) {
    throw Error(ErrorCode::InvalidParameter,
                "Schmidt vector length must be in [1, min(M, N)]");
  }
  double norm2 = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] < 0.0 || (k > 0 && coeffs_[k] > coeffs_[k - 1])) {
      throw Error(ErrorCode::InvalidParameter,
                  "Schmidt coefficients must be nonnegative and descending");
    }
    norm2 += coeffs_[k] * coeffs_[k];
  }
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidParameter,
                "Schmidt coefficients not normalized: sum of squares = " +
                    std::to_string(norm2));
  }
}

Vector schmidt_vector_state(const SchmidtVector& sv) {
  const Dims& dims = sv.dims();
  Vector psi = Vector::Zero(dims.total());
  for (std::size_t k = 0; k < sv.coeffs().size(); ++k) {
    const int kk = static_cast<int>(k);
    psi(dims.index(kk, kk)) = sv.coeffs()[k];
  }
  return psi;
}

BipartiteOperator schmidt_pure(const SchmidtVector& sv) {
  return BipartiteOperator::projector(sv.dims(), schmidt_vector_state(sv));
}

Vector maximally_entangled_vector(int d) {
  if (d < 2) {
    throw Error(ErrorCode::InvalidParameter, "maximally_entangled: d >= 2");
  }
  const Dims dims(d, d);
  Vector v = Vector::Zero(dims.total());
  for (int k = 0; k < d; ++k) v(dims.index(k, k)) = 1.0 / std::sqrt(d);
  return v;
}

BipartiteOperator maximally_entangled(int d) {
  return BipartiteOperator::projector(Dims(d, d), maximally_entangled_vector(d));
}

BipartiteOperator horodecki_2x4(double a) {
  require_range(a, 0.0, 1.0, "a");
  const Dims dims(2, 4);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  Matrix ent = Matrix::Zero(8, 8);
  for (int i = 1; i <= 3; ++i) {
    const Vector psi = inv_sqrt2 * (basis(dims, 0, i - 1) + basis(dims, 1, i));
    ent += (2.0 / 7.0) * psi * psi.adjoint();
  }
  const Vector e03 = basis(dims, 0, 3);
  ent += (1.0 / 7.0) * e03 * e03.adjoint();

  // Standard construction: the second Bob component is |3>, which keeps the
  // state PPT on all of [0, 1].
  const Vector phi = std::sqrt((1.0 + a) / 2.0) * basis(dims, 1, 0) +
                     std::sqrt((1.0 - a) / 2.0) * basis(dims, 1, 3);

  const double w = 7.0 * a / (7.0 * a + 1.0);
  Matrix rho = w * ent + (1.0 / (7.0 * a + 1.0)) * phi * phi.adjoint();
  return {dims, std::move(rho)};
}

BipartiteOperator horodecki_smoothed(double a, double p) {
  require_range(p, 0.0, 1.0, "p");
  const BipartiteOperator rho = horodecki_2x4(a);
  return p * rho + ((1.0 - p) / 8.0) * BipartiteOperator::identity(rho.dims());
}

BipartiteOperator three_by_three_family(double beta) {
  require_range(beta, 0.0, 5.0, "beta");
  const Dims dims(3, 3);
  const Vector phi = maximally_entangled_vector(3);
  Matrix rho = (2.0 / 7.0) * phi * phi.adjoint();
  for (int i = 0; i < 3; ++i) {
    const int plus = dims.index(i, (i + 1) % 3);   // |01>, |12>, |20>
    const int minus = dims.index((i + 1) % 3, i);  // |10>, |21>, |02>
    rho(plus, plus) += beta / 21.0;
    rho(minus, minus) += (5.0 - beta) / 21.0;
  }
  return {dims, std::move(rho)};
}

BipartiteOperator random_pure(Dims dims, Seed seed) {
  return Rng(seed).pure(dims);
}

BipartiteOperator random_density(Dims dims, Seed seed) {
  return Rng(seed).density(dims);
}

BipartiteOperator random_hermitian(Dims dims, Seed seed) {
  return Rng(seed).hermitian(dims);
}

double purity(const BipartiteOperator& rho) {
  const double tr = trace(rho).real();
  if (tr == 0.0) {
    throw Error(ErrorCode::InvalidParameter, "purity of zero-trace operator");
  }
  const Matrix r = rho.matrix() / tr;
  return (r * r).trace().real();
}

}  // namespace sepmaps
