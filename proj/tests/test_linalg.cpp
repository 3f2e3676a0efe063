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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "sepmaps/error.hpp"
#include "sepmaps/linalg.hpp"
#include "sepmaps/maps.hpp"
#include "sepmaps/states.hpp"
#include "test_util.hpp"

using namespace sepmaps;
using namespace sepmaps::testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected sepmaps::Error");
  return ErrorCode::Parse;
}

BipartiteOperator random_matrix(Dims dims, std::uint64_t seed) {
  Rng rng(Seed{seed});
  return BipartiteOperator(dims, rng.gaussian_matrix(dims.total(), dims.total()));
}

}  // namespace

TEST_CASE("basic algebra") {
  CHECK(trace(BipartiteOperator::identity(Dims(2, 3))).real() == 6.0);
  CHECK(kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)).matrix().isIdentity());

  const BipartiteOperator x = random_matrix(Dims(2, 3), 1);
  CHECK(max_diff(adjoint(adjoint(x)).matrix(), x.matrix()) == 0.0);
  CHECK(max_diff(transpose(x).matrix(), x.matrix().transpose()) == 0.0);
  CHECK(max_diff(conjugate(x).matrix(), x.matrix().conjugate()) == 0.0);

  const BipartiteOperator y = random_matrix(Dims(2, 3), 2);
  CHECK(max_diff((x + y).matrix(), x.matrix() + y.matrix()) == 0.0);
  CHECK(max_diff((x - y).matrix(), x.matrix() - y.matrix()) == 0.0);
  CHECK(max_diff((x * y).matrix(), x.matrix() * y.matrix()) < 1e-14);
  CHECK(max_diff((Complex(0, 2) * x).matrix(), Complex(0, 2) * x.matrix()) == 0.0);

  CHECK(code_of([&] { (void)(x + random_matrix(Dims(3, 2), 3)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { BipartiteOperator(Dims(2, 2), Matrix::Identity(3, 3)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { Dims(0, 2); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("kron matches the A-major index convention") {
  Rng rng(Seed{4});
  const Matrix a = rng.gaussian_matrix(2, 2);
  const Matrix b = rng.gaussian_matrix(3, 3);
  const Matrix k = kron(a, b).matrix();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 3; ++q) CHECK(k(i * 3 + j, p * 3 + q) == a(i, p) * b(j, q));
}

TEST_CASE("partial transpose") {
  CHECK(partial_transpose(BipartiteOperator::identity(Dims(2, 3)), Subsystem::A)
            .matrix()
            .isIdentity());

  // |Phi+><Phi+|^{T_A} = SWAP/2 has eigenvalues {-1/2, 1/2, 1/2, 1/2}.
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const auto pt = partial_transpose(BipartiteOperator::projector(Dims(2, 2), phi), Subsystem::A);
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  CHECK(max_diff(pt.matrix(), 0.5 * swap) < 1e-15);
  CHECK(hermitian_spectrum(pt).front() == doctest::Approx(-0.5).epsilon(1e-14));

  for (Dims d : {Dims(2, 2), Dims(2, 3), Dims(3, 2), Dims(3, 4)}) {
    const BipartiteOperator x = random_matrix(d, 10 + d.m * 10 + d.n);
    const auto ta = partial_transpose(x, Subsystem::A);
    const auto tb = partial_transpose(x, Subsystem::B);
    CHECK(max_diff(ta.matrix(), naive_pt_a(x.matrix(), d.m, d.n)) == 0.0);
    CHECK(max_diff(tb.matrix(), naive_pt_b(x.matrix(), d.m, d.n)) == 0.0);
    CHECK(max_diff(partial_transpose(ta, Subsystem::A).matrix(), x.matrix()) == 0.0);
    CHECK(max_diff(partial_transpose(ta, Subsystem::B).matrix(), x.matrix().transpose()) ==
          0.0);
  }
}

TEST_CASE("partial trace") {
  CHECK(partial_trace(BipartiteOperator::identity(Dims(2, 4)), Subsystem::A)
            .isApprox(2.0 * Matrix::Identity(4, 4)));
  const Matrix marginal = partial_trace(maximally_entangled(2), Subsystem::A);
  CHECK(max_diff(marginal, 0.5 * Matrix::Identity(2, 2)) < 1e-15);

  Rng rng(Seed{5});
  const Matrix rho = rng.density(Dims(1, 2)).matrix();
  const Matrix sigma = 3.0 * rng.density(Dims(1, 3)).matrix();
  const BipartiteOperator prod = kron(rho, sigma);
  CHECK(max_diff(partial_trace(prod, Subsystem::B), sigma.trace() * rho) < 1e-14);
  CHECK(max_diff(partial_trace(prod, Subsystem::A), rho.trace() * sigma) < 1e-14);

  const BipartiteOperator x = random_matrix(Dims(3, 2), 6);
  CHECK(max_diff(partial_trace(x, Subsystem::A), naive_trace_a(x.matrix(), 3, 2)) < 1e-14);
  CHECK(max_diff(partial_trace(x, Subsystem::B), naive_trace_b(x.matrix(), 3, 2)) < 1e-14);
}

TEST_CASE("dephase_diagonal") {
  const BipartiteOperator ones(Dims(2, 2), Matrix::Ones(4, 4));
  CHECK(dephase_diagonal(ones).matrix().isIdentity());
  const BipartiteOperator x = random_matrix(Dims(2, 3), 7);
  const auto d = dephase_diagonal(x);
  CHECK(max_diff(dephase_diagonal(d).matrix(), d.matrix()) == 0.0);
  CHECK(std::abs(trace(d) - trace(x)) < 1e-12);
  CHECK(max_diff(d.matrix(), Matrix(x.matrix().diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("shift_unitary") {
  CHECK(shift_unitary(1).isApprox(Matrix::Identity(1, 1)));
  const Matrix s3 = shift_unitary(3);
  CHECK((s3 * s3 * s3).isApprox(Matrix::Identity(3, 3)));
  CHECK(max_diff(shift_unitary(4) * basis(4, 2), basis(4, 3)) == 0.0);
  CHECK(max_diff(shift_unitary(4) * basis(4, 3), basis(4, 0)) == 0.0);
}

TEST_CASE("breuer_hall_unitary") {
  Matrix v2(2, 2);
  v2 << 0.0, 1.0, -1.0, 0.0;
  CHECK(breuer_hall_unitary(2) == v2);
  Vector e(2);
  e << 1.0, Complex(0, 1);
  e /= std::sqrt(2.0);
  CHECK(std::abs(e.dot(v2 * e.conjugate())) < 1e-15);

  const Matrix v4 = breuer_hall_unitary(4);
  CHECK((v4.transpose() + v4).cwiseAbs().maxCoeff() == 0.0);
  CHECK((v4.adjoint() * v4).isIdentity());

  Rng rng(Seed{8});
  const Matrix v6 = breuer_hall_unitary(6);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    Vector u = rng.gaussian_vector(6);
    u.normalize();
    worst = std::max(worst, std::abs(u.dot(v6 * u.conjugate())));
  }
  CHECK(worst <= 1e-12);

  CHECK(code_of([] { breuer_hall_unitary(3); }) == ErrorCode::OddDimension);
  CHECK_NOTHROW(validate_antisymmetric_unitary(v6));
  CHECK(code_of([] { validate_antisymmetric_unitary(Matrix::Identity(2, 2)); }) ==
        ErrorCode::InvalidParameter);
}

TEST_CASE("hermitian_spectrum and psd_check") {
  const auto id = hermitian_spectrum(BipartiteOperator::identity(Dims(2, 2)));
  CHECK(id == std::vector<double>{1, 1, 1, 1});

  const auto phi = hermitian_spectrum(maximally_entangled(2));
  CHECK(phi[0] == doctest::Approx(0.0).scale(1));
  CHECK(phi[2] == doctest::Approx(0.0).scale(1));
  CHECK(phi[3] == doctest::Approx(1.0));

  const auto beta2 = hermitian_spectrum(three_by_three_family(2.0));
  double sum = 0.0;
  for (double x : beta2) sum += x;
  CHECK(std::abs(sum - 1.0) <= 1e-12);

  const PsdResult ident = psd_check(BipartiteOperator::identity(Dims(2, 3)));
  CHECK(ident.holds);
  CHECK(ident.margin == doctest::Approx(1.0));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -0.5;
  const PsdResult neg = psd_check(d);
  CHECK_FALSE(neg.holds);
  CHECK(neg.margin == doctest::Approx(-0.5));

  CHECK(psd_check(partial_transpose(horodecki_2x4(0.3), Subsystem::A)).holds);

  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK(code_of([&] { hermitian_spectrum(nh); }) == ErrorCode::NotHermitian);
}

TEST_CASE("operator norm and inverse") {
  CHECK(operator_norm(Matrix(Matrix::Identity(6, 6))) == doctest::Approx(1.0));
  Rng rng(Seed{9});
  CHECK(operator_norm(Matrix(2.0 * rng.unitary(5))) == doctest::Approx(2.0));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const Matrix inv = matrix_inverse(d);
  CHECK(inv(0, 0).real() == doctest::Approx(0.5));
  CHECK(inv(1, 1).real() == doctest::Approx(0.25));
  CHECK(std::abs(inv(0, 1)) == 0.0);

  CHECK(code_of([] { matrix_inverse(Matrix(Matrix::Zero(3, 3))); }) == ErrorCode::Singular);
}

TEST_CASE("tilde_A identity and unitary invariance of spectra") {
  Rng rng(Seed{11});
  for (int n : {2, 4, 6}) {
    const Dims dims(2, n);
    const BipartiteOperator x = rng.hermitian(dims);
    // sigma_y X^{T_A} sigma_y = I_2 (x) Tr_A X - X.
    const Matrix sy = kron(sigma_y(), Matrix::Identity(n, n)).matrix();
    const Matrix by_def = sy * naive_pt_a(x.matrix(), 2, n) * sy;
    const Matrix formula =
        kron(Matrix::Identity(2, 2), naive_trace_a(x.matrix(), 2, n)).matrix() - x.matrix();
    CHECK(max_diff(by_def, formula) <= 1e-12);
    CHECK(max_diff(tilde_A(x).matrix(), formula) <= 1e-12);

    const Matrix u = kron(rng.unitary(2), rng.unitary(n)).matrix();
    const Eigen::VectorXd before = eigs(x.matrix());
    const Eigen::VectorXd after = eigs(u * x.matrix() * u.adjoint());
    CHECK((before - after).cwiseAbs().maxCoeff() <= 1e-12);
    const Matrix vv = kron(breuer_hall_unitary(2), breuer_hall_unitary(n)).matrix();
    CHECK((before - eigs(vv * x.matrix() * vv.adjoint())).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("tolerance config") {
  ToleranceConfig tol;
  CHECK(tol.psd_tol == 1e-9);
  CHECK(tol.herm_tol == 1e-10);
  tol.psd_tol = -1.0;
  CHECK(code_of([&] { tol.validate(); }) == ErrorCode::InvalidParameter);
}
