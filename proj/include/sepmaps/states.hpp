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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sepmaps/linalg.hpp"

namespace sepmaps {

struct Seed {
  std::uint64_t value = 0;
};

/// Mixes a master seed with an index (splitmix64), so per-item streams are
/// independent of iteration order.
Seed derive_seed(Seed master, std::uint64_t index);

/// Explicitly seeded generator; there is no global random state.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Vector gaussian_vector(int size);
  Matrix gaussian_matrix(int rows, int cols);

  /// Haar-random unit vector on C^{m n}.
  Vector pure_vector(Dims dims);
  BipartiteOperator pure(Dims dims);
  /// Ginibre: G G^dag / Tr(G G^dag).
  BipartiteOperator density(Dims dims);
  /// Entries with independent standard Gaussian real and imaginary parts,
  /// then Hermitian-symmetrised.
  BipartiteOperator hermitian(Dims dims);
  /// Haar unitary via QR of a Ginibre matrix with phase fix.
  Matrix unitary(int d);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Coefficients lambda_0 >= lambda_1 >= ... >= 0 with sum of squares 1.
class SchmidtVector {
 public:
  SchmidtVector(std::vector<double> coeffs, Dims dims);

  const std::vector<double>& coeffs() const { return coeffs_; }
  const Dims& dims() const { return dims_; }

 private:
  std::vector<double> coeffs_;
  Dims dims_;
};

/// |Psi><Psi| with |Psi> = sum_k lambda_k |k>|k>.
BipartiteOperator schmidt_pure(const SchmidtVector& sv);
Vector schmidt_vector_state(const SchmidtVector& sv);

/// Projector onto (1/sqrt d) sum_k |kk> on (d, d).
BipartiteOperator maximally_entangled(int d);
Vector maximally_entangled_vector(int d);

/// Horodecki bound entangled state on C^2 (x) C^4, a in [0, 1].
BipartiteOperator horodecki_2x4(double a);

/// p * rho_a + (1 - p) I/8.
BipartiteOperator horodecki_smoothed(double a, double p);

/// 3x3 family (2/7)|Phi><Phi| + (beta/7) sigma_+ + ((5 - beta)/7) sigma_-,
/// beta in [0, 5].
BipartiteOperator three_by_three_family(double beta);

BipartiteOperator random_pure(Dims dims, Seed seed);
BipartiteOperator random_density(Dims dims, Seed seed);
BipartiteOperator random_hermitian(Dims dims, Seed seed);

double purity(const BipartiteOperator& rho);

}  // namespace sepmaps
