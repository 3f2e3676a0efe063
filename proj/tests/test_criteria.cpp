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

#include <cmath>
#include <functional>

#include "sepmaps/criteria.hpp"
#include "sepmaps/error.hpp"
#include "sepmaps/maps.hpp"
#include "sepmaps/oracle.hpp"
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

BipartiteOperator mixed(Dims dims) {
  return (1.0 / dims.total()) * BipartiteOperator::identity(dims);
}

BipartiteOperator rho_ap() { return horodecki_smoothed(0.03, 0.19); }

BipartiteOperator toward_identity(const BipartiteOperator& rho, double t) {
  const double tr = trace(rho).real();
  return ((1.0 - t) / tr) * rho + t * mixed(rho.dims());
}

// Random state with a random amount of white noise, so that every criterion
// sees both firing and non-firing inputs.
BipartiteOperator noisy_state(Rng& rng, Dims dims) {
  return toward_identity(rng.density(dims), rng.uniform());
}

BipartiteOperator embedded_phi_plus(Dims dims) {
  Vector v = Vector::Zero(dims.total());
  v(dims.index(0, 0)) = v(dims.index(1, 1)) = 1.0 / std::sqrt(2.0);
  return BipartiteOperator::projector(dims, v);
}

int count_fired(const CriterionReport& r) {
  int n = 0;
  for (const auto& v : r.verdicts) n += v.error.empty() && v.fired();
  return n;
}

}  // namespace

TEST_CASE("criterion1") {
  for (Dims d : {Dims(2, 2), Dims(2, 4), Dims(3, 3)}) {
    for (double a : {-1.0, -0.5, 1.0, 2.0}) {
      CHECK(criterion1(mixed(d), a).kind == VerdictKind::Separable);
    }
  }
  const Verdict v = criterion1(rho_ap(), 2.0);
  CHECK(v.kind == VerdictKind::Separable);
  // (sigma - Tr sigma I/10)/2 with sigma >= (1-p)/8 I: margin >= (0.10125 - 0.1)/2.
  CHECK(v.margin == doctest::Approx((min_eig(rho_ap().matrix()) - 0.1) / 2.0));
  CHECK(v.params == ParamList{{"alpha", 2.0}});
  CHECK(criterion1_alpha2(rho_ap()).kind == VerdictKind::Separable);

  for (double a : {-1.0, 1.0, 2.0}) {
    CHECK(criterion1(maximally_entangled(2), a).kind == VerdictKind::Inconclusive);
  }
  CHECK(criterion1_alpha_minus1(maximally_entangled(2)).kind == VerdictKind::Inconclusive);

  CHECK(code_of([] { criterion1(mixed(Dims(2, 2)), 2.5); }) == ErrorCode::RegionViolation);
  CHECK(code_of([] { criterion1(mixed(Dims(2, 2)), 0.0); }) == ErrorCode::SingularMap);
  CHECK(code_of([] { criterion1(-1.0 * mixed(Dims(2, 2)), 1.0); }) == ErrorCode::NotPSD);
}

TEST_CASE("criterion1 margin matches the explicit inverse") {
  Rng rng(Seed{41});
  for (int t = 0; t < 20; ++t) {
    const auto s = noisy_state(rng, Dims(2, 3));
    for (double a : {-1.0, 1.0, 2.0}) {
      const Matrix inv = (s.matrix() - Matrix::Identity(6, 6) / (6.0 + a)) / a;
      CHECK(criterion1(s, a).margin == doctest::Approx(min_eig(inv)).epsilon(1e-10));
    }
  }
}

TEST_CASE("criterion1 is monotone under mixing with the identity") {
  Rng rng(Seed{42});
  int fired = 0;
  for (int t = 0; t < 50; ++t) {
    const auto s = noisy_state(rng, Dims(2, 3));
    for (double a : {-1.0, 2.0}) {
      if (!criterion1(s, a).fired()) continue;
      ++fired;
      for (int i = 0; i <= 10; ++i) {
        CHECK(criterion1(toward_identity(s, i / 10.0), a).fired());
      }
    }
  }
  CHECK(fired > 5);
}

TEST_CASE("criterion2") {
  Rng rng(Seed{43});
  for (int t = 0; t < 50; ++t) {
    const auto s = noisy_state(rng, Dims(2, 3));
    for (double a : {-1.0, 1.0, 2.0}) {
      const Verdict c1 = criterion1(s, a);
      const Verdict c2 = criterion2(s, a, 0.0);
      CHECK(c1.kind == c2.kind);
      CHECK(c1.margin == doctest::Approx(c2.margin).epsilon(1e-10));
    }
  }
  CHECK(criterion2(rho_ap(), 2.0, 0.0).kind == VerdictKind::Separable);
  CHECK(code_of([] { criterion2(mixed(Dims(2, 2)), 4.0, 0.9); }) == ErrorCode::RegionViolation);
  CHECK(code_of([] { criterion2(mixed(Dims(3, 3)), 1.0, 0.0); }) == ErrorCode::WrongDims);
}

TEST_CASE("criterion3") {
  Rng rng(Seed{44});
  for (int t = 0; t < 20; ++t) {
    const auto s = noisy_state(rng, Dims(2, 4));
    const Matrix st = kron(Matrix::Identity(2, 2), naive_trace_a(s.matrix(), 2, 4)).matrix() -
                      s.matrix();
    for (double p : {0.5, 2.0, 6.0}) {
      const double c = (1.0 + p / 2.0) / (8.0 + 1.5 * p - 1.0);
      const Matrix a = p * s.matrix() - (p / 2.0 - 1.0) * st - c * Matrix::Identity(8, 8);
      const Matrix b = p * st - (p / 2.0 - 1.0) * s.matrix() - c * Matrix::Identity(8, 8);
      CHECK(criterion3(s, p, Branch::A).margin == doctest::Approx(min_eig(a)).epsilon(1e-10));
      CHECK(criterion3(s, p, Branch::B).margin == doctest::Approx(min_eig(b)).epsilon(1e-10));
    }
    // On the boundary at alpha = 2 (beta = 0) branch A is criterion1 at alpha = 2.
    CHECK(criterion3(s, 2.0, Branch::A).kind == criterion1(s, 2.0).kind);
    // Below 2/3 the image has negative trace and cannot be PSD.
    CHECK_FALSE(criterion3_both(s, 0.0).fired());
    CHECK_FALSE(criterion3_both(s, 0.6).fired());
  }
  CHECK_FALSE(criterion3_both(mixed(Dims(2, 2)), 0.0).fired());
  CHECK(code_of([] { criterion3(mixed(Dims(2, 2)), -1.0, Branch::A); }) ==
        ErrorCode::RegionViolation);
}

TEST_CASE("criterion4") {
  for (int n : {2, 3, 4}) {
    const Verdict v = criterion4(mixed(Dims(2, n)));
    CHECK(v.kind == VerdictKind::Separable);
    // (3 sigma - I (x) sigma_B)/2 = I/(4N) on the maximally mixed state.
    CHECK(v.margin == doctest::Approx(1.0 / (4.0 * n)));
  }
  CHECK_FALSE(criterion4(rho_ap()).fired());
  // Strict: a zero-margin image does not fire. sigma = |00><00| + |10><10|/2
  // gives sigma - sigma~_A/2 = |00><00|*(1 - 1/4) + |10><10|*(1/2 - 1/2).
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(2, 2) = 0.5;
  const BipartiteOperator edge(Dims(2, 2), m);
  const Verdict e = criterion4(edge);
  CHECK(std::abs(e.margin) <= 1e-15);
  CHECK(e.kind == VerdictKind::Inconclusive);
}

TEST_CASE("criterion5") {
  CHECK(criterion5(BipartiteOperator::identity(Dims(2, 3)), 0.5).kind == VerdictKind::Separable);
  Rng rng(Seed{45});
  for (int n : {2, 3, 4}) {
    const auto img = ando_2xN_apply(rng.density(Dims(2, n)), {-1, 0.5});
    CHECK(criterion5(img, 0.5).kind == VerdictKind::Separable);
  }
  const auto phi = embedded_phi_plus(Dims(2, 4));
  for (double a : {-0.5, 0.5, 1.0}) {
    CHECK(criterion5(phi, a).kind == VerdictKind::Inconclusive);
  }
  CHECK(code_of([] { criterion5(mixed(Dims(2, 3)), -0.76); }) == ErrorCode::RegionViolation);
  CHECK_NOTHROW(criterion5(mixed(Dims(2, 3)), -0.75));
}

TEST_CASE("Kraus-type criteria") {
  for (int n : {2, 3}) {
    CHECK(karnas_equal_pt(mixed(Dims(2, n))).kind == VerdictKind::Separable);
    CHECK(karnas_norm(mixed(Dims(2, n))).kind == VerdictKind::Separable);
  }
  Rng rng(Seed{46});
  for (int t = 0; t < 10; ++t) {
    BipartiteOperator sigma;
    for (double mix = 0.0; mix <= 1.0; mix += 0.05) {
      const auto rho = toward_identity(rng.density(Dims(2, 3)), mix);
      sigma = 0.5 * (rho + partial_transpose(rho, Subsystem::A));
      if (min_eig(sigma.matrix()) >= 0.0) break;
    }
    CHECK(karnas_equal_pt(sigma).kind == VerdictKind::Separable);
  }
  CHECK_FALSE(karnas_equal_pt(maximally_entangled(2)).fired());

  // Phi+: P = sigma + sigma^{T_A} has spectrum {3/2, 1/2, 1/2, -1/2} and
  // ||Q|| = 1/2, so ||P^-1|| ||Q|| = 1 but P is indefinite.
  const Verdict norm = karnas_norm(maximally_entangled(2));
  CHECK(norm.kind == VerdictKind::Inconclusive);
  CHECK(std::abs(norm.margin) <= 1e-12);
  CHECK(norm.params.front().second == doctest::Approx(-0.5));

  Matrix prod = Matrix::Zero(4, 4);
  prod(0, 0) = 1.0;
  CHECK(code_of([&] { karnas_norm(BipartiteOperator(Dims(2, 2), prod)); }) ==
        ErrorCode::Singular);
}

TEST_CASE("purity ball and PPT") {
  for (Dims d : {Dims(2, 2), Dims(2, 4), Dims(3, 3)}) {
    const Verdict v = purity_ball(mixed(d));
    CHECK(v.kind == VerdictKind::Separable);
    CHECK(v.margin == doctest::Approx(1.0 / (d.total() - 1.0) - 1.0 / d.total()));
  }
  CHECK_FALSE(purity_ball(rho_ap()).fired());
  CHECK_FALSE(purity_ball(random_pure(Dims(2, 3), Seed{1})).fired());

  CHECK(ppt_necessary(three_by_three_family(0.1)).kind == VerdictKind::EntangledNPT);
  CHECK(ppt_necessary(three_by_three_family(2.5)).kind == VerdictKind::Inconclusive);
  CHECK(ppt_necessary(toward_identity(maximally_entangled(2), 0.8)).kind ==
        VerdictKind::Separable);
  CHECK(ppt_necessary(toward_identity(maximally_entangled(2), 0.5)).kind ==
        VerdictKind::EntangledNPT);
  CHECK(ppt_is_exact(Dims(2, 2)));
  CHECK(ppt_is_exact(Dims(2, 3)));
  CHECK(ppt_is_exact(Dims(3, 2)));
  CHECK_FALSE(ppt_is_exact(Dims(2, 4)));
  CHECK_FALSE(ppt_is_exact(Dims(3, 3)));
  CHECK(ppt_necessary(horodecki_2x4(0.5)).kind == VerdictKind::Inconclusive);
}

TEST_CASE("Schmidt-number bound") {
  CHECK(schmidt_alpha_upper(2, 1) == 2.0);
  CHECK(schmidt_alpha_upper(3, 2) == 10.0);
  CHECK(code_of([] { schmidt_alpha_upper(3, 3); }) == ErrorCode::InvalidParameter);

  Rng rng(Seed{47});
  for (int t = 0; t < 30; ++t) {
    const auto s = noisy_state(rng, Dims(2, 2));
    for (double a : {-1.0, 1.0, 2.0}) {
      CHECK(schmidt_bound_criterion(s, 1, a).kind == criterion1(s, a).kind);
    }
  }

  const Vector phi = maximally_entangled_vector(3);
  const BipartiteOperator sigma(Dims(3, 3), Matrix::Identity(9, 9) + 10.0 * phi * phi.adjoint());
  const Verdict v = schmidt_bound_criterion(sigma, 2, 10.0);
  CHECK(v.kind == VerdictKind::SchmidtNumberAtMost);
  CHECK(v.schmidt_n == 2);

  // Monotone in n at fixed alpha.
  for (int t = 0; t < 30; ++t) {
    const auto s = noisy_state(rng, Dims(4, 4));
    for (double a : {-1.0, 1.0, 2.0}) {
      bool prev = false;
      for (int n = 1; n <= 3; ++n) {
        const bool now = schmidt_bound_criterion(s, n, a).fired();
        if (prev) CHECK(now);
        prev = now;
      }
    }
  }
  CHECK(code_of([] { schmidt_bound_criterion(mixed(Dims(2, 3)), 1, 1.0); }) ==
        ErrorCode::WrongDims);
  CHECK(code_of([&] { schmidt_bound_criterion(sigma, 2, 10.5); }) ==
        ErrorCode::RegionViolation);
}

TEST_CASE("aggregate_report") {
  const CriterionReport mm = aggregate_report(mixed(Dims(2, 4)));
  CHECK(mm.summary == VerdictKind::Separable);
  CHECK(count_fired(mm) >= 3);
  CHECK_FALSE(mm.conflict);
  CHECK(mm.digest.trace == doctest::Approx(1.0));
  CHECK(mm.digest.purity == doctest::Approx(1.0 / 8.0));

  CHECK(aggregate_report(three_by_three_family(0.1)).summary == VerdictKind::EntangledNPT);

  const CriterionReport bound = aggregate_report(horodecki_2x4(0.5));
  CHECK(bound.summary == VerdictKind::Inconclusive);
  CHECK_FALSE(bound.conflict);

  // Qubit-only criteria are not run at 3x3; Schmidt bounds are.
  const CriterionReport r33 = aggregate_report(mixed(Dims(3, 3)));
  for (const auto& v : r33.verdicts) {
    CHECK(v.criterion != "criterion2");
    CHECK(v.criterion != "karnas_norm");
  }
  bool has_schmidt = false;
  for (const auto& v : r33.verdicts) has_schmidt |= v.criterion == "schmidt_bound";
  CHECK(has_schmidt);

  // Selection and per-criterion errors.
  ReportConfig only;
  only.selected = {"criterion1"};
  only.criterion1_alphas = {2.0, 3.0};
  const CriterionReport sel = aggregate_report(mixed(Dims(2, 2)), only);
  REQUIRE(sel.verdicts.size() == 2);
  CHECK(sel.verdicts[0].error.empty());
  CHECK(sel.verdicts[1].error.find("RegionViolation") != std::string::npos);

  ReportConfig bogus;
  bogus.selected = {"nope"};
  CHECK(code_of([&] { aggregate_report(mixed(Dims(2, 2)), bogus); }) ==
        ErrorCode::InvalidParameter);
  CHECK(code_of([] { aggregate_report(-1.0 * mixed(Dims(2, 2))); }) == ErrorCode::NotPSD);
}

TEST_CASE("aggregate_report surfaces tolerance conflicts") {
  // A huge herm_tol lets the equal-PT test accept Phi+, which PPT rejects.
  ReportConfig cfg;
  cfg.tol.herm_tol = 1.0;
  const CriterionReport r = aggregate_report(maximally_entangled(2), cfg);
  CHECK(r.conflict);
  CHECK(r.summary == VerdictKind::Inconclusive);
  CHECK(r.conflict_detail.find("ToleranceConflict") != std::string::npos);
}

TEST_CASE("reports never mix Separable and EntangledNPT") {
  Rng rng(Seed{48});
  for (Dims d : {Dims(2, 2), Dims(2, 3), Dims(2, 4), Dims(3, 3)}) {
    for (int t = 0; t < 40; ++t) {
      const auto s = noisy_state(rng, d);
      const CriterionReport r = aggregate_report(s);
      CHECK_FALSE(r.conflict);
      if (ppt_is_exact(d) && r.summary != VerdictKind::Inconclusive) {
        const bool sep = exact_sep_small(s) == ExactVerdict::Separable;
        CHECK(sep == (r.summary == VerdictKind::Separable));
      }
    }
  }
}
