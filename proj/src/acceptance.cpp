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

#include "sepmaps/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "sepmaps/criteria.hpp"
#include "sepmaps/maps.hpp"
#include "sepmaps/oracle.hpp"
#include "sepmaps/states.hpp"

namespace sepmaps {

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double min_pt_eigenvalue(const BipartiteOperator& x) {
  return hermitian_spectrum(partial_transpose(x, Subsystem::A)).front();
}

BipartiteOperator normalized(const BipartiteOperator& x) {
  return (1.0 / trace(x).real()) * x;
}

// Finds the sign change of f on [lo, hi] (f(lo) and f(hi) of opposite
// predicate value) to width `width`.
double bisect(const std::function<bool(double)>& pred, double lo, double hi,
              double width) {
  const bool at_lo = pred(lo);
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) == at_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// -- 1 --------------------------------------------------------------------
Outcome check_roundtrips(Seed seed) {
  struct Case {
    RoundtripFamily family;
    Dims dims;
    std::vector<double> params;
  };
  const std::vector<Case> cases{
      {RoundtripFamily::Reduction, {2, 2}, {1.5}},
      {RoundtripFamily::Reduction, {2, 3}, {1.5}},
      {RoundtripFamily::Reduction, {2, 4}, {1.5}},
      {RoundtripFamily::Reduction, {3, 3}, {1.5}},
      {RoundtripFamily::Reduction, {3, 3}, {-0.7}},
      {RoundtripFamily::BH2, {2, 2}, {3.0, 0.5}},
      {RoundtripFamily::BH2, {2, 3}, {3.0, 0.5}},
      {RoundtripFamily::BH2, {2, 4}, {3.0, 0.5}},
      {RoundtripFamily::BH2, {2, 4}, {-0.5, 1.2}},
      {RoundtripFamily::Ando2xN, {2, 2}, {0.7}},
      {RoundtripFamily::Ando2xN, {2, 3}, {0.7}},
      {RoundtripFamily::Ando2xN, {2, 4}, {0.7}},
      {RoundtripFamily::Ando2xN, {2, 3}, {-0.74}},
  };
  double worst = 0.0;
  int failures = 0;
  std::string first_failure;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const RoundtripResult r = roundtrip_validator(c.family, c.dims, c.params, 100,
                                                  derive_seed(seed, i));
    worst = std::max(worst, r.max_error);
    if (r.status != RoundtripStatus::Pass) {
      ++failures;
      if (first_failure.empty()) {
        first_failure = fmt::format("; first failure {} ({},{}): {}", to_string(c.family),
                                    c.dims.m, c.dims.n, r.detail);
      }
    }
  }
  return {failures == 0, fmt::format("{} cases x 100 inputs, max relative error {:.2e} "
                                     "(limit 1e-10){}",
                                     cases.size(), worst, first_failure)};
}

// -- 2 --------------------------------------------------------------------
Outcome check_reduction_tightness(Seed seed) {
  ScanSpec spec;
  spec.family = ScanFamily::Reduction;
  spec.dims = Dims(2, 2);
  spec.axes = {Axis{-1.5, 2.5, 0.05}};
  spec.seed = seed;
  const auto results = region_boundary_scan(spec);

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : results) {
    if (r.empirically_separable()) {
      lo = std::min(lo, r.point[0]);
      hi = std::max(hi, r.point[0]);
    }
  }
  bool contiguous = true;
  for (const auto& r : results) {
    if (r.point[0] >= lo && r.point[0] <= hi && !r.empirically_separable()) {
      contiguous = false;
    }
  }
  const double step = 0.05 + 1e-9;
  const bool interval_ok = std::abs(lo + 1.0) <= step && std::abs(hi - 2.0) <= step;

  const BipartiteOperator phi = maximally_entangled(2);
  const double pt_205 = min_pt_eigenvalue(reduction_like_apply(phi, 2.05));
  const bool npt_ok = pt_205 < -ToleranceConfig{}.psd_tol;

  return {interval_ok && contiguous && npt_ok,
          fmt::format("empirical interval [{:g}, {:g}] (target [-1, 2] +/- 0.05), "
                      "contiguous={}, min PT eig at alpha=2.05: {:.4g}",
                      lo, hi, contiguous, pt_205)};
}

// -- 3 --------------------------------------------------------------------
Outcome check_bh2_region(Seed seed) {
  int inside = 0, contradictions = 0, conservative = 0, total = 0;
  double worst_inside = INFINITY;
  for (Dims dims : {Dims(2, 2), Dims(2, 3)}) {
    ScanSpec spec;
    spec.family = ScanFamily::BH2;
    spec.dims = dims;
    spec.axes = {Axis{-2.0, 4.0, 0.25}, Axis{-2.0, 4.0, 0.25}};
    spec.seed = derive_seed(seed, static_cast<std::uint64_t>(dims.n));
    for (const auto& r : region_boundary_scan(spec)) {
      ++total;
      const bool sep = r.empirically_separable();
      if (r.theorem_region.inside) {
        ++inside;
        worst_inside = std::min({worst_inside, r.worst_psd_margin, r.worst_ppt_margin});
        if (!sep) ++contradictions;
      } else if (sep) {
        ++conservative;
      }
    }
  }
  return {contradictions == 0 && inside > 0,
          fmt::format("{} grid points, {} inside the region, {} contradictions, "
                      "worst inside PSD/PPT margin {:.3g} (PPT is exact at these dims); "
                      "{} outside points also empirically separable",
                      total, inside, contradictions, worst_inside, conservative)};
}

// -- 4 --------------------------------------------------------------------
Outcome check_two_by_two_slices(Seed seed) {
  // Slice (alpha, 0, gamma, 0) and (0, beta, 0, delta).
  struct Slice {
    int free_a;
    int free_b;
    const char* name;
  };
  const Slice slices[2] = {{0, 2, "(alpha,0,gamma,0)"}, {1, 3, "(0,beta,0,delta)"}};
  const double step = 0.25;
  const Axis grid{-2.0, 4.0, step};
  const Axis fixed{0.0, 0.0, 0.0};

  int unexplained = 0, contradictions = 0, mismatches = 0, points = 0;
  for (int s = 0; s < 2; ++s) {
    ScanSpec spec;
    spec.family = ScanFamily::FourParam;
    spec.dims = Dims(2, 2);
    spec.axes = {fixed, fixed, fixed, fixed};
    spec.axes[static_cast<std::size_t>(slices[s].free_a)] = grid;
    spec.axes[static_cast<std::size_t>(slices[s].free_b)] = grid;
    spec.seed = derive_seed(seed, static_cast<std::uint64_t>(s));
    const auto results = region_boundary_scan(spec);

    std::map<std::pair<long, long>, const ScanResult*> by_cell;
    auto cell = [&](const ScanResult& r) {
      return std::make_pair(std::lround(r.point[slices[s].free_a] / step),
                            std::lround(r.point[slices[s].free_b] / step));
    };
    for (const auto& r : results) by_cell[cell(r)] = &r;

    for (const auto& r : results) {
      ++points;
      const bool theorem = r.theorem_region.inside;
      const bool empirical = r.empirically_separable();
      if (theorem && !empirical) ++contradictions;
      if (theorem == empirical) continue;
      ++mismatches;
      // Allowed only next to the theorem boundary.
      bool near_boundary = false;
      const auto [ci, cj] = cell(r);
      for (long di = -1; di <= 1; ++di) {
        for (long dj = -1; dj <= 1; ++dj) {
          const auto it = by_cell.find({ci + di, cj + dj});
          if (it != by_cell.end() && it->second->theorem_region.inside != theorem) {
            near_boundary = true;
          }
        }
      }
      if (!near_boundary) ++unexplained;
    }
  }
  return {unexplained == 0 && contradictions == 0,
          fmt::format("{} points on two slices, {} mismatches with s=alpha+delta, "
                      "s~=beta+gamma inequalities, {} beyond one grid step, "
                      "{} inside-but-entangled",
                      points, mismatches, unexplained, contradictions)};
}

// -- 5 --------------------------------------------------------------------
Outcome check_horodecki_example() {
  const double a = 0.03, p = 0.19;
  const BipartiteOperator rho = horodecki_smoothed(a, p);
  const double pur = purity(rho);
  const bool outside_ball = pur > 1.0 / 7.0;
  const Verdict c1 = criterion1(rho, 2.0);
  const double min_eig = hermitian_spectrum(rho).front();
  const bool c1_ok = c1.kind == VerdictKind::Separable && min_eig >= 0.1 - 1e-9;

  const double p_star =
      std::sqrt((343 * a * a + 98 * a + 7) / (47 * a * a - 6 * a + 7)) / 7.0;
  const double pur_above = purity(horodecki_smoothed(a, p_star + 1e-4));
  const double pur_below = purity(horodecki_smoothed(a, p_star - 1e-4));
  const double pur_at = purity(horodecki_smoothed(a, p_star));
  const bool threshold_ok = pur_above > 1.0 / 7.0 && pur_below <= 1.0 / 7.0 &&
                            std::abs(pur_at - 1.0 / 7.0) <= 1e-6;

  return {outside_ball && c1_ok && threshold_ok,
          fmt::format("purity {:.6f} > 1/7={}, criterion1(alpha=2) {} with min eig(rho) "
                      "{:.6f} >= 0.1; p*={:.6f}: purity(p*-1e-4)={:.8f}, "
                      "purity(p*+1e-4)={:.8f}, |purity(p*)-1/7|={:.2e}",
                      pur, outside_ball, to_string(c1.kind), min_eig, p_star, pur_below,
                      pur_above, std::abs(pur_at - 1.0 / 7.0))};
}

// -- 6 --------------------------------------------------------------------
Outcome check_rho_beta() {
  const double target_lo = (110.0 - std::sqrt(4495.0)) / 44.0;
  const double target_hi = (110.0 + std::sqrt(4495.0)) / 44.0;
  auto npt = [](double beta) { return min_pt_eigenvalue(three_by_three_family(beta)) < 0.0; };
  const double flip_lo = bisect(npt, 0.0, 2.5, 1e-6);
  const double flip_hi = bisect(npt, 2.5, 5.0, 1e-6);
  const bool flips_ok =
      std::abs(flip_lo - target_lo) <= 1e-4 && std::abs(flip_hi - target_hi) <= 1e-4;

  bool image_ok = true;
  std::string image_detail;
  for (double alpha : {-0.5, 0.0, 0.5}) {
    const BipartiteOperator img = normalized(ando_MxN_apply(three_by_three_family(0.5), alpha));
    const double pur = purity(img);
    const bool ppt = psd_check(partial_transpose(img, Subsystem::A)).holds;
    image_ok = image_ok && pur > 1.0 / 80.0 && ppt;
    image_detail += fmt::format(" a={:g}: purity {:.4f} (1/8 ball: {}), PPT={};", alpha,
                                pur, pur > 1.0 / 8.0 ? "outside" : "inside", ppt);
  }

  // Where the image at alpha = -1/2 leaves the separable ball.
  auto outside_ball = [](double beta) {
    return purity(normalized(ando_MxN_apply(three_by_three_family(beta), -0.5))) > 1.0 / 8.0;
  };
  const double ball_lo = bisect(outside_ball, 0.0, 2.5, 1e-7);
  const double ball_hi = bisect(outside_ball, 2.5, 5.0, 1e-7);

  return {flips_ok && image_ok,
          fmt::format("PPT flips at {:.6f} and {:.6f}; required {:.6f} and {:.6f} within "
                      "1e-4 -> {}. beta=0.5 images:{} separable-ball exit of the "
                      "alpha=-1/2 image at {:.6f} and {:.6f}",
                      flip_lo, flip_hi, target_lo, target_hi, flips_ok ? "ok" : "MISMATCH",
                      image_detail, ball_lo, ball_hi)};
}

// -- 7 --------------------------------------------------------------------
Outcome check_ando_decomposition(Seed seed) {
  Rng rng(seed);
  int invalid = 0, total = 0;
  double worst_recon = 0.0, worst_eig = INFINITY;
  for (double alpha : {1.0, 0.5, -0.5, -0.74}) {
    for (int t = 0; t < 100; ++t) {
      const Vector psi = rng.pure_vector(Dims(2, 3));
      const DecompositionCertificate cert = ando_decomposition_2x3(psi, alpha);
      ++total;
      worst_recon = std::max(worst_recon, cert.reconstruction_error);
      for (const auto& piece : cert.pieces) {
        worst_eig = std::min(worst_eig, piece.min_eigenvalue);
        if (piece.kind == PieceKind::SigmaIJ) {
          worst_eig = std::min(worst_eig, piece.min_pt_eigenvalue);
        }
      }
      if (!cert.valid(1e-10)) ++invalid;
    }
  }
  return {invalid == 0,
          fmt::format("{} certificates, {} invalid, max reconstruction error {:.2e}, "
                      "min piece eigenvalue {:.3g}",
                      total, invalid, worst_recon, worst_eig)};
}

// -- 8 --------------------------------------------------------------------
Outcome check_ando_intervals() {
  int mismatches = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = -1; k <= n - 1; ++k) {
      const Interval iv = ando_2xN_interval(k, n);
      Interval want;
      if (k == -1) {
        want = {static_cast<double>(-2 * n) / static_cast<double>(3 * n - 1), 1.0};
      } else if (k == n - 1) {
        want = {-1.0, 2.0};
      } else {
        want = {static_cast<double>(-(2 * n - k - 1)) / static_cast<double>(3 * n - 2), 1.0};
      }
      if (iv.lower != want.lower || iv.upper != want.upper) ++mismatches;
    }
  }
  const double n3_km1 = ando_2xN_interval(-1, 3).lower;
  const double n3_k0 = ando_2xN_interval(0, 3).lower;
  const double mxn = ando_MxN_k0_interval(Dims(3, 3)).lower;
  const bool spots = n3_km1 == -3.0 / 4.0 && n3_k0 == -5.0 / 7.0 && mxn == -5.0 / 13.0;
  return {mismatches == 0 && spots,
          fmt::format("{} interval mismatches over N=2..8; N=3: k=-1 -> {}, k=0 -> {}; "
                      "3x3 k=0 -> {}",
                      mismatches, n3_km1, n3_k0, mxn)};
}

// -- 9 --------------------------------------------------------------------
Outcome check_block_maps(Seed seed) {
  Rng rng(seed);
  int failures = 0, samples = 0;
  double worst = INFINITY;
  for (double alpha : {-1.0, -0.5, 0.5, 1.0}) {
    for (int t = 0; t < 50; ++t) {
      const BipartiteOperator phi_img = phi_alpha(rng.pure(Dims(2, 3)), alpha);
      const PsdResult a = psd_check(phi_img);
      const PsdResult b = psd_check(partial_transpose(phi_img, Subsystem::A));
      const bool exact = exact_sep_small(phi_img) == ExactVerdict::Separable;

      const BipartiteOperator psi_img = psi_alpha(rng.pure(Dims(4, 4)), alpha);
      const PsdResult c = psd_check(psi_img);
      const PsdResult d = psd_check(partial_transpose(psi_img, Subsystem::A));

      worst = std::min({worst, a.margin, b.margin, c.margin, d.margin});
      samples += 2;
      if (!(a.holds && b.holds && exact && c.holds && d.holds)) ++failures;
    }
  }
  return {failures == 0,
          fmt::format("{} images (Phi on 2x3, Psi on 4x4, alpha in {{+-0.5, +-1}}), "
                      "{} failures, worst eigenvalue {:.3g}",
                      samples, failures, worst)};
}

// -- 10 -------------------------------------------------------------------
Outcome check_schmidt_fixture() {
  const int d = 3;
  const Vector phi = maximally_entangled_vector(d);
  const BipartiteOperator sigma(Dims(d, d),
                                Matrix::Identity(9, 9) + 10.0 * phi * phi.adjoint());
  const Verdict v2 = schmidt_bound_criterion(sigma, 2, 10.0);
  const bool fires = v2.kind == VerdictKind::SchmidtNumberAtMost && v2.schmidt_n == 2;
  const OverlapResult ov = schmidt_overlap_necessary(sigma, 2);
  const bool overlap_ok = ov.consistent && std::abs(ov.overlap - 11.0 / 19.0) <= 1e-12;

  int fired_n1 = 0, tried = 0;
  for (int i = -100; i <= 200; ++i) {
    if (i == 0) continue;
    const double alpha = i / 100.0;
    ++tried;
    if (schmidt_bound_criterion(sigma, 1, alpha).fired()) ++fired_n1;
  }
  return {fires && overlap_ok && fired_n1 == 0,
          fmt::format("n=2, alpha=10: {} (margin {:.2e}); overlap {:.6f} vs 11/19 <= 2/3: "
                      "{}; n=1 fired at {} of {} admissible alphas",
                      to_string(v2.kind), v2.margin, ov.overlap,
                      ov.consistent ? "consistent" : "inconsistent", fired_n1, tried)};
}

// -- 11 -------------------------------------------------------------------
Outcome check_soundness(Seed seed) {
  int disagreements = 0, conflicts = 0, separable_verdicts = 0, npt_verdicts = 0;
  std::map<std::string, int> fired;
  std::uint64_t idx = 0;
  for (Dims dims : {Dims(2, 2), Dims(2, 3)}) {
    for (int t = 0; t < 500; ++t) {
      Rng rng(derive_seed(seed, idx++));
      const BipartiteOperator g = rng.density(dims);
      const double mix = rng.uniform();
      const BipartiteOperator sigma =
          (1.0 - mix) * g + (mix / dims.total()) * BipartiteOperator::identity(dims);
      const CriterionReport report = aggregate_report(sigma);
      const ExactVerdict exact = exact_sep_small(sigma);
      if (report.conflict) ++conflicts;
      for (const Verdict& v : report.verdicts) {
        if (!v.error.empty()) continue;
        if (v.kind == VerdictKind::Separable) {
          ++separable_verdicts;
          ++fired[v.criterion];
          if (exact != ExactVerdict::Separable) ++disagreements;
        } else if (v.kind == VerdictKind::EntangledNPT) {
          ++npt_verdicts;
          if (exact != ExactVerdict::Entangled) ++disagreements;
        }
      }
    }
  }
  std::string per;
  for (const auto& [name, count] : fired) per += fmt::format(" {}={}", name, count);
  return {disagreements == 0 && conflicts == 0,
          fmt::format("1000 states; {} Separable and {} EntangledNPT verdicts, "
                      "{} disagreements with the exact oracle, {} conflicts; fired:{}",
                      separable_verdicts, npt_verdicts, disagreements, conflicts, per)};
}

// -- 12 -------------------------------------------------------------------
Outcome check_kraus(Seed seed) {
  int equal_fail = 0, equal_total = 0, norm_fail = 0, norm_total = 0;
  double worst_norm_err = 0.0;
  std::uint64_t idx = 0;
  for (Dims dims : {Dims(2, 2), Dims(2, 3)}) {
    for (int t = 0; t < 20; ++t) {
      Rng rng(derive_seed(seed, idx++));
      const BipartiteOperator g = rng.density(dims);
      // Mix toward I until rho + rho^{T_A} is PSD.
      BipartiteOperator sigma;
      for (double mix = 0.0; mix <= 1.0 + 1e-12; mix += 0.05) {
        const BipartiteOperator rho =
            (1.0 - mix) * g + (mix / dims.total()) * BipartiteOperator::identity(dims);
        sigma = 0.5 * (rho + partial_transpose(rho, Subsystem::A));
        if (psd_check(sigma).holds) break;
      }
      ++equal_total;
      const bool fires = karnas_equal_pt(sigma).kind == VerdictKind::Separable;
      if (!fires || exact_sep_small(sigma) != ExactVerdict::Separable) ++equal_fail;
    }
    for (int t = 0; t < 10; ++t) {
      Rng rng(derive_seed(seed, idx++));
      const BipartiteOperator sigma = rng.density(dims);
      const Verdict v = karnas_norm(sigma);
      const BipartiteOperator pt = partial_transpose(sigma, Subsystem::A);
      Eigen::SelfAdjointEigenSolver<Matrix> ps((sigma + pt).matrix());
      Eigen::SelfAdjointEigenSolver<Matrix> qs((sigma - pt).matrix());
      const double inv_norm = 1.0 / ps.eigenvalues().cwiseAbs().minCoeff();
      const double q_norm = qs.eigenvalues().cwiseAbs().maxCoeff();
      const double expected = 1.0 - inv_norm * q_norm;
      const double err = std::abs(v.margin - expected) / std::max(1.0, std::abs(expected));
      worst_norm_err = std::max(worst_norm_err, err);
      ++norm_total;
      if (err > 1e-10) ++norm_fail;
    }
  }
  return {equal_fail == 0 && norm_fail == 0,
          fmt::format("equal-PT fixtures: {}/{} fired and confirmed; norm margin on {} "
                      "full-rank fixtures, max relative deviation {:.2e}",
                      equal_total - equal_fail, equal_total, norm_total, worst_norm_err)};
}

}  // namespace

std::string acceptance_name(int id) {
  static const char* names[kAcceptanceCount] = {
      "round-trip identities",
      "reduction region tightness",
      "two-parameter region grid",
      "2x2 four-parameter slices",
      "rho_{a,p} example",
      "rho_beta example",
      "Ando constructive decomposition",
      "Ando interval endpoints",
      "non-invertible block maps",
      "Schmidt-number fixture",
      "soundness sweep",
      "Kraus-type criteria",
  };
  if (id < 1 || id > kAcceptanceCount) {
    throw Error(ErrorCode::InvalidParameter, "no acceptance check " + std::to_string(id));
  }
  return names[id - 1];
}

CheckResult run_acceptance(int id, Seed seed) {
  CheckResult result;
  result.id = id;
  result.name = acceptance_name(id);
  const Seed s = derive_seed(seed, static_cast<std::uint64_t>(id));
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o;
    switch (id) {
      case 1: o = check_roundtrips(s); break;
      case 2: o = check_reduction_tightness(s); break;
      case 3: o = check_bh2_region(s); break;
      case 4: o = check_two_by_two_slices(s); break;
      case 5: o = check_horodecki_example(); break;
      case 6: o = check_rho_beta(); break;
      case 7: o = check_ando_decomposition(s); break;
      case 8: o = check_ando_intervals(); break;
      case 9: o = check_block_maps(s); break;
      case 10: o = check_schmidt_fixture(); break;
      case 11: o = check_soundness(s); break;
      case 12: o = check_kraus(s); break;
    }
    result.passed = o.passed;
    result.detail = o.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<int> suite_checks(const std::string& suite) {
  if (suite == "roundtrips") return {1};
  if (suite == "regions") return {2, 3, 4, 8};
  if (suite == "paper-examples") return {5, 6, 10};
  if (suite == "soundness") return {7, 9, 11, 12};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  throw Error(ErrorCode::InvalidParameter, "unknown suite '" + suite + "'");
}

std::string format_check(const CheckResult& r) {
  return fmt::format("[{}] {:02d} {}: {} ({:.2f} s)", r.passed ? "PASS" : "FAIL", r.id,
                     r.name, r.detail, r.seconds);
}

bool run_checks(const std::vector<int>& ids, Seed seed, std::ostream& out) {
  bool all = true;
  for (int id : ids) {
    const CheckResult r = run_acceptance(id, seed);
    out << format_check(r) << std::endl;
    all = all && r.passed;
  }
  return all;
}

}  // namespace sepmaps
