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

#include "sepmaps/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace sepmaps {

namespace {

// Blockwise transpose of every N x N block, i.e. X^{T_B}.
Matrix blockwise_transpose(const BipartiteOperator& x) {
  const Dims& d = x.dims();
  Matrix out(d.total(), d.total());
  for (int i = 0; i < d.m; ++i) {
    for (int k = 0; k < d.m; ++k) {
      out.block(i * d.n, k * d.n, d.n, d.n) =
          x.matrix().block(i * d.n, k * d.n, d.n, d.n).transpose();
    }
  }
  return out;
}

DecompositionPiece make_piece(BipartiteOperator op, PieceKind kind,
                              std::string label, const ToleranceConfig& tol) {
  DecompositionPiece piece;
  const PsdResult r = psd_check(op, tol);
  piece.min_eigenvalue = r.margin;
  piece.separable = r.holds;
  piece.op = std::move(op);
  piece.kind = kind;
  piece.label = std::move(label);
  return piece;
}

std::vector<std::vector<double>> grid_points(const std::vector<Axis>& axes) {
  std::vector<std::vector<double>> points{{}};
  for (const Axis& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : points) {
      for (double v : axis.values()) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

double relative_error(const BipartiteOperator& got, const BipartiteOperator& want) {
  return max_abs(got.matrix() - want.matrix()) /
         std::max(1.0, max_abs(want.matrix()));
}

}  // namespace

ExactVerdict exact_sep_small(const BipartiteOperator& sigma,
                             const ToleranceConfig& tol) {
  if (!ppt_is_exact(sigma.dims())) {
    throw Error(ErrorCode::WrongDims,
                "exact separability only at 2x2 and 2x3, got (" +
                    std::to_string(sigma.dims().m) + "," +
                    std::to_string(sigma.dims().n) + ")");
  }
  if (const PsdResult r = psd_check(sigma, tol); !r.holds) {
    throw Error(ErrorCode::NotPSD, "input has eigenvalue " + std::to_string(r.margin));
  }
  return psd_check(blockwise_transpose(sigma), tol).holds ? ExactVerdict::Separable
                                                          : ExactVerdict::Entangled;
}

std::string_view to_string(PieceKind kind) {
  switch (kind) {
    case PieceKind::SigmaIJ: return "sigma_ij";
    case PieceKind::DiagonalRemainder: return "diagonal_remainder";
    case PieceKind::ProductTerm: return "product_term";
  }
  return "unknown";
}

DecompositionCertificate ando_decomposition_2xN(const Vector& psi, double alpha,
                                                const ToleranceConfig& tol) {
  if (psi.size() < 4 || psi.size() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "ando decomposition needs a vector on C^2 (x) C^N, N >= 2");
  }
  const int n = static_cast<int>(psi.size() / 2);
  const Dims dims(2, n);
  const double a = std::abs(alpha);
  auto lam = [&](int k, int i) { return psi(dims.index(k, i)); };
  auto idx = [&](int k, int i) { return dims.index(k, i); };

  double norm_k[2] = {0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < n; ++i) norm_k[k] += std::norm(lam(k, i));
  }

  DecompositionCertificate cert;
  BipartiteOperator total = BipartiteOperator::zero(dims);
  auto add = [&](BipartiteOperator op, PieceKind kind, std::string label) {
    total += op;
    cert.pieces.push_back(make_piece(std::move(op), kind, std::move(label), tol));
  };

  // sigma_ij: off-diagonal coherences <0i|.|1j> and <0j|.|1i>, i < j.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Matrix s = Matrix::Zero(dims.total(), dims.total());
      const double top = a * (std::norm(lam(0, i)) + std::norm(lam(0, j)));
      const double bottom = a * (std::norm(lam(1, i)) + std::norm(lam(1, j)));
      s(idx(0, i), idx(0, i)) = top;
      s(idx(0, j), idx(0, j)) = top;
      s(idx(1, i), idx(1, i)) = bottom;
      s(idx(1, j), idx(1, j)) = bottom;
      s(idx(0, i), idx(1, j)) = alpha * lam(0, i) * std::conj(lam(1, j));
      s(idx(0, j), idx(1, i)) = alpha * lam(0, j) * std::conj(lam(1, i));
      s(idx(1, j), idx(0, i)) = std::conj(s(idx(0, i), idx(1, j)));
      s(idx(1, i), idx(0, j)) = std::conj(s(idx(0, j), idx(1, i)));

      // Restrict to the 2x2 support {0i, 0j, 1i, 1j} and test PPT there.
      const int support[4] = {idx(0, i), idx(0, j), idx(1, i), idx(1, j)};
      Matrix local(4, 4);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) local(r, c) = s(support[r], support[c]);
      }
      const BipartiteOperator local_op(Dims(2, 2), local);
      const PsdResult pt = psd_check(partial_transpose(local_op, Subsystem::A), tol);

      DecompositionPiece piece =
          make_piece({dims, std::move(s)}, PieceKind::SigmaIJ,
                     "sigma_" + std::to_string(i) + std::to_string(j), tol);
      piece.min_pt_eigenvalue = pt.margin;
      piece.separable = piece.separable && pt.holds;
      total += piece.op;
      cert.pieces.push_back(std::move(piece));
    }
  }

  // Remainder diagonal after removing the sigma_ij diagonals.
  auto d_entry = [&](int k, int i) {
    const double l2 = std::norm(lam(k, i));
    return n * l2 + norm_k[k] - a * ((n - 2) * l2 + norm_k[k]);
  };

  Vector bob_vec[2] = {Vector(n), Vector(n)};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < n; ++i) bob_vec[k](i) = lam(k, i);
  }

  if (alpha >= 0.0) {
    for (int i = 0; i < n; ++i) {
      Matrix r = Matrix::Zero(dims.total(), dims.total());
      r(idx(0, i), idx(0, i)) = d_entry(0, i);
      r(idx(1, i), idx(1, i)) = d_entry(1, i);
      r(idx(0, i), idx(1, i)) = alpha * lam(0, i) * std::conj(lam(1, i));
      r(idx(1, i), idx(0, i)) = std::conj(r(idx(0, i), idx(1, i)));
      add({dims, std::move(r)}, PieceKind::DiagonalRemainder,
          "R_" + std::to_string(i));
    }
    for (int k = 0; k < 2; ++k) {
      Matrix pk = Matrix::Zero(2, 2);
      pk(k, k) = 1.0;
      add(alpha * kron(pk, bob_vec[k] * bob_vec[k].adjoint()),
          PieceKind::ProductTerm, "alpha_k" + std::to_string(k));
    }
  } else {
    // Remove the same-Bob-index coherences with |a| |e_i><e_i| (x) |i><i|.
    for (int i = 0; i < n; ++i) {
      Vector e(2);
      e(0) = lam(0, i);
      e(1) = -lam(1, i);
      Matrix pi = Matrix::Zero(n, n);
      pi(i, i) = 1.0;
      add(a * kron(e * e.adjoint(), pi), PieceKind::ProductTerm,
          "e_" + std::to_string(i));
    }
    for (int k = 0; k < 2; ++k) {
      Matrix block = alpha * bob_vec[k] * bob_vec[k].adjoint();
      for (int i = 0; i < n; ++i) {
        block(i, i) += d_entry(k, i) - a * std::norm(lam(k, i));
      }
      Matrix pk = Matrix::Zero(2, 2);
      pk(k, k) = 1.0;
      add(kron(pk, block), PieceKind::DiagonalRemainder,
          "R'_" + std::to_string(k));
    }
  }

  const BipartiteOperator target = ando_2xN_apply(
      BipartiteOperator::projector(dims, psi), AndoParams{-1, alpha}, tol);
  cert.reconstruction_error = max_abs(total.matrix() - target.matrix());
  cert.all_pieces_separable =
      std::all_of(cert.pieces.begin(), cert.pieces.end(),
                  [](const DecompositionPiece& p) { return p.separable; });
  return cert;
}

DecompositionCertificate ando_decomposition_2x3(const Vector& psi, double alpha,
                                                const ToleranceConfig& tol) {
  if (psi.size() != 6) {
    throw Error(ErrorCode::DimensionMismatch, "ando_decomposition_2x3 needs length 6");
  }
  return ando_decomposition_2xN(psi, alpha, tol);
}

std::string_view to_string(ScanFamily family) {
  switch (family) {
    case ScanFamily::Reduction: return "reduction";
    case ScanFamily::BH2: return "bh2";
    case ScanFamily::FourParam: return "four_param";
    case ScanFamily::Ando2xN: return "ando2xN";
    case ScanFamily::AndoMxN: return "andoMxN";
  }
  return "unknown";
}

ScanFamily parse_scan_family(const std::string& name) {
  for (ScanFamily f : {ScanFamily::Reduction, ScanFamily::BH2, ScanFamily::FourParam,
                       ScanFamily::Ando2xN, ScanFamily::AndoMxN}) {
    if (name == to_string(f)) return f;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown scan family '" + name + "'");
}

std::vector<std::string> scan_param_names(ScanFamily family) {
  switch (family) {
    case ScanFamily::BH2: return {"alpha", "beta"};
    case ScanFamily::FourParam: return {"alpha", "beta", "gamma", "delta"};
    default: return {"alpha"};
  }
}

std::vector<double> Axis::values() const {
  if (!(step > 0.0)) {
    if (lo == hi) return {lo};
    throw Error(ErrorCode::InvalidParameter, "grid step must be > 0");
  }
  if (hi < lo) throw Error(ErrorCode::InvalidParameter, "grid hi < lo");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-6)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    // Snap to 1e-12 so that e.g. 0.1 * 3 prints as 0.3.
    out.push_back(std::round((lo + i * step) * 1e12) / 1e12);
  }
  return out;
}

std::vector<Vector> extremal_states(Dims dims) {
  std::vector<Vector> out;
  for (int i = 0; i < dims.m; ++i) {
    for (int j = 0; j < dims.n; ++j) {
      Vector v = Vector::Zero(dims.total());
      v(dims.index(i, j)) = 1.0;
      out.push_back(std::move(v));
    }
  }
  if (dims.m >= 2 && dims.n >= 2) {
    const double h = 1.0 / std::sqrt(2.0);
    const int i00 = dims.index(0, 0), i11 = dims.index(1, 1);
    const int i01 = dims.index(0, 1), i10 = dims.index(1, 0);
    for (int sign : {1, -1}) {
      Vector phi = Vector::Zero(dims.total());
      phi(i00) = h;
      phi(i11) = sign * h;
      out.push_back(phi);
      Vector psi = Vector::Zero(dims.total());
      psi(i01) = h;
      psi(i10) = sign * h;
      out.push_back(psi);
    }
    const int r = std::min(dims.m, dims.n);
    if (r > 2) {
      Vector full = Vector::Zero(dims.total());
      for (int k = 0; k < r; ++k) full(dims.index(k, k)) = 1.0 / std::sqrt(r);
      out.push_back(std::move(full));
    }
  }
  return out;
}

BipartiteOperator apply_family(ScanFamily family, const BipartiteOperator& rho,
                               const std::vector<double>& p, int ando_k,
                               const ToleranceConfig& tol) {
  if (p.size() != scan_param_names(family).size()) {
    throw Error(ErrorCode::InvalidParameter,
                std::string(to_string(family)) + " expects " +
                    std::to_string(scan_param_names(family).size()) + " parameters");
  }
  switch (family) {
    case ScanFamily::Reduction: return reduction_like_apply(rho, p[0], tol);
    case ScanFamily::BH2: return bh_two_param_apply(rho, p[0], p[1], tol);
    case ScanFamily::FourParam:
      return four_param_apply(rho, FourParams{p[0], p[1], p[2], p[3]}, tol);
    case ScanFamily::Ando2xN: return ando_2xN_apply(rho, AndoParams{ando_k, p[0]}, tol);
    case ScanFamily::AndoMxN: return ando_MxN_apply(rho, p[0], tol);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown family");
}

RegionVerdict family_region(ScanFamily family, const std::vector<double>& p,
                            Dims dims, int ando_k) {
  switch (family) {
    case ScanFamily::Reduction: return reduction_like_region(p.at(0));
    case ScanFamily::BH2: return bh_two_param_region(p.at(0), p.at(1));
    case ScanFamily::FourParam: {
      const FourParams fp{p.at(0), p.at(1), p.at(2), p.at(3)};
      return dims == Dims(2, 2) ? two_by_two_region(fp) : four_param_region(fp, dims);
    }
    case ScanFamily::Ando2xN: return ando_2xN_region({ando_k, p.at(0)}, dims.n);
    case ScanFamily::AndoMxN: return ando_MxN_region(p.at(0));
  }
  throw Error(ErrorCode::InvalidParameter, "unknown family");
}

ScanResult scan_point(const ScanSpec& spec, const std::vector<double>& point,
                      Seed seed) {
  ScanResult res;
  res.family = spec.family;
  res.point = point;
  res.seed = seed;
  res.worst_psd_margin = std::numeric_limits<double>::infinity();
  res.worst_ppt_margin = std::numeric_limits<double>::infinity();
  res.theorem_region = family_region(spec.family, point, spec.dims, spec.ando_k);

  auto visit = [&](const Vector& v) {
    const BipartiteOperator image = apply_family(
        spec.family, BipartiteOperator::projector(spec.dims, v), point,
        spec.ando_k, spec.tol);
    const PsdResult psd = psd_check(image, spec.tol);
    const PsdResult ppt = psd_check(partial_transpose(image, Subsystem::A), spec.tol);
    res.worst_psd_margin = std::min(res.worst_psd_margin, psd.margin);
    res.worst_ppt_margin = std::min(res.worst_ppt_margin, ppt.margin);
    res.psd_holds = res.psd_holds && psd.holds;
    res.ppt_holds = res.ppt_holds && ppt.holds;
    ++res.n_samples;
  };

  for (const Vector& v : extremal_states(spec.dims)) visit(v);
  Rng rng(seed);
  for (int s = 0; s < spec.random_samples; ++s) visit(rng.pure_vector(spec.dims));
  return res;
}

std::vector<ScanResult> region_boundary_scan(const ScanSpec& spec) {
  if (spec.axes.size() != scan_param_names(spec.family).size()) {
    throw Error(ErrorCode::InvalidParameter,
                std::string(to_string(spec.family)) + " scan needs " +
                    std::to_string(scan_param_names(spec.family).size()) + " axes");
  }
  spec.tol.validate();
  const auto points = grid_points(spec.axes);
  std::vector<ScanResult> results(points.size());

  unsigned workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(1, points.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = scan_point(spec, points[i], derive_seed(spec.seed, i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

OverlapResult schmidt_overlap_necessary(const BipartiteOperator& sigma, int n,
                                        const ToleranceConfig& tol) {
  const Dims& dims = sigma.dims();
  if (dims.m != dims.n) {
    throw Error(ErrorCode::WrongDims, "overlap oracle needs square dims (d, d)");
  }
  const double tr = trace(sigma).real();
  if (tr == 0.0) throw Error(ErrorCode::InvalidParameter, "zero-trace input");
  const Vector phi = maximally_entangled_vector(dims.m);
  OverlapResult out;
  out.overlap = (phi.adjoint() * sigma.matrix() * phi)(0, 0).real() / tr;
  out.consistent = out.overlap <= static_cast<double>(n) / dims.m + tol.psd_tol;
  return out;
}

std::string_view to_string(RoundtripFamily family) {
  switch (family) {
    case RoundtripFamily::Reduction: return "reduction";
    case RoundtripFamily::BH2: return "bh2";
    case RoundtripFamily::Ando2xN: return "ando2xN";
  }
  return "unknown";
}

RoundtripResult roundtrip_validator(RoundtripFamily family, Dims dims,
                                    const std::vector<double>& params,
                                    int n_trials, Seed seed, double threshold,
                                    const ToleranceConfig& tol) {
  RoundtripResult out;
  const std::size_t want = family == RoundtripFamily::BH2 ? 2 : 1;
  if (params.size() != want) {
    out.detail = std::string(to_string(family)) + " expects " +
                 std::to_string(want) + " parameters";
    return out;
  }

  auto apply = [&](const BipartiteOperator& x) {
    switch (family) {
      case RoundtripFamily::Reduction: return reduction_like_apply(x, params[0], tol);
      case RoundtripFamily::BH2: return bh_two_param_apply(x, params[0], params[1], tol);
      case RoundtripFamily::Ando2xN:
        return ando_2xN_apply(x, AndoParams{-1, params[0]}, tol);
    }
    throw Error(ErrorCode::InvalidParameter, "unknown family");
  };
  auto invert = [&](const BipartiteOperator& x) {
    switch (family) {
      case RoundtripFamily::Reduction: return reduction_like_invert(x, params[0], tol);
      case RoundtripFamily::BH2: return bh_two_param_invert(x, params[0], params[1], tol);
      case RoundtripFamily::Ando2xN: return ando_2xN_invert(x, params[0], tol);
    }
    throw Error(ErrorCode::InvalidParameter, "unknown family");
  };

  Rng rng(seed);
  try {
    for (int t = 0; t < n_trials; ++t) {
      const BipartiteOperator x = rng.hermitian(dims);
      out.max_error = std::max(out.max_error, relative_error(apply(invert(x)), x));
      out.max_error = std::max(out.max_error, relative_error(invert(apply(x)), x));
      ++out.trials;
    }
  } catch (const Error& e) {
    out.status = e.code() == ErrorCode::SingularMap ? RoundtripStatus::Skipped
                                                    : RoundtripStatus::Fail;
    out.detail = e.what();
    return out;
  }
  out.status = out.max_error <= threshold ? RoundtripStatus::Pass : RoundtripStatus::Fail;
  return out;
}

}  // namespace sepmaps
