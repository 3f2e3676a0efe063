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

// Independent checks used to validate the maps and criteria: exact
// separability where PPT is sufficient, explicit separable decompositions,
// empirical region scans, and inverse round trips.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepmaps/criteria.hpp"
#include "sepmaps/linalg.hpp"
#include "sepmaps/maps.hpp"
#include "sepmaps/states.hpp"

namespace sepmaps {

enum class ExactVerdict { Separable, Entangled };

/// PPT test at 2x2 / 2x3 (and 3x2), computed through T_B so that it does not
/// share the T_A code path used by the criteria. Throws WrongDims elsewhere.
ExactVerdict exact_sep_small(const BipartiteOperator& sigma,
                             const ToleranceConfig& tol = {});

// --- constructive decomposition of the k = -1 Ando image --------------------

enum class PieceKind { SigmaIJ, DiagonalRemainder, ProductTerm };

std::string_view to_string(PieceKind kind);

struct DecompositionPiece {
  BipartiteOperator op;
  PieceKind kind = PieceKind::ProductTerm;
  std::string label;
  double min_eigenvalue = 0.0;
  double min_pt_eigenvalue = 0.0;  // sigma_ij only, on its 2x2 support
  bool separable = false;
};

struct DecompositionCertificate {
  std::vector<DecompositionPiece> pieces;
  double reconstruction_error = 0.0;
  bool all_pieces_separable = false;

  bool valid(double recon_tol = 1e-10) const {
    return all_pieces_separable && reconstruction_error <= recon_tol;
  }
};

/// Splits Lambda^{2xN}(|psi><psi|) (k = -1) into 2x2-supported PPT pieces
/// sigma_ij, rank-one product terms and block-diagonal remainders. Never
/// throws for out-of-range alpha; the certificate just comes back invalid.
DecompositionCertificate ando_decomposition_2xN(const Vector& psi, double alpha,
                                                const ToleranceConfig& tol = {});
DecompositionCertificate ando_decomposition_2x3(const Vector& psi, double alpha,
                                                const ToleranceConfig& tol = {});

// --- region scans ------------------------------------------------------------

enum class ScanFamily { Reduction, BH2, FourParam, Ando2xN, AndoMxN };

std::string_view to_string(ScanFamily family);
ScanFamily parse_scan_family(const std::string& name);
/// Parameter axis names in order, e.g. {"alpha", "beta"} for BH2.
std::vector<std::string> scan_param_names(ScanFamily family);

struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  /// lo, lo + step, ... up to hi (inclusive within step/1e6).
  std::vector<double> values() const;
};

struct ScanSpec {
  ScanFamily family = ScanFamily::Reduction;
  Dims dims{2, 2};
  std::vector<Axis> axes;  // one per scan_param_names(family)
  int ando_k = -1;
  int random_samples = 50;
  Seed seed{1};
  int threads = 0;  // 0: hardware concurrency
  ToleranceConfig tol;
};

struct ScanResult {
  ScanFamily family = ScanFamily::Reduction;
  std::vector<double> point;
  double worst_psd_margin = 0.0;
  double worst_ppt_margin = 0.0;
  bool psd_holds = true;
  bool ppt_holds = true;
  int n_samples = 0;
  Seed seed;
  RegionVerdict theorem_region;

  bool empirically_separable() const { return psd_holds && ppt_holds; }
};

/// Product basis states, Bell states on the embedded 2x2 corner, and the
/// maximally entangled state on the min(M, N) corner.
std::vector<Vector> extremal_states(Dims dims);

BipartiteOperator apply_family(ScanFamily family, const BipartiteOperator& rho,
                               const std::vector<double>& point, int ando_k,
                               const ToleranceConfig& tol = {});
RegionVerdict family_region(ScanFamily family, const std::vector<double>& point,
                            Dims dims, int ando_k);

/// Worst-case image margins at a single parameter point.
ScanResult scan_point(const ScanSpec& spec, const std::vector<double>& point,
                      Seed seed);

/// Parallel over grid points; each point draws from derive_seed(seed, index),
/// so results do not depend on the thread count.
std::vector<ScanResult> region_boundary_scan(const ScanSpec& spec);

// --- Schmidt-number sanity -------------------------------------------------

struct OverlapResult {
  bool consistent = true;
  double overlap = 0.0;
};

/// <Phi|sigma^|Phi> <= n/d + psd_tol for sigma^ = sigma / Tr(sigma).
OverlapResult schmidt_overlap_necessary(const BipartiteOperator& sigma, int n,
                                        const ToleranceConfig& tol = {});

// --- inverse round trips ----------------------------------------------------

enum class RoundtripFamily { Reduction, BH2, Ando2xN };

std::string_view to_string(RoundtripFamily family);

enum class RoundtripStatus { Pass, Fail, Skipped };

struct RoundtripResult {
  RoundtripStatus status = RoundtripStatus::Fail;
  double max_error = 0.0;  // relative, over both compositions
  int trials = 0;
  std::string detail;
};

/// params: {alpha} or {alpha, beta}. SingularMap is reported as Skipped.
RoundtripResult roundtrip_validator(RoundtripFamily family, Dims dims,
                                    const std::vector<double>& params,
                                    int n_trials, Seed seed,
                                    double threshold = 1e-10,
                                    const ToleranceConfig& tol = {});

}  // namespace sepmaps
