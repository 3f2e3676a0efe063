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

#include "sepmaps/commands.hpp"

#include <algorithm>
#include <cstdlib>

#include <fmt/format.h>

#include "sepmaps/acceptance.hpp"
#include "sepmaps/criteria.hpp"
#include "sepmaps/error.hpp"
#include "sepmaps/io.hpp"
#include "sepmaps/states.hpp"

namespace sepmaps {

namespace {

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

Dims dims_from(const std::vector<int>& d) {
  if (d.size() != 2) {
    throw Error(ErrorCode::InvalidParameter, "--dims takes exactly two integers");
  }
  return Dims(d[0], d[1]);
}

template <typename T>
T require(const std::optional<T>& v, const char* flag, const std::string& family) {
  if (!v) throw Error(ErrorCode::InvalidParameter, family + " requires " + flag);
  return *v;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw Error(ErrorCode::Parse, "not a number: '" + s + "'");
  }
  return v;
}

// Wraps a command body: library errors become exit code 2.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ReportConfig config;
    if (opts.psd_tol) config.tol.psd_tol = *opts.psd_tol;
    if (opts.herm_tol) config.tol.herm_tol = *opts.herm_tol;
    if (!(config.tol.psd_tol > 0.0) || !(config.tol.herm_tol > 0.0)) {
      throw Error(ErrorCode::InvalidParameter, "tolerances must be positive");
    }
    const auto& known = criterion_names();
    for (const auto& name : opts.criteria) {
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw Error(ErrorCode::InvalidParameter, "unknown criterion '" + name + "'");
      }
      config.selected.insert(name);
    }
    if (!opts.criterion1_alphas.empty()) config.criterion1_alphas = opts.criterion1_alphas;
    if (!opts.boundary_alphas.empty()) config.boundary_alphas = opts.boundary_alphas;
    if (!opts.criterion3_params.empty()) config.criterion3_params = opts.criterion3_params;
    config.criterion5_alphas = opts.criterion5_alphas;
    config.schmidt_alphas = opts.schmidt_alphas;

    const StateFile file = load_state_file(opts.input, config.tol);
    const CriterionReport report = aggregate_report(file.state, config);
    emit(opts.output, report_to_json(report, config, file.label), out);
    return kExitOk;
  });
}

const std::vector<std::string>& generate_families() {
  static const std::vector<std::string> names{
      "maximally_entangled", "schmidt",     "horodecki2x4", "horodecki_smoothed",
      "rho_beta",            "random_pure", "random_density"};
  return names;
}

int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string& f = opts.family;
    StateFile file;
    std::string source = "sepmaps generate " + f;
    if (f == "maximally_entangled") {
      const int d = require(opts.d, "--d", f);
      file.state = maximally_entangled(d);
      source += fmt::format(" d={}", d);
    } else if (f == "schmidt") {
      if (opts.coeffs.empty()) throw Error(ErrorCode::InvalidParameter, f + " requires --coeffs");
      const Dims dims = dims_from(opts.dims);
      file.state = schmidt_pure(SchmidtVector(opts.coeffs, dims));
      source += fmt::format(" dims={}x{} coeffs={:.17g}", dims.m, dims.n,
                            fmt::join(opts.coeffs, ","));
    } else if (f == "horodecki2x4") {
      const double a = require(opts.a, "--a", f);
      file.state = horodecki_2x4(a);
      source += fmt::format(" a={:.17g}", a);
    } else if (f == "horodecki_smoothed") {
      const double a = require(opts.a, "--a", f);
      const double p = require(opts.p, "--p", f);
      file.state = horodecki_smoothed(a, p);
      source += fmt::format(" a={:.17g} p={:.17g}", a, p);
    } else if (f == "rho_beta") {
      const double beta = require(opts.beta, "--beta", f);
      file.state = three_by_three_family(beta);
      source += fmt::format(" beta={:.17g}", beta);
    } else if (f == "random_pure" || f == "random_density") {
      const Dims dims = dims_from(opts.dims);
      const Seed seed{opts.seed.value_or(1)};
      file.state = f == "random_pure" ? random_pure(dims, seed) : random_density(dims, seed);
      source += fmt::format(" dims={}x{} seed={}", dims.m, dims.n, seed.value);
    } else {
      throw Error(ErrorCode::InvalidParameter,
                  fmt::format("unknown family '{}' (expected one of: {})", f,
                              fmt::join(generate_families(), ", ")));
    }
    file.label = opts.label.empty() ? f : opts.label;
    file.source = source;
    emit(opts.output, write_state_json(file), out);
    return kExitOk;
  });
}

Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) {
    const double v = parse_number(parts[0]);
    return Axis{v, v, 0.0};
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::Parse, "axis '" + text + "' is not lo:hi:step");
  }
  Axis axis{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
  axis.values();  // validates
  return axis;
}

ScanSpec build_scan_spec(const ScanOptions& opts) {
  ScanSpec spec;
  spec.family = parse_scan_family(opts.family);
  spec.dims = dims_from(opts.dims);
  spec.ando_k = opts.k;
  spec.random_samples = opts.samples;
  spec.seed = Seed{opts.seed};
  spec.threads = opts.threads;
  if (opts.samples < 0) throw Error(ErrorCode::InvalidParameter, "--samples must be >= 0");
  if (opts.grid && !(*opts.grid > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "--grid must be > 0");
  }

  Axis fallback;
  switch (spec.family) {
    case ScanFamily::Reduction: fallback = {-1.5, 2.5, 0.1}; break;
    case ScanFamily::BH2: fallback = {-2.0, 4.0, 0.25}; break;
    case ScanFamily::FourParam: fallback = {-1.0, 2.0, 0.5}; break;
    case ScanFamily::Ando2xN: fallback = {-1.5, 2.5, 0.05}; break;
    case ScanFamily::AndoMxN: fallback = {-1.0, 1.0, 0.05}; break;
  }
  if (opts.grid) fallback.step = *opts.grid;

  const auto names = scan_param_names(spec.family);
  for (const auto& [name, _] : opts.axes) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw Error(ErrorCode::InvalidParameter,
                  fmt::format("{} has no parameter '{}'", opts.family, name));
    }
  }
  for (const auto& name : names) {
    const auto it = opts.axes.find(name);
    spec.axes.push_back(it == opts.axes.end() ? fallback : parse_axis(it->second));
  }
  return spec;
}

int cmd_scan(const ScanOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScanSpec spec = build_scan_spec(opts);
    const auto results = region_boundary_scan(spec);
    emit(opts.output, scan_to_csv(spec, results, opts.region), out);
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<int> ids;
  try {
    ids = opts.checks.empty() ? suite_checks(opts.suite) : opts.checks;
    for (int id : ids) acceptance_name(id);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  const bool ok = run_checks(ids, Seed{opts.seed}, out);
  out << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace sepmaps
