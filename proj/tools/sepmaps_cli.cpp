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

#include <iostream>

#include "CLI11.hpp"
#include "sepmaps/commands.hpp"
#include "sepmaps/io.hpp"

int main(int argc, char** argv) {
  using namespace sepmaps;

  CLI::App app{"Separability criteria from positive maps on bipartite operators"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  double psd_tol = 0.0, herm_tol = 0.0;
  auto* a = app.add_subcommand("analyze", "Run every applicable criterion on a state file");
  a->add_option("state", analyze.input, "State file (JSON, schema 1)")->required();
  a->add_option("-o,--output", analyze.output, "Report path (default stdout)");
  a->add_option("--criteria", analyze.criteria, "Restrict to these criteria");
  a->add_option("--criterion1-alphas", analyze.criterion1_alphas);
  a->add_option("--boundary-alphas", analyze.boundary_alphas,
                "alpha values on the beta = alpha/2 - 1 boundary");
  a->add_option("--criterion3-params", analyze.criterion3_params);
  a->add_option("--criterion5-alphas", analyze.criterion5_alphas);
  a->add_option("--schmidt-alphas", analyze.schmidt_alphas);
  auto* psd_opt = a->add_option("--psd-tol", psd_tol);
  auto* herm_opt = a->add_option("--herm-tol", herm_tol);

  GenerateOptions generate;
  std::uint64_t gen_seed = 1;
  double gen_a = 0, gen_p = 0, gen_beta = 0;
  int gen_d = 0;
  auto* g = app.add_subcommand("generate", "Write a named example state");
  g->add_option("family", generate.family)
      ->required()
      ->check(CLI::IsMember(generate_families()));
  g->add_option("-o,--output", generate.output, "Output path (default stdout)");
  g->add_option("--dims", generate.dims)->expected(2);
  auto* a_opt = g->add_option("--a", gen_a);
  auto* p_opt = g->add_option("--p", gen_p);
  auto* beta_opt = g->add_option("--beta", gen_beta);
  auto* d_opt = g->add_option("--d", gen_d);
  g->add_option("--coeffs", generate.coeffs, "Schmidt coefficients, descending");
  auto* seed_opt = g->add_option("--seed", gen_seed);
  g->add_option("--label", generate.label);

  ScanOptions scan;
  std::string ax_alpha, ax_beta, ax_gamma, ax_delta;
  double grid = 0.0;
  auto* s = app.add_subcommand("scan", "Empirical region scan, CSV output");
  s->add_option("family", scan.family, "reduction | bh2 | four_param | ando2xN | andoMxN")
      ->required();
  s->add_option("--dims", scan.dims)->expected(2);
  s->add_option("--alpha", ax_alpha, "lo:hi:step or a single value");
  s->add_option("--beta", ax_beta);
  s->add_option("--gamma", ax_gamma);
  s->add_option("--delta", ax_delta);
  auto* grid_opt = s->add_option("--grid", grid, "Step for axes without explicit range");
  s->add_option("--k", scan.k, "Ando index k");
  s->add_option("--samples", scan.samples, "Random pure inputs per point");
  s->add_option("--seed", scan.seed);
  s->add_option("--threads", scan.threads, "0 = hardware concurrency");
  s->add_flag("--region", scan.region, "Add theorem-region columns");
  s->add_option("-o,--output", scan.output, "CSV path (default stdout)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run acceptance checks");
  v->add_option("suite", verify.suite, "roundtrips | regions | paper-examples | soundness | all");
  v->add_option("--check", verify.checks, "Run only these check numbers");
  v->add_option("--seed", verify.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (*a) {
    if (*psd_opt) analyze.psd_tol = psd_tol;
    if (*herm_opt) analyze.herm_tol = herm_tol;
    return cmd_analyze(analyze, std::cout, std::cerr);
  }
  if (*g) {
    if (*a_opt) generate.a = gen_a;
    if (*p_opt) generate.p = gen_p;
    if (*beta_opt) generate.beta = gen_beta;
    if (*d_opt) generate.d = gen_d;
    if (*seed_opt) generate.seed = gen_seed;
    return cmd_generate(generate, std::cout, std::cerr);
  }
  if (*s) {
    if (!ax_alpha.empty()) scan.axes["alpha"] = ax_alpha;
    if (!ax_beta.empty()) scan.axes["beta"] = ax_beta;
    if (!ax_gamma.empty()) scan.axes["gamma"] = ax_gamma;
    if (!ax_delta.empty()) scan.axes["delta"] = ax_delta;
    if (*grid_opt) scan.grid = grid;
    return cmd_scan(scan, std::cout, std::cerr);
  }
  return cmd_verify(verify, std::cout, std::cerr);
}
