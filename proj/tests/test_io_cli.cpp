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

#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "sepmaps/commands.hpp"
#include "sepmaps/error.hpp"
#include "sepmaps/io.hpp"
#include "sepmaps/states.hpp"
#include "test_util.hpp"

using namespace sepmaps;
using namespace sepmaps::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("sepmaps_io_cli_" + std::to_string(++counter));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

Error parse_error(const std::string& text) {
  try {
    parse_state_json(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected a parse error");
  return Error(ErrorCode::Parse, "");
}

std::string generate(GenerateOptions opts) {
  std::ostringstream out, err;
  REQUIRE(cmd_generate(opts, out, err) == kExitOk);
  return out.str();
}

json analyze(const std::string& path) {
  AnalyzeOptions a;
  a.input = path;
  std::ostringstream out, err;
  REQUIRE(cmd_analyze(a, out, err) == kExitOk);
  return json::parse(out.str());
}

const json* find_verdict(const json& report, const std::string& name, double alpha) {
  for (const auto& v : report["verdicts"]) {
    if (v["criterion"] == name && v["params"].contains("alpha") &&
        v["params"]["alpha"].get<double>() == alpha) {
      return &v;
    }
  }
  return nullptr;
}

}  // namespace

TEST_CASE("state files round-trip exactly") {
  Rng rng(Seed{61});
  for (const auto& state : {rng.density(Dims(2, 3)), horodecki_smoothed(0.03, 0.19),
                            three_by_three_family(2.5), rng.pure(Dims(3, 3))}) {
    const StateFile f{state, "x", "test"};
    const StateFile back = parse_state_json(write_state_json(f));
    CHECK(back.state.dims() == state.dims());
    CHECK(back.state.matrix() == state.matrix());  // bitwise
    CHECK(back.label == "x");
    CHECK(back.source == "test");
  }
}

TEST_CASE("state file layout") {
  const std::string text =
      write_state_json({BipartiteOperator::identity(Dims(1, 2)), "id", "unit"});
  CHECK(text ==
        "{\n"
        "  \"schema\": 1,\n"
        "  \"dims\": [1, 2],\n"
        "  \"matrix\": [\n"
        "    [[1, 0], [0, 0]],\n"
        "    [[0, 0], [1, 0]]\n"
        "  ],\n"
        "  \"metadata\": {\"label\":\"id\",\"source\":\"unit\"}\n"
        "}\n");
}

TEST_CASE("parse errors carry line and field") {
  const std::string good = write_state_json({BipartiteOperator::identity(Dims(1, 2)), "", ""});

  std::string bad_entry = good;
  bad_entry.replace(bad_entry.find("[[0, 0], [1, 0]]"), 16, "[[0, 0], [1, \"a\"]]");
  const Error e1 = parse_error(bad_entry);
  CHECK(e1.code() == ErrorCode::Parse);
  CHECK(std::string(e1.what()).find("line 6, field 'matrix[1][1]'") != std::string::npos);

  std::string bad_schema = good;
  bad_schema.replace(bad_schema.find("\"schema\": 1"), 11, "\"schema\": 2");
  CHECK(std::string(parse_error(bad_schema).what()).find("line 2, field 'schema'") !=
        std::string::npos);

  std::string bad_dims = good;
  bad_dims.replace(bad_dims.find("[1, 2]"), 6, "[2, 2]");
  CHECK(std::string(parse_error(bad_dims).what()).find("field 'matrix'") != std::string::npos);

  const Error syntax = parse_error("{\n  \"schema\": 1,\n  oops\n}");
  CHECK(syntax.code() == ErrorCode::Parse);
  CHECK(std::string(syntax.what()).find("line 3") != std::string::npos);

  std::string non_herm = good;
  non_herm.replace(non_herm.find("[[1, 0], [0, 0]]"), 16, "[[1, 0], [0.5, 0]]");
  const Error nh = parse_error(non_herm);
  CHECK(nh.code() == ErrorCode::NotHermitian);
  CHECK(std::string(nh.what()).find("field 'matrix'") != std::string::npos);

  CHECK(parse_error("{\"dims\": [1, 1]}").code() == ErrorCode::Parse);
  CHECK(parse_error("[]").code() == ErrorCode::Parse);
}

TEST_CASE("file helpers") {
  TempDir dir;
  const std::string path = dir.file("s.json");
  save_state_file(path, {maximally_entangled(2), "phi", "t"});
  CHECK(load_state_file(path).state.matrix() == maximally_entangled(2).matrix());
  write_file_atomic(path, "abc");
  CHECK(read_text_file(path) == "abc");
  try {
    load_state_file(dir.file("missing.json"));
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.rfind("Parse: ", 0) == 0);
    CHECK(what.find("Parse", 1) == std::string::npos);
  }
}

TEST_CASE("reports") {
  ReportConfig cfg;
  const CriterionReport r = aggregate_report(horodecki_smoothed(0.03, 0.19), cfg);
  const std::string a = report_to_json(r, cfg, "rho_ap");
  const std::string b = report_to_json(aggregate_report(horodecki_smoothed(0.03, 0.19), cfg),
                                       cfg, "rho_ap");
  CHECK(a == b);
  const json doc = json::parse(a);
  CHECK(doc["schema"] == 1);
  CHECK(doc["version"] == kToolVersion);
  CHECK(doc["input"]["dims"] == json::array({2, 4}));
  CHECK(doc["tolerances"]["psd_tol"] == 1e-9);
  CHECK(doc["parameters"]["criterion1_alphas"].size() == 4);
  CHECK(doc["summary"]["kind"] == "Separable");
  CHECK(doc["verdicts"].size() == r.verdicts.size());
}

TEST_CASE("scan CSV") {
  ScanSpec spec;
  spec.family = ScanFamily::BH2;
  spec.axes = {Axis{0.0, 0.5, 0.5}, Axis{1.0, 1.0, 0.0}};
  spec.random_samples = 2;
  const auto results = region_boundary_scan(spec);
  const std::string plain = scan_to_csv(spec, results, false);
  CHECK(plain.substr(0, plain.find('\n')) ==
        "family,alpha,beta,worst_psd_margin,worst_ppt_margin,n_samples");
  const std::string full = scan_to_csv(spec, results, true);
  CHECK(full.substr(0, full.find('\n')) ==
        "family,alpha,beta,worst_psd_margin,worst_ppt_margin,n_samples,theorem_inside,"
        "theorem_slack,binding_constraint");
  CHECK(std::count(full.begin(), full.end(), '\n') == 3);
  CHECK(full.find("\nbh2,0.5,1,") != std::string::npos);
}

TEST_CASE("analyze") {
  TempDir dir;
  const std::string mm = dir.file("mm.json");
  save_state_file(mm, {(1.0 / 8.0) * BipartiteOperator::identity(Dims(2, 4)), "mm", ""});
  CHECK(analyze(mm)["summary"]["kind"] == "Separable");

  GenerateOptions g;
  g.family = "horodecki_smoothed";
  g.a = 0.03;
  g.p = 0.19;
  g.output = dir.file("rap.json");
  generate(g);
  const json rap = analyze(g.output);
  const json* c1 = find_verdict(rap, "criterion1", 2.0);
  REQUIRE(c1 != nullptr);
  CHECK((*c1)["kind"] == "Separable");
  for (const auto& v : rap["verdicts"]) {
    if (v["criterion"] == "purity_ball") CHECK(v["kind"] == "Inconclusive");
  }

  GenerateOptions rb;
  rb.family = "rho_beta";
  rb.beta = 0.1;
  rb.output = dir.file("rb.json");
  generate(rb);
  CHECK(analyze(rb.output)["summary"]["kind"] == "EntangledNPT");

  // Overrides land in the report.
  AnalyzeOptions a;
  a.input = mm;
  a.criteria = {"criterion1"};
  a.criterion1_alphas = {1.5};
  a.psd_tol = 1e-7;
  std::ostringstream out, err;
  CHECK(cmd_analyze(a, out, err) == kExitOk);
  const json doc = json::parse(out.str());
  CHECK(doc["verdicts"].size() == 1);
  CHECK(doc["tolerances"]["psd_tol"] == 1e-7);

  // Invalid input is exit code 2, never a verdict.
  std::ostringstream o2, e2;
  a.input = dir.file("missing.json");
  CHECK(cmd_analyze(a, o2, e2) == kExitInvalid);
  CHECK(e2.str().find("error:") == 0);
  a.input = mm;
  a.criteria = {"bogus"};
  CHECK(cmd_analyze(a, o2, e2) == kExitInvalid);

  save_state_file(dir.file("neg.json"),
                  {-1.0 * BipartiteOperator::identity(Dims(2, 2)), "", ""});
  AnalyzeOptions neg;
  neg.input = dir.file("neg.json");
  CHECK(cmd_analyze(neg, o2, e2) == kExitInvalid);
}

TEST_CASE("generate") {
  GenerateOptions g;
  g.family = "rho_beta";
  g.beta = 2.5;
  const StateFile f = parse_state_json(generate(g));
  CHECK(std::abs(trace(f.state) - 1.0) <= 1e-12);
  CHECK(psd_check(f.state).holds);
  CHECK(f.label == "rho_beta");

  GenerateOptions h;
  h.family = "horodecki2x4";
  h.a = 0.5;
  const StateFile hf = parse_state_json(generate(h));
  CHECK(psd_check(partial_transpose(hf.state, Subsystem::A)).holds);

  GenerateOptions r;
  r.family = "random_density";
  r.dims = {3, 3};
  r.seed = 7;
  CHECK(generate(r) == generate(r));
  r.seed = 8;
  const std::string other = generate(r);
  r.seed = 7;
  CHECK(generate(r) != other);

  GenerateOptions s;
  s.family = "schmidt";
  s.dims = {2, 3};
  s.coeffs = {0.8, 0.6};
  CHECK(parse_state_json(generate(s)).state.dims() == Dims(2, 3));

  GenerateOptions m;
  m.family = "maximally_entangled";
  m.d = 3;
  CHECK(purity(parse_state_json(generate(m)).state) == doctest::Approx(1.0));

  std::ostringstream out, err;
  GenerateOptions unknown;
  unknown.family = "cat_state";
  CHECK(cmd_generate(unknown, out, err) == kExitInvalid);
  GenerateOptions missing;
  missing.family = "rho_beta";
  CHECK(cmd_generate(missing, out, err) == kExitInvalid);
  CHECK(err.str().find("--beta") != std::string::npos);
  GenerateOptions range;
  range.family = "rho_beta";
  range.beta = 7.0;
  CHECK(cmd_generate(range, out, err) == kExitInvalid);
}

TEST_CASE("scan command") {
  CHECK(parse_axis("-1.5:2.5:0.1").values().size() == 41);
  CHECK(parse_axis("0.25").values() == std::vector<double>{0.25});
  CHECK_THROWS_AS(parse_axis("1:2"), Error);
  CHECK_THROWS_AS(parse_axis("a:b:c"), Error);
  CHECK_THROWS_AS(parse_axis("0:1:0"), Error);

  ScanOptions so;
  so.family = "reduction";
  so.axes["alpha"] = "-1.5:2.5:0.1";
  so.samples = 10;
  std::ostringstream out, err;
  CHECK(cmd_scan(so, out, err) == kExitOk);
  // Boundary at -1 and 2 within one step.
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  double lo = 10, hi = -10;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    const double alpha = std::stod(cells[1]);
    if (std::stod(cells[2]) >= -1e-9 && std::stod(cells[3]) >= -1e-9) {
      lo = std::min(lo, alpha);
      hi = std::max(hi, alpha);
    }
  }
  CHECK(std::abs(lo + 1.0) <= 0.1 + 1e-9);
  CHECK(std::abs(hi - 2.0) <= 0.1 + 1e-9);

  ScanOptions bh;
  bh.family = "bh2";
  bh.grid = 0.25;
  const ScanSpec spec = build_scan_spec(bh);
  CHECK(spec.axes.size() == 2);
  CHECK(spec.axes[0].values().size() == 25);

  ScanOptions wrong;
  wrong.family = "bh2";
  wrong.axes["gamma"] = "0";
  std::ostringstream o2, e2;
  CHECK(cmd_scan(wrong, o2, e2) == kExitInvalid);
  wrong.family = "nope";
  CHECK(cmd_scan(wrong, o2, e2) == kExitInvalid);
}

TEST_CASE("verify command") {
  VerifyOptions v;
  v.suite = "roundtrips";
  std::ostringstream out, err;
  CHECK(cmd_verify(v, out, err) == kExitOk);
  CHECK(out.str().find("[PASS] 01") == 0);

  VerifyOptions bad;
  bad.suite = "everything";
  CHECK(cmd_verify(bad, out, err) == kExitInvalid);
  bad.checks = {13};
  CHECK(cmd_verify(bad, out, err) == kExitInvalid);
}
