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

#include "sepmaps/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

#include <fmt/format.h>

#include "json.hpp"

namespace sepmaps {

namespace {

using ojson = nlohmann::ordered_json;
using PathElem = std::variant<std::string, std::size_t>;

// Minimal JSON walker used only to map a path like matrix[3][1] back to a
// source line. The text has already been validated by the real parser.
class Locator {
 public:
  explicit Locator(const std::string& text) : text_(text) {}

  std::size_t find(const std::vector<PathElem>& path) const {
    std::size_t pos = skip_ws(0);
    for (const PathElem& elem : path) {
      if (pos >= text_.size()) return std::string::npos;
      pos = std::holds_alternative<std::string>(elem)
                ? member(pos, std::get<std::string>(elem))
                : element(pos, std::get<std::size_t>(elem));
      if (pos == std::string::npos) return pos;
    }
    return pos;
  }

  int line_of(std::size_t offset) const {
    if (offset == std::string::npos) offset = text_.size();
    offset = std::min(offset, text_.size());
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + offset, '\n'));
  }

 private:
  std::size_t skip_ws(std::size_t p) const {
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p;
  }

  std::size_t skip_string(std::size_t p) const {  // p at opening quote
    for (++p; p < text_.size(); ++p) {
      if (text_[p] == '\\') {
        ++p;
      } else if (text_[p] == '"') {
        return p + 1;
      }
    }
    return p;
  }

  std::size_t skip_value(std::size_t p) const {
    p = skip_ws(p);
    if (p >= text_.size()) return p;
    if (text_[p] == '"') return skip_string(p);
    if (text_[p] == '{' || text_[p] == '[') {
      int depth = 0;
      while (p < text_.size()) {
        const char c = text_[p];
        if (c == '"') {
          p = skip_string(p);
          continue;
        }
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']') {
          if (--depth == 0) return p + 1;
        }
        ++p;
      }
      return p;
    }
    while (p < text_.size() && text_[p] != ',' && text_[p] != '}' && text_[p] != ']' &&
           !std::isspace(static_cast<unsigned char>(text_[p]))) {
      ++p;
    }
    return p;
  }

  std::size_t member(std::size_t p, const std::string& key) const {
    if (text_[p] != '{') return std::string::npos;
    p = skip_ws(p + 1);
    while (p < text_.size() && text_[p] == '"') {
      const std::size_t end = skip_string(p);
      const std::string name = text_.substr(p + 1, end - p - 2);
      p = skip_ws(end);
      if (p >= text_.size() || text_[p] != ':') return std::string::npos;
      p = skip_ws(p + 1);
      if (name == key) return p;
      p = skip_ws(skip_value(p));
      if (p < text_.size() && text_[p] == ',') p = skip_ws(p + 1);
    }
    return std::string::npos;
  }

  std::size_t element(std::size_t p, std::size_t index) const {
    if (text_[p] != '[') return std::string::npos;
    p = skip_ws(p + 1);
    for (std::size_t i = 0; p < text_.size() && text_[p] != ']'; ++i) {
      if (i == index) return p;
      p = skip_ws(skip_value(p));
      if (p < text_.size() && text_[p] == ',') p = skip_ws(p + 1);
    }
    return std::string::npos;
  }

  const std::string& text_;
};

std::string path_string(const std::vector<PathElem>& path) {
  std::string out;
  for (const PathElem& e : path) {
    if (std::holds_alternative<std::string>(e)) {
      if (!out.empty()) out += '.';
      out += std::get<std::string>(e);
    } else {
      out += '[' + std::to_string(std::get<std::size_t>(e)) + ']';
    }
  }
  return out;
}

[[noreturn]] void fail_at(const Locator& loc, const std::vector<PathElem>& path,
                          const std::string& what, ErrorCode code = ErrorCode::Parse) {
  // Point at the deepest prefix of the path that exists in the text.
  std::size_t offset = std::string::npos;
  for (std::size_t len = path.size(); len > 0 && offset == std::string::npos; --len) {
    offset = loc.find({path.begin(), path.begin() + static_cast<long>(len)});
  }
  throw Error(code, "line " + std::to_string(loc.line_of(offset)) + ", field '" +
                        path_string(path) + "': " + what);
}

ojson tolerances_json(const ToleranceConfig& tol) {
  ojson t;
  t["psd_tol"] = tol.psd_tol;
  t["herm_tol"] = tol.herm_tol;
  t["inverse_singularity_tol"] = tol.inverse_singularity_tol;
  return t;
}

ojson params_json(const ParamList& params) {
  ojson p = ojson::object();
  for (const auto& [k, v] : params) p[k] = v;
  return p;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

std::string write_state_json(const StateFile& file) {
  const BipartiteOperator& s = file.state;
  const int size = s.size();
  std::ostringstream out;
  out << "{\n";
  out << "  \"schema\": " << kSchemaVersion << ",\n";
  out << "  \"dims\": [" << s.dims().m << ", " << s.dims().n << "],\n";
  out << "  \"matrix\": [\n";
  for (int r = 0; r < size; ++r) {
    out << "    [";
    for (int c = 0; c < size; ++c) {
      const Complex z = s(r, c);
      out << (c ? ", " : "") << '[' << num(z.real()) << ", " << num(z.imag()) << ']';
    }
    out << ']' << (r + 1 < size ? "," : "") << '\n';
  }
  out << "  ],\n";
  ojson meta;
  meta["label"] = file.label;
  meta["source"] = file.source;
  out << "  \"metadata\": " << meta.dump() << "\n";
  out << "}\n";
  return out.str();
}

StateFile parse_state_json(const std::string& text, const ToleranceConfig& tol) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    const Locator loc(text);
    throw Error(ErrorCode::Parse,
                "line " + std::to_string(loc.line_of(e.byte == 0 ? 0 : e.byte - 1)) +
                    ": malformed JSON (" + e.what() + ")");
  }
  const Locator loc(text);
  if (!doc.is_object()) fail_at(loc, {}, "top level must be an object");

  if (!doc.contains("schema")) fail_at(loc, {"schema"}, "missing");
  if (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != kSchemaVersion) {
    fail_at(loc, {"schema"}, "expected " + std::to_string(kSchemaVersion));
  }

  if (!doc.contains("dims")) fail_at(loc, {"dims"}, "missing");
  const ojson& jd = doc["dims"];
  if (!jd.is_array() || jd.size() != 2) fail_at(loc, {"dims"}, "expected [m, n]");
  int mn[2];
  for (std::size_t i = 0; i < 2; ++i) {
    if (!jd[i].is_number_integer() || jd[i].get<long>() < 1 || jd[i].get<long>() > 4096) {
      fail_at(loc, {"dims", i}, "expected a positive integer");
    }
    mn[i] = jd[i].get<int>();
  }
  const Dims dims(mn[0], mn[1]);
  const auto size = static_cast<std::size_t>(dims.total());

  if (!doc.contains("matrix")) fail_at(loc, {"matrix"}, "missing");
  const ojson& jm = doc["matrix"];
  if (!jm.is_array() || jm.size() != size) {
    fail_at(loc, {"matrix"}, "expected " + std::to_string(size) + " rows");
  }
  Matrix m(dims.total(), dims.total());
  for (std::size_t r = 0; r < size; ++r) {
    const ojson& row = jm[r];
    if (!row.is_array() || row.size() != size) {
      fail_at(loc, {"matrix", r}, "expected " + std::to_string(size) + " entries");
    }
    for (std::size_t c = 0; c < size; ++c) {
      const ojson& z = row[c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        fail_at(loc, {"matrix", r, c}, "expected [re, im]");
      }
      const double re = z[0].get<double>();
      const double im = z[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        fail_at(loc, {"matrix", r, c}, "non-finite entry");
      }
      m(static_cast<long>(r), static_cast<long>(c)) = Complex(re, im);
    }
  }

  StateFile out;
  if (doc.contains("metadata")) {
    const ojson& meta = doc["metadata"];
    if (!meta.is_object()) fail_at(loc, {"metadata"}, "expected an object");
    for (const char* key : {"label", "source"}) {
      if (!meta.contains(key)) continue;
      if (!meta[key].is_string()) fail_at(loc, {"metadata", key}, "expected a string");
      (std::string(key) == "label" ? out.label : out.source) = meta[key].get<std::string>();
    }
  }

  const double defect = hermiticity_defect(m);
  if (defect > tol.herm_tol) {
    fail_at(loc, {"matrix"},
            "not Hermitian (||X - X^dag||_max = " + num(defect) + ")",
            ErrorCode::NotHermitian);
  }
  out.state = BipartiteOperator(dims, std::move(m));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Parse, "cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw Error(ErrorCode::Parse, "write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

StateFile load_state_file(const std::string& path, const ToleranceConfig& tol) {
  try {
    return parse_state_json(read_text_file(path), tol);
  } catch (const Error& e) {
    // Drop the "Code: " prefix that Error adds, so it is not repeated.
    const std::string what = e.what();
    const std::size_t skip = to_string(e.code()).size() + 2;
    throw Error(e.code(), path + ": " + what.substr(std::min(skip, what.size())));
  }
}

void save_state_file(const std::string& path, const StateFile& file) {
  write_file_atomic(path, write_state_json(file));
}

std::string report_to_json(const CriterionReport& report, const ReportConfig& config,
                           const std::string& label) {
  ojson doc;
  doc["schema"] = kSchemaVersion;
  doc["tool"] = "sepmaps";
  doc["version"] = kToolVersion;

  ojson input;
  input["label"] = label;
  input["dims"] = {report.digest.dims.m, report.digest.dims.n};
  input["trace"] = report.digest.trace;
  input["purity"] = report.digest.purity;
  input["min_eigenvalue"] = report.digest.min_eigenvalue;
  doc["input"] = input;

  doc["tolerances"] = tolerances_json(config.tol);

  ojson defaults;
  defaults["selected"] = config.selected.empty()
                             ? ojson(criterion_names())
                             : ojson(std::vector<std::string>(config.selected.begin(),
                                                              config.selected.end()));
  defaults["criterion1_alphas"] = config.criterion1_alphas;
  defaults["boundary_alphas"] = config.boundary_alphas;
  defaults["criterion3_params"] = config.criterion3_params;
  defaults["criterion5_alphas"] = config.criterion5_alphas.empty()
                                      ? ojson("-2N/(3N-1), -0.5, 0.5, 1")
                                      : ojson(config.criterion5_alphas);
  defaults["schmidt_alphas"] = config.schmidt_alphas.empty()
                                   ? ojson("-1, 2(dn-1)/(d-n)")
                                   : ojson(config.schmidt_alphas);
  doc["parameters"] = defaults;

  ojson verdicts = ojson::array();
  for (const Verdict& v : report.verdicts) {
    ojson jv;
    jv["criterion"] = v.criterion;
    jv["kind"] = std::string(to_string(v.kind));
    if (v.kind == VerdictKind::SchmidtNumberAtMost) jv["schmidt_n"] = v.schmidt_n;
    jv["margin"] = v.error.empty() ? ojson(v.margin) : ojson(nullptr);
    jv["params"] = params_json(v.params);
    if (!v.error.empty()) jv["error"] = v.error;
    verdicts.push_back(std::move(jv));
  }
  doc["verdicts"] = std::move(verdicts);

  ojson summary;
  summary["kind"] = std::string(to_string(report.summary));
  if (report.summary == VerdictKind::SchmidtNumberAtMost) {
    summary["schmidt_n"] = report.summary_schmidt_n;
  }
  summary["conflict"] = report.conflict;
  if (report.conflict) summary["detail"] = report.conflict_detail;
  doc["summary"] = summary;
  return doc.dump(2) + "\n";
}

std::string scan_to_csv(const ScanSpec& spec, const std::vector<ScanResult>& results,
                        bool with_region) {
  std::string out = "family";
  for (const auto& name : scan_param_names(spec.family)) out += "," + name;
  out += ",worst_psd_margin,worst_ppt_margin,n_samples";
  if (with_region) out += ",theorem_inside,theorem_slack,binding_constraint";
  out += '\n';
  for (const ScanResult& r : results) {
    out += std::string(to_string(r.family));
    for (double v : r.point) out += "," + num(v);
    out += "," + num(r.worst_psd_margin) + "," + num(r.worst_ppt_margin) + "," +
           std::to_string(r.n_samples);
    if (with_region) {
      out += fmt::format(",{},{},\"{}\"", r.theorem_region.inside ? 1 : 0,
                         num(r.theorem_region.slack), r.theorem_region.binding_constraint);
    }
    out += '\n';
  }
  return out;
}

}  // namespace sepmaps
