// Copyright 2026 The submdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "submdp/harness.hpp"

namespace submdp {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

// Fields are ids from the config; quote only if needed.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

void write_file(const std::filesystem::path& path, auto&& writer) {
  if (path.empty()) return;
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  writer(out);
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace

void write_results_csv(std::ostream& out, const ExperimentResults& results) {
  out << "env,algorithm,repetition,seed,value,wall_ms\n";
  for (const ResultRow& r : results.rows) {
    out << csv_field(r.env) << ',' << csv_field(r.algorithm) << ',' << r.repetition << ',' << r.seed << ','
        << format_number(r.value) << ',' << format_number(r.wall_ms) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ExperimentResults& results) {
  out << "env,algorithm,mean,std,n\n";
  for (const SummaryRow& s : results.summary) {
    out << csv_field(s.env) << ',' << csv_field(s.algorithm) << ',' << format_number(s.mean) << ','
        << format_number(s.std) << ',' << s.n << '\n';
  }
}

void write_results_json(std::ostream& out, const ExperimentResults& results) {
  nlohmann::ordered_json doc;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ResultRow& r : results.rows) {
    nlohmann::ordered_json j;
    j["env"] = r.env;
    j["algorithm"] = r.algorithm;
    j["repetition"] = r.repetition;
    j["seed"] = r.seed;
    j["value"] = number(r.value);
    j["wall_ms"] = number(r.wall_ms);
    if (r.error) j["error"] = *r.error;
    doc["rows"].push_back(std::move(j));
  }
  doc["summary"] = nlohmann::ordered_json::array();
  for (const SummaryRow& s : results.summary) {
    doc["summary"].push_back(
        {{"env", s.env}, {"algorithm", s.algorithm}, {"mean", number(s.mean)}, {"std", number(s.std)}, {"n", s.n}});
  }
  out << doc.dump(2) << '\n';
}

void emit_results(const ExperimentConfig& cfg, const ExperimentResults& results) {
  if (results.rows.empty()) throw Error("no results to emit");
  write_file(cfg.output_csv, [&](std::ostream& o) { write_results_csv(o, results); });
  write_file(cfg.summary_csv, [&](std::ostream& o) { write_summary_csv(o, results); });
  write_file(cfg.json, [&](std::ostream& o) { write_results_json(o, results); });
}

}  // namespace submdp
