// Copyright 2026 The edplab Authors
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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "edplab/json_io.hpp"

namespace edplab {

namespace {

// JSON has no infinities; they become null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json report_to_json(const BoundReport& r) {
  Json params = Json::object();
  for (const auto& [key, value] : r.params) params[key] = number(value);
  Json j{{"theorem", r.theorem},
         {"params", std::move(params)},
         {"bound", number(r.bound)},
         {"achieved", number(r.achieved)},
         {"margin", number(r.margin())},
         {"pass", r.pass()},
         {"seed", r.seed}};
  j["direction"] = r.direction == Direction::Upper   ? "upper"
                   : r.direction == Direction::Lower ? "lower"
                                                     : "equal";
  j["tolerance"] = r.tolerance;
  if (r.floor) j["floor"] = number(*r.floor);
  if (!r.converged) j["converged"] = false;
  if (r.skipped) j["skipped"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json reports_to_json(const std::vector<BoundReport>& reports) {
  Json rows = Json::array();
  for (const auto& r : reports) rows.push_back(report_to_json(r));
  return Json{{"all_pass", all_pass(reports)}, {"reports", std::move(rows)}};
}

std::string reports_to_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  out << "theorem,params,bound,achieved,margin,pass,seed,note\n";
  for (const auto& r : reports) {
    std::string params;
    for (const auto& [key, value] : r.params) {
      if (!params.empty()) params += ';';
      params += key + "=" + format_number(value);
    }
    const std::string status = r.skipped ? "skipped" : (r.pass() ? "true" : "false");
    out << csv_field(r.theorem) << ',' << csv_field(params) << ','
        << format_number(r.bound) << ',' << format_number(r.achieved) << ','
        << format_number(r.margin()) << ',' << status << ',' << r.seed << ','
        << csv_field(r.note) << '\n';
  }
  return out.str();
}

}  // namespace edplab
