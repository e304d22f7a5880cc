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

#include "edplab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <memory>

namespace edplab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

std::string at(const std::string& path, const std::string& key) {
  return path + "." + key;
}

std::string at(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& require(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains(key)) fail(at(path, key), "missing field");
  return j.at(key);
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

const Json& get_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Complex entry_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(path, "expected a number or a [re, im] pair");
}

Json entry_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(entry_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  get_array(j, path);
  if (j.empty()) fail(path, "empty matrix");
  const std::size_t cols = get_array(j[0], at(path, 0)).size();
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = get_array(j[i], at(path, i));
    if (row.size() != cols) fail(at(path, i), "ragged matrix row");
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          entry_from_json(row[k], at(at(path, i), k));
    }
  }
  return m;
}

Json state_to_json(const PureState& s) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
    amps.push_back(entry_to_json(s.amplitudes()(i)));
  }
  return Json{{"n_alice", s.partition().n_alice},
              {"n_bob", s.partition().n_bob},
              {"amplitudes", std::move(amps)}};
}

Json state_to_json(const DensityMatrix& rho) {
  return Json{{"n_alice", rho.partition().n_alice},
              {"n_bob", rho.partition().n_bob},
              {"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix state_from_json(const Json& j, const std::string& path) {
  const Partition part{get_int(require(j, path, "n_alice"), at(path, "n_alice")),
                       get_int(require(j, path, "n_bob"), at(path, "n_bob"))};
  try {
    if (j.contains("amplitudes")) {
      const Json& a = get_array(j.at("amplitudes"), at(path, "amplitudes"));
      Vector v(static_cast<Eigen::Index>(a.size()));
      for (std::size_t i = 0; i < a.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = entry_from_json(a[i], at(at(path, "amplitudes"), i));
      }
      return DensityMatrix::from_pure(PureState(part, std::move(v)));
    }
    if (j.contains("matrix")) {
      return DensityMatrix(part, matrix_from_json(j.at("matrix"), at(path, "matrix")));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path, "state needs \"amplitudes\" or \"matrix\"");
}

Json model_to_json(const ErrorModel& model) {
  Json j{{"model", model.kind()}, {"n", model.n()}};
  if (const auto* m = std::get_if<MeasureR>(&model.variant())) {
    j["r"] = m->r;
  } else if (const auto* d = std::get_if<Depolarization>(&model.variant())) {
    j["p"] = d->p;
  } else {
    j["epsilon"] = std::get<FidelityModel>(model.variant()).epsilon;
  }
  return j;
}

ErrorModel model_from_json(const Json& j, const std::string& path) {
  const Json& kind_j = require(j, path, "model");
  if (!kind_j.is_string()) fail(at(path, "model"), "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const int n = get_int(require(j, path, "n"), at(path, "n"));
  try {
    if (kind == "measure_r" || kind == "measure-r") {
      return ErrorModel(MeasureR{n, get_int(require(j, path, "r"), at(path, "r"))});
    }
    if (kind == "depolarization" || kind == "depolar") {
      return ErrorModel(Depolarization{n, get_number(require(j, path, "p"), at(path, "p"))});
    }
    if (kind == "fidelity") {
      return ErrorModel(FidelityModel{
          n, get_number(require(j, path, "epsilon"), at(path, "epsilon"))});
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(at(path, "model"), "unknown model \"" + kind + "\"");
}

// --- protocols ---------------------------------------------------------------

namespace {

Protocol builtin_protocol(const Json& j) {
  const std::string name = j.at("builtin").get<std::string>();
  const int n = get_int(require(j, "$", "n"), "$.n");
  try {
    if (name == "first_pair") return make_first_pair(n);
    if (name == "random_pair") return make_random_pair(n);
    if (name == "random_permutation") return make_random_permutation(n);
    if (name == "simple_random_hash") {
      return make_simple_random_hash(n, get_int(require(j, "$", "s"), "$.s"));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail("$", e.what());
  }
  fail("$.builtin", "unknown builtin protocol \"" + name + "\"");
}

// branches: [[K, K, ...], [K, ...]] on n + ancillas local qubits.
Instrument instrument_from_json(const Json& j, const std::string& path, int n,
                                int ancillas) {
  get_array(j, path);
  std::vector<std::vector<Matrix>> branches;
  for (std::size_t b = 0; b < j.size(); ++b) {
    const std::string bp = at(path, b);
    std::vector<Matrix> kraus;
    for (std::size_t k = 0; k < get_array(j[b], bp).size(); ++k) {
      kraus.push_back(matrix_from_json(j[b][k], at(bp, k)));
    }
    branches.push_back(std::move(kraus));
  }
  try {
    Instrument inst = Instrument::with_ancillas(branches, n, ancillas);
    inst.validate(std::size_t{1} << n);
    return inst;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

// Per-seed instruments from "kraus_by_seed", or one shared "kraus" list.
std::vector<Instrument> instruments_by_seed(const Json& j, const std::string& path,
                                            int n, int ancillas, std::size_t seeds) {
  std::vector<Instrument> out;
  if (j.contains("kraus_by_seed")) {
    const std::string kp = at(path, "kraus_by_seed");
    const Json& list = get_array(j.at("kraus_by_seed"), kp);
    if (list.size() != seeds) {
      fail(kp, "expected " + std::to_string(seeds) + " entries, one per seed");
    }
    for (std::size_t s = 0; s < seeds; ++s) {
      out.push_back(instrument_from_json(list[s], at(kp, s), n, ancillas));
    }
  } else if (j.contains("kraus")) {
    const Instrument shared = instrument_from_json(j.at("kraus"), at(path, "kraus"), n, ancillas);
    out.assign(seeds, shared);
  } else {
    fail(path, "needs \"kraus_by_seed\" or \"kraus\"");
  }
  return out;
}

}  // namespace

Protocol protocol_from_json(const Json& j) {
  if (!j.is_object()) fail("$", "expected an object");
  if (j.contains("builtin")) {
    if (!j.at("builtin").is_string()) fail("$.builtin", "expected a string");
    return builtin_protocol(j);
  }
  Protocol p;
  p.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>()
                                                          : "custom";
  p.n = get_int(require(j, "$", "n"), "$.n");
  if (p.n < 1) fail("$.n", "needs n >= 1");
  try {
    check_capacity(2 * p.n);
  } catch (const Error& e) {
    fail("$.n", e.what());
  }
  if (j.contains("shared_randomness")) {
    const Json& w = get_array(j.at("shared_randomness"), "$.shared_randomness");
    if (w.empty()) fail("$.shared_randomness", "empty distribution");
    p.seed_weights.clear();
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double v = get_number(w[i], at("$.shared_randomness", i));
      if (v < 0) fail(at("$.shared_randomness", i), "negative weight");
      p.seed_weights.push_back(v);
      total += v;
    }
    if (std::abs(total - 1.0) > kDerivedTol) fail("$.shared_randomness", "weights must sum to 1");
  }
  const std::size_t seeds = p.seed_count();

  int sent = 0;
  if (j.contains("rounds")) {
    const Json& rounds = get_array(j.at("rounds"), "$.rounds");
    for (std::size_t k = 0; k < rounds.size(); ++k) {
      const std::string rp = at("$.rounds", k);
      const Json& round = rounds[k];
      const Json& party_j = require(round, rp, "party");
      const std::string party = party_j.is_string() ? party_j.get<std::string>() : "";
      if (party != "alice" && party != "bob") fail(at(rp, "party"), "expected \"alice\" or \"bob\"");
      bool bit = true;
      if (round.contains("bit")) {
        if (!round.at("bit").is_boolean()) fail(at(rp, "bit"), "expected a boolean");
        bit = round.at("bit").get<bool>();
      }
      const int ancillas =
          round.contains("ancillas") ? get_int(round.at("ancillas"), at(rp, "ancillas")) : 0;
      if (ancillas < 0) fail(at(rp, "ancillas"), "negative ancilla count");
      auto table = std::make_shared<std::vector<Instrument>>(
          instruments_by_seed(round, rp, p.n, ancillas, seeds));
      for (std::size_t s = 0; s < seeds; ++s) {
        Instrument& inst = (*table)[s];
        if (bit && inst.branches.size() != 2) {
          fail(rp, "a communicating round needs exactly two branches");
        }
        if (!bit) {
          std::vector<Matrix> merged;
          for (auto& branch : inst.branches) {
            for (auto& k2 : branch) merged.push_back(std::move(k2));
          }
          inst = Instrument::channel(std::move(merged));
        }
      }
      p.steps.push_back(Step{party == "alice" ? Party::Alice : Party::Bob, bit,
                             [table](std::size_t seed, const Transcript&) {
                               return (*table)[seed];
                             }});
      sent += bit;
    }
  }
  if (sent > 16) fail("$.rounds", "at most 16 communicating rounds are supported");

  if (j.contains("accept_rule")) {
    const std::string ap = "$.accept_rule";
    const Json& rule = j.at("accept_rule");
    const Json& type_j = require(rule, ap, "type");
    const std::string type = type_j.is_string() ? type_j.get<std::string>() : "";
    const std::size_t dim = std::size_t{1} << p.n;
    const std::size_t leaves = std::size_t{1} << sent;
    if (type == "table") {
      const Json& r = get_array(require(rule, ap, "r"), at(ap, "r"));
      // Either one row shared by every seed or one row per seed.
      const bool per_seed = !r.empty() && r[0].is_array();
      if (per_seed && r.size() != seeds) fail(at(ap, "r"), "expected one row per seed");
      auto table = std::make_shared<std::vector<std::vector<double>>>();
      for (std::size_t s = 0; s < (per_seed ? seeds : 1); ++s) {
        const std::string row_path = per_seed ? at(at(ap, "r"), s) : at(ap, "r");
        const Json& row = per_seed ? get_array(r[s], row_path) : r;
        if (row.size() != leaves) {
          fail(row_path, "expected " + std::to_string(leaves) + " accept probabilities");
        }
        std::vector<double> values;
        for (std::size_t t = 0; t < leaves; ++t) {
          const double v = get_number(row[t], at(row_path, t));
          if (v < 0.0 || v > 1.0) fail(at(row_path, t), "probability outside [0, 1]");
          values.push_back(v);
        }
        table->push_back(std::move(values));
      }
      p.accept = [table, dim](std::size_t seed, const Transcript& t) {
        const auto& row = table->size() == 1 ? table->front() : (*table)[seed];
        return Instrument::coin(row[static_cast<std::size_t>(t.bits)], dim);
      };
    } else if (type == "instrument") {
      const int ancillas =
          rule.contains("ancillas") ? get_int(rule.at("ancillas"), at(ap, "ancillas")) : 0;
      auto table = std::make_shared<std::vector<Instrument>>(
          instruments_by_seed(rule, ap, p.n, ancillas, seeds));
      for (const auto& inst : *table) {
        if (inst.branches.size() != 2) fail(ap, "accept instrument needs [FAIL, SUCC] branches");
      }
      p.accept = [table](std::size_t seed, const Transcript&) { return (*table)[seed]; };
    } else if (type != "always") {
      fail(at(ap, "type"), "expected \"always\", \"table\" or \"instrument\"");
    }
  }

  if (j.contains("output_pair")) {
    const Json& o = j.at("output_pair");
    if (o.is_number_integer()) {
      const int pair = o.get<int>();
      if (pair < 0 || pair >= p.n) fail("$.output_pair", "pair index out of range");
      p.output_pair = [pair](std::size_t) { return pair; };
    } else {
      const Json& list = get_array(require(o, "$.output_pair", "by_seed"),
                                   "$.output_pair.by_seed");
      if (list.size() != seeds) fail("$.output_pair.by_seed", "expected one entry per seed");
      auto pairs = std::make_shared<std::vector<int>>();
      for (std::size_t s = 0; s < seeds; ++s) {
        const int pair = get_int(list[s], at("$.output_pair.by_seed", s));
        if (pair < 0 || pair >= p.n) fail(at("$.output_pair.by_seed", s), "pair index out of range");
        pairs->push_back(pair);
      }
      p.output_pair = [pairs](std::size_t s) { return (*pairs)[s]; };
    }
  }
  return p;
}

// --- results -------------------------------------------------------------------

Json run_result_to_json(const RunResult& r) {
  Json leaves = Json::array();
  for (const Leaf& leaf : r.leaves) {
    Json entry{{"transcript", leaf.transcript.to_string()},
               {"probability", leaf.probability},
               {"accept_probability", leaf.accept_probability}};
    if (leaf.probability > 0) {
      entry["fidelity"] = base_fidelity_raw(leaf.output, Partition{1, 1});
      entry["output"] = matrix_to_json(leaf.output);
    } else {
      entry["fidelity"] = nullptr;
      entry["output"] = nullptr;
    }
    leaves.push_back(std::move(entry));
  }
  Json j{{"success_probability", r.success_probability},
         {"fidelity", r.fidelity()},
         {"conditional_fidelity", nullptr},
         {"output", matrix_to_json(r.output.matrix())},
         {"conditional_output", nullptr},
         {"leaves", std::move(leaves)}};
  if (r.conditional_output) {
    j["conditional_fidelity"] = r.conditional_fidelity();
    j["conditional_output"] = matrix_to_json(r.conditional().matrix());
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace edplab
