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

#include <string>

#include <gtest/gtest.h>

#include "edplab/json_io.hpp"
#include "edplab/random.hpp"

namespace edplab {
namespace {

const std::string kConfigs = std::string(EDPLAB_SOURCE_DIR) + "/configs/";

// Runs `f` and returns the ParseError message, or "" when nothing throws.
template <typename F>
std::string parse_error(F f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(MatrixJson, RoundTrip) {
  Rng rng(3);
  const Matrix m = random_unitary(4, rng);
  const Matrix back = matrix_from_json(matrix_to_json(m));
  EXPECT_EQ(back, m);
}

TEST(MatrixJson, AcceptsRealEntriesAndReportsPaths) {
  const Matrix m = matrix_from_json(Json::parse("[[1, 0], [0, [0, 1]]]"));
  EXPECT_EQ(m(1, 1), Complex(0, 1));
  const std::string msg = parse_error([] { matrix_from_json(Json::parse("[[1, 0], [0]]")); });
  EXPECT_NE(msg.find("$[1]"), std::string::npos) << msg;
  const std::string bad = parse_error([] { matrix_from_json(Json::parse("[[1, \"x\"]]")); });
  EXPECT_NE(bad.find("$[0][1]"), std::string::npos) << bad;
}

TEST(StateJson, PureAndMixed) {
  const PureState phi = bell_state(Bell::PsiMinus);
  const DensityMatrix a = state_from_json(state_to_json(phi));
  EXPECT_NEAR((a.matrix() - DensityMatrix::from_pure(phi).matrix()).norm(), 0.0, 1e-15);
  const DensityMatrix mixed = depolarized_pair(0.3);
  const DensityMatrix b = state_from_json(state_to_json(mixed));
  EXPECT_EQ(b.matrix(), mixed.matrix());
  EXPECT_FALSE(parse_error([] {
                 state_from_json(Json::parse(R"({"n_alice": 1, "n_bob": 1, "amplitudes": [1, 1, 0, 0]})"));
               }).empty());
}

TEST(ModelJson, RoundTripAndAliases) {
  for (const ErrorModel& m : {ErrorModel(MeasureR{3, 1}), ErrorModel(Depolarization{2, 0.4}),
                              ErrorModel(FidelityModel{2, 0.25})}) {
    const Json j = model_to_json(m);
    EXPECT_EQ(model_to_json(model_from_json(j)), j);
  }
  EXPECT_EQ(model_from_json(Json::parse(R"({"model": "measure-r", "n": 2, "r": 1})")).kind(),
            "measure_r");
  EXPECT_EQ(model_from_json(Json::parse(R"({"model": "depolar", "n": 2, "p": 0.4})")).kind(),
            "depolarization");
  const std::string msg =
      parse_error([] { model_from_json(Json::parse(R"({"model": "measure_r", "n": 2})")); });
  EXPECT_NE(msg.find("$.r"), std::string::npos) << msg;
  EXPECT_FALSE(parse_error([] {
                 model_from_json(Json::parse(R"({"model": "measure_r", "n": 2, "r": 5})"));
               }).empty());
}

TEST(ProtocolJson, Builtins) {
  const Protocol p = protocol_from_json(Json::parse(R"({"builtin": "random_pair", "n": 3})"));
  EXPECT_EQ(p.seed_count(), 3u);
  const Protocol h =
      protocol_from_json(Json::parse(R"({"builtin": "simple_random_hash", "n": 3, "s": 2})"));
  EXPECT_EQ(h.rounds(), 2);
  EXPECT_FALSE(parse_error([] {
                 protocol_from_json(Json::parse(R"({"builtin": "simple_random_hash", "n": 2, "s": 2})"));
               }).empty());
  const std::string msg =
      parse_error([] { protocol_from_json(Json::parse(R"({"builtin": "nope", "n": 2})")); });
  EXPECT_NE(msg.find("$.builtin"), std::string::npos) << msg;
}

TEST(ProtocolJson, ParityCheckFile) {
  const Protocol p = protocol_from_json(read_json_file(kConfigs + "parity_check.json"));
  EXPECT_EQ(p.name, "parity_check");
  EXPECT_EQ(p.rounds(), 2);
  EXPECT_NEAR(ideal_success_probability(p), 1.0, 1e-12);
  // An X error on pair 1 always flips the comparison.
  const std::vector<int> bob1{3};
  const Vector v = apply(pauli(Pauli::X), bob1, PureState::epr_pairs(2).amplitudes(), 4);
  const RunResult r = run(p, DensityMatrix::from_pure(PureState(Partition{2, 2}, v)));
  EXPECT_NEAR(r.success_probability, 0.0, 1e-12);
}

TEST(ProtocolJson, SharedRandomnessAndPerSeedTables) {
  const Json j = Json::parse(R"({
    "n": 2,
    "shared_randomness": [0.5, 0.5],
    "accept_rule": {"type": "table", "r": [[1.0], [0.5]]},
    "output_pair": {"by_seed": [0, 1]}
  })");
  const Protocol p = protocol_from_json(j);
  EXPECT_EQ(p.seed_count(), 2u);
  EXPECT_EQ(p.output_pair(1), 1);
  const RunResult r = run(p, DensityMatrix::from_pure(PureState::epr_pairs(2)));
  EXPECT_NEAR(r.success_probability, 0.75, 1e-12);
}

TEST(ProtocolJson, LocalRoundsAndAncillas) {
  // Bob applies a CNOT from his pair-0 qubit onto an ancilla and
  // measures it privately: the ancilla is traced out, the pair dephases.
  const Json j = Json::parse(R"({
    "n": 1,
    "rounds": [{"party": "bob", "bit": false, "ancillas": 1,
                "kraus": [[[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]],
                          [[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,1,0]]]]}]
  })");
  const Protocol p = protocol_from_json(j);
  EXPECT_EQ(p.rounds(), 0);
  const RunResult r = run(p, DensityMatrix::from_pure(PureState::epr_pairs(1)));
  EXPECT_NEAR(r.fidelity(), 0.5, 1e-12);
}

TEST(ProtocolJson, ErrorsCarryFieldPaths) {
  const auto path_of = [](const char* text) {
    return parse_error([&] { protocol_from_json(Json::parse(text)); });
  };
  EXPECT_NE(path_of(R"({"n": 1, "rounds": [{"party": "carol", "kraus": []}]})")
                .find("$.rounds[0].party"),
            std::string::npos);
  EXPECT_NE(path_of(R"({"n": 1, "shared_randomness": [0.5, 0.5],
                        "rounds": [{"party": "alice", "kraus_by_seed": [[]]}]})")
                .find("$.rounds[0].kraus_by_seed"),
            std::string::npos);
  EXPECT_NE(path_of(R"({"n": 1, "rounds": [{"party": "alice",
                        "kraus": [[[[1, 0], [0, 1]]], [[[1, 0], [0, 1]]]]}]})")
                .find("$.rounds[0].kraus"),
            std::string::npos);
  EXPECT_NE(path_of(R"({"n": 1, "accept_rule": {"type": "table", "r": [2]}})")
                .find("$.accept_rule.r[0]"),
            std::string::npos);
  EXPECT_NE(path_of(R"({"n": 2, "output_pair": 5})").find("$.output_pair"), std::string::npos);
  EXPECT_NE(path_of(R"({"rounds": []})").find("$.n"), std::string::npos);
}

TEST(RunResultJson, MirrorsLeaves) {
  const Protocol p = make_simple_random_hash(2, 1);
  const RunResult r = run(p, depolarization_state(2, 0.2));
  const Json j = run_result_to_json(r);
  EXPECT_EQ(j["leaves"].size(), 2u);
  EXPECT_EQ(j["leaves"][0]["transcript"], "0");
  EXPECT_DOUBLE_EQ(j["success_probability"].get<double>(), r.success_probability);
  EXPECT_DOUBLE_EQ(j["conditional_fidelity"].get<double>(), r.conditional_fidelity());
}

TEST(Reports, JsonAndCsvShapes) {
  BoundReport a = make_report("neg_measure_r", {{"n", 2}, {"r", 1}}, 0.75, 0.75,
                              Direction::Upper, 1e-6);
  a.seed = 7;
  a.floor = 0.75;
  BoundReport b = make_report("pos_fidelity", {{"n", 2}}, 0.5, 0.4, Direction::Lower, 1e-9);
  b.note = "has, comma";
  const Json j = reports_to_json({a, b});
  EXPECT_FALSE(j["all_pass"].get<bool>());
  const Json& row = j["reports"][0];
  EXPECT_EQ(row["theorem"], "neg_measure_r");
  EXPECT_EQ(row["params"]["r"], 1.0);
  EXPECT_EQ(row["seed"], 7);
  EXPECT_TRUE(row["pass"].get<bool>());
  for (const char* key : {"theorem", "params", "bound", "achieved", "margin", "pass", "seed"}) {
    EXPECT_TRUE(row.contains(key)) << key;
  }
  const std::string csv = reports_to_csv({a, b});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "theorem,params,bound,achieved,margin,pass,seed,note");
  EXPECT_NE(csv.find("neg_measure_r,n=2;r=1,0.75,0.75,0,true,7,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\"has, comma\""), std::string::npos);
}

TEST(Files, MissingFileIsAnIoError) {
  EXPECT_THROW(read_json_file("/nonexistent/edplab.json"), IoError);
}

}  // namespace
}  // namespace edplab
