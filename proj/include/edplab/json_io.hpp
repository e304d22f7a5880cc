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

#ifndef EDPLAB_JSON_IO_HPP
#define EDPLAB_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "edplab/errmodels.hpp"
#include "edplab/locc.hpp"
#include "edplab/verify.hpp"

namespace edplab {

using Json = nlohmann::ordered_json;

/// Malformed input document. The message starts with the JSON path of
/// the offending field, e.g. "rounds[0].kraus_by_seed[1]: ...".
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Nested rows of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
/// Accepts [re, im] pairs or plain real numbers as entries.
Matrix matrix_from_json(const Json& j, const std::string& path = "$");

Json state_to_json(const PureState& s);
Json state_to_json(const DensityMatrix& rho);
/// {"n_alice", "n_bob", "amplitudes": [...]} or {"n_alice", "n_bob",
/// "matrix": [[...]]}; a pure state is returned as its projector.
DensityMatrix state_from_json(const Json& j, const std::string& path = "$");

Json model_to_json(const ErrorModel& model);
/// {"model": "measure_r" | "depolarization" | "fidelity", "n", and "r",
/// "p" or "epsilon"}. "measure-r" and "depolar" are accepted aliases.
ErrorModel model_from_json(const Json& j, const std::string& path = "$");

/// Protocol description. Either {"builtin": "first_pair" | "random_pair" |
/// "simple_random_hash" | "random_permutation", "n", "s"} or an explicit
/// {"n", "shared_randomness", "rounds", "accept_rule", "output_pair"}.
Protocol protocol_from_json(const Json& j);

Json run_result_to_json(const RunResult& r);

Json report_to_json(const BoundReport& r);
Json reports_to_json(const std::vector<BoundReport>& reports);
/// One row per report: theorem,params,bound,achieved,margin,pass,seed,note.
std::string reports_to_csv(const std::vector<BoundReport>& reports);

Json read_json_file(const std::string& path);

}  // namespace edplab

#endif  // EDPLAB_JSON_IO_HPP
