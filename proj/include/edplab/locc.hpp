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

#ifndef EDPLAB_LOCC_HPP
#define EDPLAB_LOCC_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "edplab/errmodels.hpp"
#include "edplab/qcore.hpp"

namespace edplab {

/// Bits communicated so far; bit k was sent in round k.
using Transcript = BitString;

Transcript extend(const Transcript& t, bool bit);

/// A local quantum instrument on one party's register. Branch b collects
/// the Kraus operators that produce classical outcome b.
struct Instrument {
  std::vector<std::vector<Matrix>> branches;

  static Instrument channel(std::vector<Matrix> kraus);
  static Instrument unitary(Matrix u);
  /// Computational-basis measurement of `qubit` (local index) after `pre`.
  static Instrument measure_qubit(int qubit, int n_local, const Matrix& pre);
  /// Outcome 1 with probability r regardless of the state.
  static Instrument coin(double r, std::size_t dim);
  /// Reduces Kraus operators on n_local + n_ancilla qubits (ancillas are
  /// the trailing, least significant qubits, prepared in |0> and traced
  /// out afterwards) to operators on the n_local register.
  static Instrument with_ancillas(const std::vector<std::vector<Matrix>>& branches,
                                  int n_local, int n_ancilla);

  std::size_t dim() const;
  /// max |sum K^dagger K - I| over all branches.
  double completeness_error() const;
  /// Throws ParameterError unless trace preserving within kDerivedTol on
  /// a register of dimension `dim`.
  void validate(std::size_t dim) const;
};

/// Seed and history dependent choice of instrument.
using InstrumentRule =
    std::function<Instrument(std::size_t seed, const Transcript& prefix)>;

/// One protocol step. A communicating step's instrument has exactly two
/// branches and its outcome is sent to the other party; a local step's
/// outcomes stay private and are discarded.
struct Step {
  Party party;
  bool communicates;
  InstrumentRule instrument;
};

struct Protocol {
  std::string name;
  int n = 0;
  /// Distribution over shared random seeds; a point mass for
  /// deterministic protocols.
  std::vector<double> seed_weights{1.0};
  std::vector<Step> steps;
  /// Alice's final decision: branch 0 = FAIL, branch 1 = SUCC. Empty
  /// means always SUCC.
  InstrumentRule accept;
  std::function<int(std::size_t seed)> output_pair = [](std::size_t) { return 0; };

  /// Communication cost: the number of communicating steps.
  int rounds() const;
  bool deterministic() const { return seed_weights.size() == 1; }
  std::size_t seed_count() const { return seed_weights.size(); }
  /// Checks the static fields (weights, n, step kinds).
  void validate() const;
};

/// Transcript-tree node after some number of rounds.
struct Node {
  Transcript transcript;
  double probability = 0.0;
  /// p_t times the conditional local states.
  Matrix alice;
  Matrix bob;

  Matrix alice_state() const;
  Matrix bob_state() const;
};

struct Leaf {
  Transcript transcript;
  double probability = 0.0;
  /// r_t: probability of SUCC given the transcript.
  double accept_probability = 0.0;
  /// Normalized output-pair state given the transcript (zero when
  /// probability is 0).
  Matrix output;
};

struct RunResult {
  /// Tree nodes level by level; level k holds 2^k nodes ordered by
  /// transcript value.
  std::vector<std::vector<Node>> levels;
  std::vector<Leaf> leaves;
  double success_probability = 0.0;
  DensityMatrix output;
  std::optional<DensityMatrix> conditional_output;

  double fidelity() const;
  /// Throws Error when the success probability is zero.
  double conditional_fidelity() const;
  const DensityMatrix& conditional() const;
};

struct RunOptions {
  bool record_nodes = true;
  bool validate_instruments = true;
};

/// Exact branch enumeration over all seeds and transcripts.
RunResult run(const Protocol& protocol, const DensityMatrix& input,
              const RunOptions& options = {});
RunResult run(const Protocol& protocol, const MixedEnsemble& input,
              const RunOptions& options = {});
/// The deterministic protocol obtained by fixing the shared seed.
RunResult run_seed(const Protocol& protocol, std::size_t seed,
                   const DensityMatrix& input, const RunOptions& options = {});

double ideal_success_probability(const Protocol& protocol);

struct ModelEvaluation {
  /// Minimum over the evaluated states. For the fidelity model this is
  /// the witness minimum, an upper estimate of the true minimum.
  double value;
  std::size_t worst_state;
  std::size_t states_evaluated;
};

ModelEvaluation protocol_fidelity(const Protocol& protocol, const ErrorModel& model,
                                  int adversarial_samples = 0,
                                  std::uint64_t seed = 0);
/// States on which the protocol never succeeds are skipped.
ModelEvaluation conditional_fidelity(const Protocol& protocol,
                                     const ErrorModel& model,
                                     int adversarial_samples = 0,
                                     std::uint64_t seed = 0);

// --- concrete protocols --------------------------------------------------

/// Output a uniformly random pair chosen by shared randomness. 0 bits.
Protocol make_random_pair(int n);
/// Output pair 0. Deterministic, 0 bits.
Protocol make_first_pair(int n);
/// s rounds of one-way parity hashing. Round k uses check pair n-1-k and
/// a shared random subset of the pairs below it; both parties fold the
/// subset parity into the check pair with CNOTs and Bob sends his
/// measured check bit. Alice accepts iff every bit matches her own.
/// Output is pair 0. Throws ParameterError unless 0 <= s < n.
Protocol make_simple_random_hash(int n, int s);
/// Shared uniformly random pair permutation, then every pair but the
/// first is measured and the outcomes are ignored (agreement is assumed
/// rather than checked). 0 bits, output pair 0.
Protocol make_random_permutation(int n);

/// Local qubit permutation unitary on n qubits: new qubit i = old perm[i].
Matrix permutation_unitary(const std::vector<int>& perm);

}  // namespace edplab

#endif  // EDPLAB_LOCC_HPP
