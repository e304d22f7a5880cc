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

#include "edplab/locc.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace edplab {

Transcript extend(const Transcript& t, bool bit) {
  if (t.length >= 63) throw CapacityError("transcript too long");
  Transcript out = t;
  if (bit) out.bits |= std::uint64_t{1} << t.length;
  ++out.length;
  return out;
}

// --- instruments -----------------------------------------------------------

Instrument Instrument::channel(std::vector<Matrix> kraus) {
  return Instrument{{std::move(kraus)}};
}

Instrument Instrument::unitary(Matrix u) { return Instrument{{{std::move(u)}}}; }

Instrument Instrument::measure_qubit(int qubit, int n_local, const Matrix& pre) {
  const auto d = Eigen::Index{1} << n_local;
  if (pre.rows() != d || pre.cols() != d) {
    throw ShapeError("pre-measurement operator has the wrong dimension");
  }
  if (qubit < 0 || qubit >= n_local) throw ShapeError("qubit out of range");
  const std::size_t bit = std::size_t{1} << (n_local - 1 - qubit);
  Instrument out{{{}, {}}};
  for (int b = 0; b < 2; ++b) {
    Matrix proj = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      if (bool(static_cast<std::size_t>(i) & bit) == bool(b)) proj(i, i) = 1.0;
    }
    out.branches[static_cast<std::size_t>(b)].push_back(proj * pre);
  }
  return out;
}

Instrument Instrument::coin(double r, std::size_t dim) {
  if (!(r >= 0.0 && r <= 1.0)) throw ParameterError("accept probability outside [0, 1]");
  const auto d = static_cast<Eigen::Index>(dim);
  const Matrix id = Matrix::Identity(d, d);
  return Instrument{{{std::sqrt(1.0 - r) * id}, {std::sqrt(r) * id}}};
}

Instrument Instrument::with_ancillas(
    const std::vector<std::vector<Matrix>>& branches, int n_local, int n_ancilla) {
  if (n_ancilla < 0) throw ParameterError("negative ancilla count");
  check_capacity(2 * n_local + n_ancilla);
  const auto d = Eigen::Index{1} << n_local;
  const auto a = Eigen::Index{1} << n_ancilla;
  Instrument out;
  for (const auto& branch : branches) {
    std::vector<Matrix> reduced;
    for (const Matrix& k : branch) {
      if (k.rows() != d * a || k.cols() != d * a) {
        throw ShapeError("Kraus operator does not act on register + ancillas");
      }
      for (Eigen::Index j = 0; j < a; ++j) {
        Matrix kj(d, d);
        for (Eigen::Index row = 0; row < d; ++row) {
          for (Eigen::Index col = 0; col < d; ++col) {
            kj(row, col) = k(row * a + j, col * a);
          }
        }
        reduced.push_back(std::move(kj));
      }
    }
    out.branches.push_back(std::move(reduced));
  }
  return out;
}

std::size_t Instrument::dim() const {
  for (const auto& branch : branches) {
    if (!branch.empty()) return static_cast<std::size_t>(branch.front().cols());
  }
  return 0;
}

double Instrument::completeness_error() const {
  const auto d = static_cast<Eigen::Index>(dim());
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& branch : branches) {
    for (const Matrix& k : branch) sum += k.adjoint() * k;
  }
  return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

void Instrument::validate(std::size_t expected_dim) const {
  const auto d = static_cast<Eigen::Index>(expected_dim);
  for (const auto& branch : branches) {
    for (const Matrix& k : branch) {
      if (k.rows() != d || k.cols() != d) {
        throw ShapeError("Kraus operator has dimension " + std::to_string(k.rows()) +
                         "x" + std::to_string(k.cols()) + ", expected " +
                         std::to_string(d));
      }
    }
  }
  if (dim() == 0) throw ParameterError("instrument has no Kraus operators");
  if (completeness_error() > kDerivedTol) {
    throw ParameterError("instrument is not trace preserving");
  }
}

// --- protocol ----------------------------------------------------------------

int Protocol::rounds() const {
  int s = 0;
  for (const Step& step : steps) s += step.communicates;
  return s;
}

void Protocol::validate() const {
  if (n < 1) throw ParameterError("protocol needs n >= 1");
  if (seed_weights.empty()) throw ParameterError("empty shared randomness");
  double total = 0.0;
  for (double w : seed_weights) {
    if (!(w >= 0.0)) throw ParameterError("negative seed weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw ParameterError("seed weights do not sum to 1");
  }
  for (const Step& step : steps) {
    if (!step.instrument) throw ParameterError("step without instrument");
  }
  if (!output_pair) throw ParameterError("protocol without output pair");
  if (rounds() > 20) throw CapacityError("too many rounds for exact enumeration");
}

Matrix Node::alice_state() const {
  return probability > 0 ? Matrix(alice / probability) : Matrix(alice);
}

Matrix Node::bob_state() const {
  return probability > 0 ? Matrix(bob / probability) : Matrix(bob);
}

double RunResult::fidelity() const { return base_fidelity(output); }

const DensityMatrix& RunResult::conditional() const {
  if (!conditional_output) {
    throw Error("conditional output undefined: success probability is zero");
  }
  return *conditional_output;
}

double RunResult::conditional_fidelity() const { return base_fidelity(conditional()); }

// --- execution ---------------------------------------------------------------

namespace {

std::vector<int> party_qubits(int n, Party party) {
  std::vector<int> q(static_cast<std::size_t>(n));
  std::iota(q.begin(), q.end(), party == Party::Alice ? 0 : n);
  return q;
}

Matrix apply_branch(const std::vector<Matrix>& kraus, std::span<const int> targets,
                    const Matrix& rho, int n_qubits) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& k : kraus) out += conjugate(k, targets, rho, n_qubits);
  return out;
}

struct Accumulator {
  std::vector<std::vector<Node>> levels;
  std::vector<double> leaf_prob;
  std::vector<double> leaf_succ;
  std::vector<Matrix> leaf_output;  // unnormalized
  Matrix succ_output;
  Matrix total_output;
};

void run_one_seed(const Protocol& protocol, std::size_t seed, double weight,
                  const DensityMatrix& input, const RunOptions& options,
                  Accumulator& acc) {
  const int n = protocol.n;
  const Partition part{n, n};
  const int nq = part.total();
  const std::size_t local_dim = part.dim_alice();
  const auto alice = party_qubits(n, Party::Alice);
  const auto bob = party_qubits(n, Party::Bob);

  // The input is copied only once a step modifies it.
  std::vector<Matrix> states;
  std::vector<Transcript> transcripts{Transcript{0, 0}};
  auto state_at = [&](std::size_t i) -> const Matrix& {
    return states.empty() ? input.matrix() : states[i];
  };

  auto record = [&](int level) {
    if (!options.record_nodes) return;
    auto& nodes = acc.levels[static_cast<std::size_t>(level)];
    for (std::size_t i = 0; i < transcripts.size(); ++i) {
      Node& node = nodes[i];
      const Matrix& rho = state_at(i);
      node.probability += weight * rho.trace().real();
      node.alice += weight * reduce_to_party(rho, part, Party::Alice);
      node.bob += weight * reduce_to_party(rho, part, Party::Bob);
    }
  };

  int level = 0;
  record(level);
  for (const Step& step : protocol.steps) {
    const auto& targets = step.party == Party::Alice ? alice : bob;
    if (states.empty()) states.push_back(input.matrix());
    if (!step.communicates) {
      for (std::size_t i = 0; i < states.size(); ++i) {
        const Instrument inst = step.instrument(seed, transcripts[i]);
        if (options.validate_instruments) inst.validate(local_dim);
        Matrix next = Matrix::Zero(states[i].rows(), states[i].cols());
        for (const auto& branch : inst.branches) {
          next += apply_branch(branch, targets, states[i], nq);
        }
        states[i] = std::move(next);
      }
      continue;
    }
    std::vector<Matrix> next(states.size() * 2);
    std::vector<Transcript> next_t(states.size() * 2);
    for (std::size_t i = 0; i < states.size(); ++i) {
      const Instrument inst = step.instrument(seed, transcripts[i]);
      if (options.validate_instruments) inst.validate(local_dim);
      if (inst.branches.size() != 2) {
        throw ParameterError("communicating step needs a two-outcome instrument");
      }
      for (std::size_t b = 0; b < 2; ++b) {
        const std::size_t child = i | (b << level);
        next[child] = apply_branch(inst.branches[b], targets, states[i], nq);
        next_t[child] = extend(transcripts[i], b == 1);
      }
    }
    states = std::move(next);
    transcripts = std::move(next_t);
    ++level;
    record(level);
  }

  const int out_pair = protocol.output_pair(seed);
  if (out_pair < 0 || out_pair >= n) throw ParameterError("output pair out of range");
  const std::vector<int> keep{out_pair, n + out_pair};
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    const Matrix& rho = state_at(i);
    const double prob = rho.trace().real();
    Matrix succ_pair;
    Matrix all_pair;
    double succ_prob = prob;
    if (protocol.accept) {
      const Instrument inst = protocol.accept(seed, transcripts[i]);
      if (options.validate_instruments) inst.validate(local_dim);
      if (inst.branches.size() != 2) {
        throw ParameterError("accept rule needs a two-outcome instrument");
      }
      const Matrix fail = apply_branch(inst.branches[0], alice, rho, nq);
      const Matrix succ = apply_branch(inst.branches[1], alice, rho, nq);
      succ_prob = succ.trace().real();
      succ_pair = partial_trace(succ, nq, keep);
      all_pair = succ_pair + partial_trace(fail, nq, keep);
    } else {
      succ_pair = partial_trace(rho, nq, keep);
      all_pair = succ_pair;
    }
    acc.leaf_prob[i] += weight * prob;
    acc.leaf_succ[i] += weight * succ_prob;
    acc.leaf_output[i] += weight * all_pair;
    acc.succ_output += weight * succ_pair;
    acc.total_output += weight * all_pair;
  }
}

RunResult run_seeds(const Protocol& protocol, const std::vector<std::size_t>& seeds,
                    const std::vector<double>& weights, const DensityMatrix& input,
                    const RunOptions& options) {
  protocol.validate();
  const Partition part{protocol.n, protocol.n};
  if (input.partition() != part) {
    throw ShapeError("input must hold " + std::to_string(protocol.n) +
                     " pairs");
  }
  const int s = protocol.rounds();
  const auto local = static_cast<Eigen::Index>(part.dim_alice());

  Accumulator acc;
  if (options.record_nodes) {
    for (int k = 0; k <= s; ++k) {
      std::vector<Node> nodes(std::size_t{1} << k);
      for (std::size_t t = 0; t < nodes.size(); ++t) {
        nodes[t].transcript = Transcript{t, k};
        nodes[t].alice = Matrix::Zero(local, local);
        nodes[t].bob = Matrix::Zero(local, local);
      }
      acc.levels.push_back(std::move(nodes));
    }
  }
  const std::size_t n_leaves = std::size_t{1} << s;
  acc.leaf_prob.assign(n_leaves, 0.0);
  acc.leaf_succ.assign(n_leaves, 0.0);
  acc.leaf_output.assign(n_leaves, Matrix::Zero(4, 4));
  acc.succ_output = Matrix::Zero(4, 4);
  acc.total_output = Matrix::Zero(4, 4);

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (weights[i] == 0.0) continue;
    run_one_seed(protocol, seeds[i], weights[i], input, options, acc);
  }

  std::vector<Leaf> leaves(n_leaves);
  for (std::size_t t = 0; t < n_leaves; ++t) {
    Leaf& leaf = leaves[t];
    leaf.transcript = Transcript{t, s};
    leaf.probability = acc.leaf_prob[t];
    if (leaf.probability > 0) {
      leaf.accept_probability = acc.leaf_succ[t] / leaf.probability;
      leaf.output = acc.leaf_output[t] / leaf.probability;
    } else {
      leaf.output = Matrix::Zero(4, 4);
    }
  }
  const double success = std::accumulate(acc.leaf_succ.begin(), acc.leaf_succ.end(), 0.0);
  std::optional<DensityMatrix> conditional;
  if (success > std::numeric_limits<double>::min()) {
    conditional = DensityMatrix::trusted(Partition{1, 1}, acc.succ_output / success);
  }
  return RunResult{std::move(acc.levels), std::move(leaves), success,
                   DensityMatrix::trusted(Partition{1, 1}, acc.total_output),
                   std::move(conditional)};
}

}  // namespace

RunResult run(const Protocol& protocol, const DensityMatrix& input,
              const RunOptions& options) {
  std::vector<std::size_t> seeds(protocol.seed_count());
  std::iota(seeds.begin(), seeds.end(), std::size_t{0});
  return run_seeds(protocol, seeds, protocol.seed_weights, input, options);
}

RunResult run(const Protocol& protocol, const MixedEnsemble& input,
              const RunOptions& options) {
  return run(protocol, collapse(input), options);
}

RunResult run_seed(const Protocol& protocol, std::size_t seed,
                   const DensityMatrix& input, const RunOptions& options) {
  if (seed >= protocol.seed_count()) throw ParameterError("seed out of range");
  return run_seeds(protocol, {seed}, {1.0}, input, options);
}

double ideal_success_probability(const Protocol& protocol) {
  const DensityMatrix ideal = DensityMatrix::from_pure(PureState::epr_pairs(protocol.n));
  return run(protocol, ideal, RunOptions{false, true}).success_probability;
}

namespace {

void check_model(const Protocol& protocol, const ErrorModel& model) {
  if (model.n() != protocol.n) {
    throw ParameterError("model has " + std::to_string(model.n()) +
                         " pairs, protocol expects " + std::to_string(protocol.n));
  }
}

}  // namespace

ModelEvaluation protocol_fidelity(const Protocol& protocol, const ErrorModel& model,
                                  int adversarial_samples, std::uint64_t seed) {
  check_model(protocol, model);
  ModelEvaluation out{std::numeric_limits<double>::infinity(), 0, 0};
  const RunOptions options{false, true};
  model.for_each_evaluation_state(
      adversarial_samples, seed, [&](const DensityMatrix& rho) {
        const double f = run(protocol, rho, options).fidelity();
        if (f < out.value) {
          out.value = f;
          out.worst_state = out.states_evaluated;
        }
        ++out.states_evaluated;
      });
  return out;
}

ModelEvaluation conditional_fidelity(const Protocol& protocol,
                                     const ErrorModel& model,
                                     int adversarial_samples, std::uint64_t seed) {
  check_model(protocol, model);
  ModelEvaluation out{std::numeric_limits<double>::infinity(), 0, 0};
  const RunOptions options{false, true};
  std::size_t index = 0;
  model.for_each_evaluation_state(
      adversarial_samples, seed, [&](const DensityMatrix& rho) {
        const RunResult r = run(protocol, rho, options);
        if (r.conditional_output) {
          ++out.states_evaluated;
          const double f = r.conditional_fidelity();
          if (f < out.value) {
            out.value = f;
            out.worst_state = index;
          }
        }
        ++index;
      });
  if (out.states_evaluated == 0) {
    throw Error("conditional output undefined on every model state");
  }
  return out;
}

}  // namespace edplab
