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
#include <limits>
#include <memory>

#include "edplab/random.hpp"
#include "edplab/verify.hpp"

namespace edplab {

double SplittingReport::required_q() const { return p * p / std::ldexp(1.0, rounds); }

std::vector<BoundReport> SplittingReport::to_reports() const {
  std::vector<std::pair<std::string, double>> params{
      {"n", n}, {"s", rounds}, {"nodes", static_cast<double>(nodes_checked)}};
  BoundReport dom = make_report("splitting_dominance", params, 0.0, min_eigenvalue,
                                Direction::Lower, tolerance);
  if (!initial_condition) {
    dom.note = "initial local states differ from I/2^n";
    dom.achieved = -std::numeric_limits<double>::infinity();
  } else if (!dominance_holds()) {
    dom.note = "violated at seed " + std::to_string(worst_seed) + ", transcript " +
               worst_transcript.to_string() + ", party " + to_string(worst_party);
  }
  params.emplace_back("p", p);
  BoundReport squeeze = make_report("success_squeeze", std::move(params),
                                    required_q(), q, Direction::Lower, tolerance);
  return {dom, squeeze};
}

namespace {

bool is_scaled_identity(const Matrix& m, double value) {
  const Matrix target = value * Matrix::Identity(m.rows(), m.cols());
  return (m - target).cwiseAbs().maxCoeff() <= kStructuralTol;
}

}  // namespace

SplittingReport verify_splitting(const Protocol& protocol, double tolerance) {
  protocol.validate();
  const int n = protocol.n;
  SplittingReport report;
  report.n = n;
  report.rounds = protocol.rounds();
  report.tolerance = tolerance;
  report.initial_condition = true;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();

  const DensityMatrix ideal = DensityMatrix::from_pure(PureState::epr_pairs(n));
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(Partition{n, n});
  const double local_identity = 1.0 / std::ldexp(1.0, n);

  for (std::size_t seed = 0; seed < protocol.seed_count(); ++seed) {
    const double w = protocol.seed_weights[seed];
    if (w == 0.0) continue;
    const RunResult one = run_seed(protocol, seed, ideal);
    const RunResult two = run_seed(protocol, seed, mixed);
    report.p += w * one.success_probability;
    report.q += w * two.success_probability;

    for (const RunResult* r : {&one, &two}) {
      const Node& root = r->levels.front().front();
      report.initial_condition = report.initial_condition &&
                                 is_scaled_identity(root.alice, local_identity) &&
                                 is_scaled_identity(root.bob, local_identity);
    }

    for (std::size_t k = 0; k < one.levels.size(); ++k) {
      for (std::size_t t = 0; t < one.levels[k].size(); ++t) {
        const Node& a = one.levels[k][t];
        const Node& b = two.levels[k][t];
        for (Party party : {Party::Alice, Party::Bob}) {
          const Matrix& weighted_one = party == Party::Alice ? a.alice : a.bob;
          const Matrix& weighted_two = party == Party::Alice ? b.alice : b.bob;
          double lambda;
          if (b.probability > std::numeric_limits<double>::epsilon()) {
            lambda = check_dominance(weighted_two / b.probability, weighted_one,
                                     tolerance)
                         .min_eigenvalue;
          } else {
            // sigma^II undefined; p_t^I sigma^I must vanish as well.
            lambda = -weighted_one.trace().real();
          }
          ++report.nodes_checked;
          if (lambda < report.min_eigenvalue) {
            report.min_eigenvalue = lambda;
            report.worst_seed = seed;
            report.worst_transcript = a.transcript;
            report.worst_party = party;
          }
        }
      }
    }
  }
  return report;
}

// --- random protocols ---------------------------------------------------------

namespace {

Instrument random_two_outcome(std::size_t dim, int max_kraus, Rng& rng) {
  const int n_local = static_cast<int>(std::log2(static_cast<double>(dim)) + 0.5);
  if (rng.uniform() < 1.0 / 3.0) {
    const int qubit = rng.uniform_int(0, n_local - 1);
    return Instrument::measure_qubit(qubit, n_local, random_unitary(dim, rng));
  }
  const int k0 = rng.uniform_int(1, max_kraus);
  const int k1 = rng.uniform_int(1, max_kraus);
  const Matrix v = random_isometry(dim * static_cast<std::size_t>(k0 + k1), dim, rng);
  const auto d = static_cast<Eigen::Index>(dim);
  Instrument out{{{}, {}}};
  for (int k = 0; k < k0 + k1; ++k) {
    out.branches[k < k0 ? 0 : 1].emplace_back(v.block(k * d, 0, d, d));
  }
  return out;
}

// Instruments indexed by [seed][prefix bits].
using InstrumentTable = std::vector<std::vector<Instrument>>;

InstrumentRule table_rule(std::shared_ptr<const InstrumentTable> table) {
  return [table](std::size_t seed, const Transcript& t) {
    return (*table)[seed][static_cast<std::size_t>(t.bits)];
  };
}

}  // namespace

Protocol random_protocol(int n, int rounds, std::uint64_t seed,
                         const RandomProtocolOptions& options) {
  if (n < 1 || rounds < 0) throw ParameterError("random protocol needs n >= 1, s >= 0");
  if (options.shared_seeds < 1 || options.max_kraus < 1) {
    throw ParameterError("invalid random protocol options");
  }
  check_capacity(2 * n);
  Rng rng(seed);
  const std::size_t dim = std::size_t{1} << n;
  const auto seeds = static_cast<std::size_t>(options.shared_seeds);

  Protocol p;
  p.name = "random";
  p.n = n;
  p.seed_weights.clear();
  double total = 0.0;
  for (std::size_t i = 0; i < seeds; ++i) {
    p.seed_weights.push_back(0.2 + rng.uniform());
    total += p.seed_weights.back();
  }
  for (double& w : p.seed_weights) w /= total;

  auto make_step = [&](bool communicates, int sent) {
    const Party party = rng.uniform() < 0.5 ? Party::Alice : Party::Bob;
    auto table = std::make_shared<InstrumentTable>(seeds);
    for (std::size_t s = 0; s < seeds; ++s) {
      for (std::size_t t = 0; t < (std::size_t{1} << sent); ++t) {
        if (communicates) {
          (*table)[s].push_back(random_two_outcome(dim, options.max_kraus, rng));
        } else {
          (*table)[s].push_back(Instrument::channel(
              random_kraus_channel(dim, rng.uniform_int(1, options.max_kraus), rng)));
        }
      }
    }
    p.steps.push_back(Step{party, communicates, table_rule(table)});
  };

  for (int k = 0; k < rounds; ++k) {
    if (rng.uniform() < options.local_step_probability) make_step(false, k);
    make_step(true, k);
  }

  auto accept = std::make_shared<InstrumentTable>(seeds);
  for (std::size_t s = 0; s < seeds; ++s) {
    for (std::size_t t = 0; t < (std::size_t{1} << rounds); ++t) {
      if (rng.uniform() < 0.5) {
        (*accept)[s].push_back(Instrument::coin(rng.uniform(), dim));
      } else {
        (*accept)[s].push_back(random_two_outcome(dim, options.max_kraus, rng));
      }
    }
  }
  p.accept = table_rule(accept);

  auto pairs = std::make_shared<std::vector<int>>();
  for (std::size_t s = 0; s < seeds; ++s) pairs->push_back(rng.uniform_int(0, n - 1));
  p.output_pair = [pairs](std::size_t s) { return (*pairs)[s]; };
  return p;
}

// --- fidelity model -------------------------------------------------------------

BoundReport verify_neg_fidelity(const Protocol& protocol, double epsilon) {
  const int n = protocol.n;
  const int s = protocol.rounds();
  const double p = ideal_success_probability(protocol);
  const double bound = 1.0 - epsilon * p / std::ldexp(1.0, s + 1);
  const RunResult r = run(protocol, fidelity_witness(n, epsilon), RunOptions{false, true});
  BoundReport report = make_report(
      "neg_fidelity", {{"n", n}, {"s", s}, {"epsilon", epsilon}, {"p", p}}, bound,
      r.conditional_output ? r.conditional_fidelity() : 0.0, Direction::Upper,
      kDerivedTol);
  if (!r.conditional_output) {
    report.skipped = true;
    report.note = "protocol never succeeds on the witness";
  }
  return report;
}

BoundReport verify_pos_fidelity(int n, int s, double epsilon) {
  const double bound = 1.0 - std::ldexp(1.0, -s) / (1.0 - epsilon);
  std::vector<std::pair<std::string, double>> params{
      {"n", n}, {"s", s}, {"epsilon", epsilon}};
  if (s < 0 || s >= n) {
    BoundReport report = make_report("pos_fidelity", std::move(params), bound, 0.0,
                                     Direction::Lower, kDerivedTol);
    report.skipped = true;
    report.note = "hash protocol needs s < n";
    return report;
  }
  const Protocol hash = make_simple_random_hash(n, s);
  const RunResult r = run(hash, fidelity_witness(n, epsilon), RunOptions{false, true});
  params.emplace_back("success_probability", r.success_probability);
  return make_report("pos_fidelity", std::move(params), bound,
                     r.conditional_fidelity(), Direction::Lower, kDerivedTol);
}

BoundReport verify_random_permutation(int n, double epsilon) {
  const double mixing = witness_mixing(n, epsilon);
  const double exact = 1.0 - 0.75 * mixing;
  const double pow2 = std::ldexp(1.0, n);
  const double reference = 1.0 - pow2 / (pow2 - 1.0) * epsilon / 2.0;
  const RunResult r = run(make_random_permutation(n), fidelity_witness(n, epsilon),
                          RunOptions{false, true});
  BoundReport report =
      make_report("random_permutation_witness",
                  {{"n", n}, {"epsilon", epsilon}, {"reference_formula", reference}},
                  exact, r.fidelity(), Direction::Lower, kDerivedTol);
  if (r.fidelity() < reference - kDerivedTol) {
    report.note = "below reference formula 1 - (2^n/(2^n-1)) eps/2";
  }
  return report;
}

}  // namespace edplab
