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

#ifndef EDPLAB_VERIFY_HPP
#define EDPLAB_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edplab/errmodels.hpp"
#include "edplab/locc.hpp"
#include "edplab/qcore.hpp"

namespace edplab {

// --- reports ---------------------------------------------------------------

enum class Direction {
  Upper,  // pass iff achieved <= bound + tolerance
  Lower,  // pass iff achieved >= bound - tolerance
  Equal,  // pass iff |achieved - bound| <= tolerance
};

struct BoundReport {
  std::string theorem;
  /// Ordered parameter list, serialized in this order.
  std::vector<std::pair<std::string, double>> params;
  double bound = 0.0;
  double achieved = 0.0;
  Direction direction = Direction::Upper;
  double tolerance = kDerivedTol;
  /// Value reached by a known protocol, when the report probes tightness.
  std::optional<double> floor;
  std::uint64_t seed = 0;
  bool converged = true;
  std::string note;

  /// Signed slack: positive when the check holds strictly.
  double margin() const;
  bool pass() const;
  /// The row was not evaluated (for example s >= n for the hash
  /// protocol). Skipped rows count as passing.
  bool skipped = false;
};

BoundReport make_report(std::string theorem,
                        std::vector<std::pair<std::string, double>> params,
                        double bound, double achieved, Direction direction,
                        double tolerance);

bool all_pass(const std::vector<BoundReport>& reports);

// --- dominance ---------------------------------------------------------------

struct DominanceReport {
  double min_eigenvalue;
  bool holds;
};

/// Checks A >= B (A - B positive semidefinite) on the Hermitian part.
/// Throws ShapeError on mismatched shapes and InvalidStateError when an
/// operand is not Hermitian within kStructuralTol.
DominanceReport check_dominance(const Matrix& a, const Matrix& b,
                                double tolerance = kDerivedTol);

struct PovmReport {
  /// min over outcomes of Tr(E rho) - a Tr(E sigma).
  double min_margin;
  bool holds;
};

/// For rho >= a sigma every measurement outcome satisfies
/// Tr(E_m rho) >= a Tr(E_m sigma). Evaluates that consequence.
PovmReport check_povm_consequence(const Matrix& rho, const Matrix& sigma, double a,
                                  const std::vector<Matrix>& povm,
                                  double tolerance = kDerivedTol);

// --- splitting tracker --------------------------------------------------------

struct SplittingReport {
  int n = 0;
  int rounds = 0;
  /// Success probability on Psi_n (case I) and on the maximally mixed
  /// input (case II).
  double p = 0.0;
  double q = 0.0;
  bool initial_condition = false;
  double min_eigenvalue = 0.0;  // worst node over seeds, levels, parties
  std::size_t worst_seed = 0;
  Transcript worst_transcript;
  Party worst_party = Party::Alice;
  std::size_t nodes_checked = 0;
  double tolerance = kDerivedTol;

  double required_q() const;
  bool dominance_holds() const { return min_eigenvalue >= -tolerance; }
  bool squeeze_holds() const { return q >= required_q() - tolerance; }
  bool holds() const {
    return initial_condition && dominance_holds() && squeeze_holds();
  }
  /// Two rows: node dominance and q >= p^2 / 2^s.
  std::vector<BoundReport> to_reports() const;
};

/// Runs case I and case II seed by seed and checks, at every transcript
/// node, p_t^I sigma_t^I <= sigma_t^II for both parties.
SplittingReport verify_splitting(const Protocol& protocol,
                                 double tolerance = kDerivedTol);

struct RandomProtocolOptions {
  int shared_seeds = 1;
  /// Probability of inserting a private local step before each round.
  double local_step_probability = 0.25;
  int max_kraus = 2;
};

/// Random s-round protocol on n pairs with random instruments for every
/// (seed, transcript prefix), random accept rule and random output pair.
Protocol random_protocol(int n, int rounds, std::uint64_t seed,
                         const RandomProtocolOptions& options = {});

// --- fidelity-model theorems ---------------------------------------------------

/// Conditional fidelity on the witness against 1 - eps p / 2^{s+1}.
BoundReport verify_neg_fidelity(const Protocol& protocol, double epsilon);
/// Simple random hash with s rounds on the witness against
/// 1 - 2^{-s} / (1 - eps).
BoundReport verify_pos_fidelity(int n, int s, double epsilon);
/// Random permutation on the witness. The row compares against the
/// exact 0-bit value 1 - (3/4) eps' and records the stated formula
/// 1 - (2^n / (2^n - 1)) eps / 2 as a parameter.
BoundReport verify_random_permutation(int n, double epsilon);

// --- unitary optimizer --------------------------------------------------------

struct OptimizerConfig {
  int restarts = 32;
  int max_iterations = 400;
  double initial_step = 0.5;
  double gradient_tolerance = 1e-10;
  std::uint64_t seed = 1;
};

struct OptimizationResult {
  double best = 0.0;
  std::vector<double> per_restart;
  bool converged = false;
  Matrix alice;
  Matrix bob;
};

/// Pure state of n pairs as an Alice-by-Bob amplitude matrix, padded
/// with `ancillas` |0> qubits per party in the low bits.
Matrix amplitude_matrix(const PureState& state, int ancillas);

/// Average base fidelity of (U_A (x) U_B) applied to the ensemble.
double local_unitary_objective(const std::vector<Matrix>& states,
                               const std::vector<double>& weights,
                               const Matrix& alice, const Matrix& bob);

/// Euclidean gradients of the objective with respect to U_A and U_B.
std::pair<Matrix, Matrix> local_unitary_gradient(const std::vector<Matrix>& states,
                                                 const std::vector<double>& weights,
                                                 const Matrix& alice,
                                                 const Matrix& bob);

/// Multi-start Riemannian ascent over pairs of local unitaries.
OptimizationResult maximize_local_unitaries(const PureEnsemble& ensemble,
                                            int ancillas,
                                            const OptimizerConfig& config);

/// Best average base fidelity of a 0-bit protocol on the uniform
/// measure-r mixture, against 1 - r/2n.
BoundReport optimize_0bit_measure_r(int n, int r, int ancillas,
                                    const OptimizerConfig& config = {});
/// Same on rho_p^{(x) n}, against 1 - p/2 with floor 1 - 3p/4.
BoundReport optimize_0bit_depolarization(int n, double p, int ancillas,
                                         const OptimizerConfig& config = {});

// --- lemma and counting suites ------------------------------------------------

struct LemmaSuiteConfig {
  std::uint64_t seed = 20260101;
  int instances = 1000;
  double equality_tolerance = kStructuralTol;
  double inequality_tolerance = kDerivedTol;
};

/// One row per lemma: Pauli deviation sum, Bell identity, disentangled
/// cap, fidelity linearity, fidelity monotonicity.
std::vector<BoundReport> lemma_suite(const LemmaSuiteConfig& config = {});

struct CountingConfig {
  int binary_n_max = 6;
  int extended_n_max = 5;
  int aggregate_n_max = 8;
  int mixture_n_max = 3;
};

/// Exact integer checks of the counting identities plus the
/// depolarization / random-corrupt equivalence.
std::vector<BoundReport> verify_counting(const CountingConfig& config = {});

/// #{v : deg v = r, x <= v, y <= v} by enumeration.
std::uint64_t brute_force_binary_count(BitString x, BitString y, int r);
/// C(n - |x^y|, n - r - |x^y|), zero when the lower index is negative.
std::uint64_t binary_count_formula(int n, int distance, int r);

}  // namespace edplab

#endif  // EDPLAB_VERIFY_HPP
