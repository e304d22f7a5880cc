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

#include <gtest/gtest.h>

#include "edplab/random.hpp"
#include "edplab/verify.hpp"

namespace edplab {
namespace {

TEST(BoundReport, DirectionsAndMargins) {
  const BoundReport up = make_report("t", {{"n", 2}}, 0.75, 0.7, Direction::Upper, 1e-6);
  EXPECT_NEAR(up.margin(), 0.05, 1e-15);
  EXPECT_TRUE(up.pass());
  const BoundReport low = make_report("t", {}, 0.75, 0.7, Direction::Lower, 1e-6);
  EXPECT_FALSE(low.pass());
  const BoundReport eq = make_report("t", {}, 0.75, 0.75 + 1e-13, Direction::Equal, 1e-12);
  EXPECT_TRUE(eq.pass());
  EXPECT_LE(eq.margin(), 0.0);
  BoundReport skipped = low;
  skipped.skipped = true;
  EXPECT_TRUE(skipped.pass());
  EXPECT_FALSE(all_pass({up, low}));
  EXPECT_TRUE(all_pass({up, eq, skipped}));
}

TEST(Dominance, Basics) {
  Rng rng(1);
  const auto rho = random_density_matrix(Partition{1, 1}, rng, 4).matrix();
  const DominanceReport same = check_dominance(rho, rho);
  EXPECT_TRUE(same.holds);
  EXPECT_NEAR(same.min_eigenvalue, 0.0, 1e-12);
  EXPECT_TRUE(check_dominance(Matrix::Identity(4, 4), rho).holds);
  EXPECT_FALSE(check_dominance(rho, Matrix::Identity(4, 4)).holds);
}

TEST(Dominance, RejectsBadOperands) {
  Matrix nh = Matrix::Identity(2, 2);
  nh(0, 1) = 1.0;
  EXPECT_THROW(check_dominance(nh, Matrix::Identity(2, 2)), InvalidStateError);
  EXPECT_THROW(check_dominance(Matrix::Identity(2, 2), Matrix::Identity(4, 4)), ShapeError);
}

TEST(Dominance, PreservedByRandomChannels) {
  Rng rng(33);
  const std::vector<int> all{0, 1};
  for (int i = 0; i < 50; ++i) {
    const Matrix b = random_density_matrix(Partition{1, 1}, rng, 2).matrix();
    const Matrix extra = random_density_matrix(Partition{1, 1}, rng, 3).matrix();
    const Matrix a = b + rng.uniform() * extra;  // a >= b by construction
    ASSERT_TRUE(check_dominance(a, b).holds);
    const auto kraus = random_kraus_channel(4, rng.uniform_int(1, 4), rng);
    Matrix ea = Matrix::Zero(4, 4);
    Matrix eb = Matrix::Zero(4, 4);
    for (const Matrix& k : kraus) {
      ea += conjugate(k, all, a, 2);
      eb += conjugate(k, all, b, 2);
    }
    EXPECT_TRUE(check_dominance(0.5 * (ea + ea.adjoint()), 0.5 * (eb + eb.adjoint())).holds);
  }
}

TEST(Dominance, PovmConsequence) {
  const Matrix rho = DensityMatrix::maximally_mixed(Partition{1, 0}).matrix();
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(0, 0) = 1.0;
  // rho >= sigma / 2, so every outcome probability keeps the factor.
  ASSERT_TRUE(check_dominance(rho, 0.5 * sigma).holds);
  Matrix e0 = Matrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  const Matrix e1 = Matrix::Identity(2, 2) - e0;
  const PovmReport ok = check_povm_consequence(rho, sigma, 0.5, {e0, e1});
  EXPECT_TRUE(ok.holds);
  EXPECT_NEAR(ok.min_margin, 0.0, 1e-14);
  EXPECT_FALSE(check_povm_consequence(rho, sigma, 0.9, {e0, e1}).holds);
}

TEST(Splitting, ZeroRoundAlwaysAccept) {
  const SplittingReport rep = verify_splitting(make_first_pair(2));
  EXPECT_TRUE(rep.initial_condition);
  EXPECT_NEAR(rep.p, 1.0, 1e-12);
  EXPECT_NEAR(rep.q, 1.0, 1e-12);
  EXPECT_TRUE(rep.holds());
}

TEST(Splitting, HashProtocolOneRound) {
  const SplittingReport rep = verify_splitting(make_simple_random_hash(2, 1));
  EXPECT_TRUE(rep.holds());
  EXPECT_NEAR(rep.p, 1.0, 1e-12);
  EXPECT_NEAR(rep.required_q(), 0.5, 1e-12);
  EXPECT_GE(rep.q, 0.5 - 1e-9);
  const auto rows = rep.to_reports();
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(all_pass(rows));
}

TEST(Splitting, InputIndependentAcceptGivesEqualProbabilities) {
  Protocol p = make_first_pair(2);
  p.accept = [](std::size_t, const Transcript&) { return Instrument::coin(0.37, 4); };
  const SplittingReport rep = verify_splitting(p);
  EXPECT_NEAR(rep.p, 0.37, 1e-12);
  EXPECT_NEAR(rep.q, rep.p, 1e-12);
}

TEST(Splitting, RandomProtocolsSatisfyTheLemma) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int s = 1 + static_cast<int>((seed / 3) % 3);
    const Protocol p = random_protocol(n, s, seed);
    EXPECT_EQ(p.rounds(), s);
    const SplittingReport rep = verify_splitting(p);
    EXPECT_TRUE(rep.holds()) << "seed " << seed << " min eig " << rep.min_eigenvalue;
  }
}

TEST(RandomProtocol, IsDeterministicInItsSeed) {
  const Protocol a = random_protocol(2, 2, 77);
  const Protocol b = random_protocol(2, 2, 77);
  const DensityMatrix input = depolarization_state(2, 0.2);
  const RunResult ra = run(a, input);
  const RunResult rb = run(b, input);
  EXPECT_EQ(ra.success_probability, rb.success_probability);
  EXPECT_EQ(ra.output.matrix(), rb.output.matrix());
}

TEST(NegFidelity, HashProtocolBound) {
  const BoundReport r = verify_neg_fidelity(make_simple_random_hash(2, 1), 0.2);
  EXPECT_NEAR(r.bound, 0.95, 1e-12);
  EXPECT_TRUE(r.pass());
}

TEST(NegFidelity, ZeroBitBound) {
  const BoundReport r = verify_neg_fidelity(make_random_permutation(2), 0.2);
  EXPECT_NEAR(r.bound, 0.9, 1e-12);
  EXPECT_TRUE(r.pass());
}

TEST(PosFidelity, RowsAndSkips) {
  const BoundReport r = verify_pos_fidelity(3, 2, 0.25);
  EXPECT_EQ(r.direction, Direction::Lower);
  EXPECT_NEAR(r.bound, 1.0 - 0.25 / 0.75, 1e-12);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(verify_pos_fidelity(3, 3, 0.25).skipped);
}

TEST(RandomPermutationReport, ComparesAgainstExactValue) {
  const BoundReport r = verify_random_permutation(2, 0.2);
  EXPECT_NEAR(r.achieved, 0.84, 1e-12);
  EXPECT_TRUE(r.pass());
}

TEST(Counting, BinaryFormulaAgainstEnumeration) {
  const BitString x{0b01, 2};
  EXPECT_EQ(brute_force_binary_count(x, x, 1), 2u);
  EXPECT_EQ(binary_count_formula(2, 0, 1), 2u);
  // |x ^ y| = 2 > n - r = 1: no indicator fits both.
  EXPECT_EQ(brute_force_binary_count(BitString{0b00, 2}, BitString{0b11, 2}, 1), 0u);
  EXPECT_EQ(binary_count_formula(2, 2, 1), 0u);
}

TEST(Counting, SuiteRowsPass) {
  const auto rows = verify_counting(CountingConfig{4, 3, 8, 2});
  EXPECT_EQ(rows.size(), 9u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass()) << r.theorem;
  EXPECT_THROW(verify_counting(CountingConfig{9, 3, 8, 2}), ParameterError);
}

TEST(Lemmas, SmallSuitePasses) {
  LemmaSuiteConfig cfg;
  cfg.instances = 100;
  const auto rows = lemma_suite(cfg);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass()) << r.theorem;
}

TEST(Lemmas, TolerancesBelowRoundOffFail) {
  LemmaSuiteConfig cfg;
  cfg.instances = 200;
  cfg.equality_tolerance = 0.0;
  cfg.inequality_tolerance = 0.0;
  EXPECT_FALSE(all_pass(lemma_suite(cfg)));
}

}  // namespace
}  // namespace edplab
