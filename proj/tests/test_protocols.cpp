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

#include "edplab/locc.hpp"

namespace edplab {
namespace {

DensityMatrix epr(int n) { return DensityMatrix::from_pure(PureState::epr_pairs(n)); }

// Psi_n with an X error on Bob's half of pair `pair`.
DensityMatrix bit_flip_on(int n, int pair) {
  const std::vector<int> target{n + pair};
  const Vector v = apply(pauli(Pauli::X), target, PureState::epr_pairs(n).amplitudes(), 2 * n);
  return DensityMatrix::from_pure(PureState(Partition{n, n}, v));
}

TEST(RandomPair, Structure) {
  const Protocol p = make_random_pair(4);
  EXPECT_EQ(p.rounds(), 0);
  EXPECT_EQ(p.seed_count(), 4u);
  for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(p.output_pair(s), static_cast<int>(s));
}

TEST(RandomPair, ExactMeasureRValue) {
  for (int n = 1; n <= 4; ++n) {
    for (int r = 0; r <= n; ++r) {
      const double f = protocol_fidelity(make_random_pair(n), ErrorModel(MeasureR{n, r})).value;
      EXPECT_NEAR(f, 1.0 - r / (2.0 * n), 1e-12) << "n=" << n << " r=" << r;
    }
  }
}

TEST(RandomPair, FullyMeasuredStateGivesOneHalf) {
  const auto v = IndicatorVector::parse("011");
  EXPECT_NEAR(run(make_random_pair(3), DensityMatrix::from_pure(error_state(v))).fidelity(),
              0.5, 1e-12);
  EXPECT_NEAR(run(make_random_pair(3), epr(3)).fidelity(), 1.0, 1e-12);
}

TEST(FirstPair, DepolarizationValues) {
  for (int n = 1; n <= 3; ++n) {
    for (int step = 0; step <= 10; ++step) {
      const double p = step / 10.0;
      const double f =
          protocol_fidelity(make_first_pair(n), ErrorModel(Depolarization{n, p})).value;
      EXPECT_NEAR(f, 1.0 - 0.75 * p, 1e-10);
    }
  }
  EXPECT_NEAR(
      run(make_first_pair(2), DensityMatrix::from_pure(error_state(IndicatorVector::parse("0*"))))
          .fidelity(),
      0.5, 1e-12);
}

TEST(FirstPair, SpecExampleValue) {
  const double f =
      protocol_fidelity(make_first_pair(2), ErrorModel(Depolarization{2, 0.4})).value;
  EXPECT_NEAR(f, 0.7, 1e-12);
}

TEST(SimpleRandomHash, IdealOnEprPairs) {
  for (int n = 2; n <= 4; ++n) {
    for (int s = 0; s < n; ++s) {
      const Protocol p = make_simple_random_hash(n, s);
      EXPECT_EQ(p.rounds(), s);
      EXPECT_NEAR(ideal_success_probability(p), 1.0, 1e-12);
      const RunResult r = run(p, epr(n));
      EXPECT_NEAR(r.conditional_fidelity(), 1.0, 1e-12);
    }
  }
}

TEST(SimpleRandomHash, RequiresSpareCheckPairs) {
  EXPECT_THROW(make_simple_random_hash(2, 2), ParameterError);
  EXPECT_THROW(make_simple_random_hash(3, -1), ParameterError);
}

TEST(SimpleRandomHash, HiddenErrorIsCaughtHalfTheTimePerRound) {
  // The error sits on the output pair, which every round covers with
  // probability 1/2.
  EXPECT_NEAR(run(make_simple_random_hash(2, 1), bit_flip_on(2, 0)).success_probability, 0.5,
              1e-12);
  EXPECT_NEAR(run(make_simple_random_hash(3, 2), bit_flip_on(3, 0)).success_probability, 0.25,
              1e-12);
  // An error on the first check pair is always caught.
  EXPECT_NEAR(run(make_simple_random_hash(2, 1), bit_flip_on(2, 1)).success_probability, 0.0,
              1e-12);
}

TEST(SimpleRandomHash, ConditionalFidelityOnWitness) {
  for (int n = 2; n <= 4; ++n) {
    for (int s = 1; s < n; ++s) {
      for (double eps : {0.1, 0.25}) {
        const double f =
            conditional_fidelity(make_simple_random_hash(n, s), ErrorModel(FidelityModel{n, eps}))
                .value;
        EXPECT_GE(f, 1.0 - std::pow(2.0, -s) / (1.0 - eps) - 1e-9);
      }
    }
  }
}

TEST(RandomPermutation, Structure) {
  const Protocol p = make_random_permutation(3);
  EXPECT_EQ(p.seed_count(), 6u);
  EXPECT_EQ(p.rounds(), 0);
  for (double w : p.seed_weights) EXPECT_NEAR(w, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(run(p, epr(3)).fidelity(), 1.0, 1e-12);
}

TEST(RandomPermutation, WitnessValueIsExactZeroBitValue) {
  // 1 - (3/4) eps' with eps' = 16/15 * 0.2.
  const double eps_prime = witness_mixing(2, 0.2);
  const double f = run(make_random_permutation(2), fidelity_witness(2, 0.2)).fidelity();
  EXPECT_NEAR(f, 1.0 - 0.75 * eps_prime, 1e-12);
  EXPECT_NEAR(f, 0.84, 1e-12);
}

TEST(PermutationUnitary, SwapsQubits) {
  const Matrix u = permutation_unitary({1, 0});
  // |01> -> |10>
  EXPECT_NEAR(std::abs(u(2, 1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 2)), 1.0, 1e-15);
  EXPECT_NEAR((u * u.adjoint() - Matrix::Identity(4, 4)).norm(), 0.0, 1e-15);
}

}  // namespace
}  // namespace edplab
