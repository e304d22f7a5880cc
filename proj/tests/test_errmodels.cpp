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
#include <set>

#include <gtest/gtest.h>

#include "edplab/errmodels.hpp"

namespace edplab {
namespace {

// Bit string from text such as "01": character j is entry x[j].
BitString bits(const std::string& text) {
  BitString b{0, static_cast<int>(text.size())};
  for (std::size_t j = 0; j < text.size(); ++j) {
    if (text[j] == '1') b.bits |= std::uint64_t{1} << j;
  }
  return b;
}

TEST(Indicators, SmallEnumerations) {
  const auto none = enumerate_indicators(2, 0);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0].to_string(), "**");
  const auto single = enumerate_indicators(1, 1);
  ASSERT_EQ(single.size(), 2u);
  std::set<std::string> names{single[0].to_string(), single[1].to_string()};
  EXPECT_EQ(names, (std::set<std::string>{"0", "1"}));
  EXPECT_EQ(enumerate_indicators(4, 2).size(), 24u);
}

TEST(Indicators, CountsAndUniqueness) {
  for (int n = 1; n <= 6; ++n) {
    for (int r = 0; r <= n; ++r) {
      const auto all = enumerate_indicators(n, r);
      EXPECT_EQ(all.size(), (std::uint64_t{1} << r) * binomial(n, r));
      std::set<std::string> seen;
      for (const auto& v : all) {
        EXPECT_EQ(v.degree(), r);
        seen.insert(v.to_string());
      }
      EXPECT_EQ(seen.size(), all.size());
    }
  }
}

TEST(Indicators, OutOfRangeIsRejected) {
  EXPECT_THROW(enumerate_indicators(3, 4), ParameterError);
  EXPECT_THROW(enumerate_indicators(3, -1), ParameterError);
  EXPECT_THROW(IndicatorVector::parse("0x1"), Error);
}

TEST(ErrorState, AllStarIsEprPairs) {
  const PureState s = error_state(IndicatorVector::parse("***"));
  EXPECT_NEAR((s.amplitudes() - PureState::epr_pairs(3).amplitudes()).norm(), 0.0, 1e-14);
}

TEST(ErrorState, SingleMeasuredPair) {
  const PureState s = error_state(IndicatorVector::parse("0"));
  EXPECT_NEAR(std::abs(s.amplitudes()(0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
}

TEST(ErrorState, FidelityAndSupport) {
  for (int n = 1; n <= 4; ++n) {
    for (int r = 0; r <= n; ++r) {
      for (const auto& v : enumerate_indicators(n, r)) {
        const PureState s = error_state(v);
        EXPECT_NEAR(epr_fidelity(s), std::pow(2.0, -r), 1e-12);
        int nonzero = 0;
        for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
          nonzero += std::abs(s.amplitudes()(i)) > 1e-12;
        }
        EXPECT_EQ(nonzero, 1 << (n - r));
      }
    }
  }
}

TEST(ErrorState, IncompatiblePatternsAreOrthogonal) {
  for (int n = 1; n <= 3; ++n) {
    for (int r = 0; r <= n; ++r) {
      const auto all = enumerate_indicators(n, r);
      for (const auto& v : all) {
        for (const auto& w : all) {
          bool compatible = true;
          for (int j = 0; j < n; ++j) {
            if (v[j] != Trit::Star && w[j] != Trit::Star && v[j] != w[j]) compatible = false;
          }
          const double overlap =
              std::abs(error_state(v).amplitudes().dot(error_state(w).amplitudes()));
          if (!compatible) {
            EXPECT_NEAR(overlap, 0.0, 1e-14);
          }
          if (v == w) {
            EXPECT_NEAR(overlap, 1.0, 1e-14);
          }
        }
      }
    }
  }
}

TEST(Consistency, Examples) {
  const auto v = IndicatorVector::parse("0*");
  EXPECT_TRUE(consistent(bits("01"), v));
  EXPECT_FALSE(consistent(bits("11"), v));
}

TEST(Depolarize, ZeroIsIdentity) {
  const auto rho = DensityMatrix::from_pure(PureState::epr_pairs(2));
  EXPECT_NEAR((depolarize(rho, 0.0, 3).matrix() - rho.matrix()).norm(), 0.0, 1e-15);
}

TEST(Depolarize, BobQubitOfEprPair) {
  const auto phi = DensityMatrix::from_pure(bell_state(Bell::PhiPlus));
  for (double p : {0.0, 0.2, 0.5, 0.9}) {
    const auto out = depolarize(phi, p, 1);
    EXPECT_NEAR(out.trace(), 1.0, 1e-14);
    EXPECT_NEAR(base_fidelity(out), 1.0 - 0.75 * p, 1e-12);
    EXPECT_NEAR((out.matrix() - depolarized_pair(p).matrix()).norm(), 0.0, 1e-14);
  }
  EXPECT_NEAR(base_fidelity(depolarize(phi, 1.0, 1)), 0.25, 1e-14);
}

TEST(Depolarize, BadProbabilityIsRejected) {
  const auto phi = DensityMatrix::from_pure(bell_state(Bell::PhiPlus));
  EXPECT_THROW(depolarize(phi, 1.5, 1), ParameterError);
}

TEST(DepolarizationState, Values) {
  EXPECT_NEAR((depolarization_state(1, 0.3).matrix() - depolarized_pair(0.3).matrix()).norm(),
              0.0, 1e-14);
  const auto clean = depolarization_state(2, 0.0);
  const Vector psi = PureState::epr_pairs(2).amplitudes();
  EXPECT_NEAR((clean.matrix() - psi * psi.adjoint()).norm(), 0.0, 1e-14);
  EXPECT_NEAR(epr_fidelity(depolarization_state(2, 0.5)), 0.390625, 1e-12);
}

TEST(RandomCorrupt, EdgeCases) {
  const auto none = random_corrupt_ensemble(3, 0);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_NEAR(none[0].weight, 1.0, 1e-15);
  EXPECT_NEAR(epr_fidelity(none[0].state), 1.0, 1e-14);
  const auto full = random_corrupt_ensemble(1, 1);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_NEAR((full[0].state.matrix() - 0.25 * Matrix::Identity(4, 4)).norm(), 0.0, 1e-15);
}

TEST(RandomCorrupt, RecombinationMatchesDepolarization) {
  const Matrix diff =
      binomial_recombination(2, 0.3).matrix() - depolarization_state(2, 0.3).matrix();
  EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Extended, CountsAndAllStar) {
  for (int n = 1; n <= 4; ++n) {
    for (int r = 0; r <= n; ++r) {
      EXPECT_EQ(enumerate_extended(n, r).size(), (std::uint64_t{1} << (2 * r)) * binomial(n, r));
    }
  }
  const auto star = enumerate_extended(2, 0);
  ASSERT_EQ(star.size(), 1u);
  EXPECT_NEAR(
      (extended_error_state(star[0]).amplitudes() - PureState::epr_pairs(2).amplitudes()).norm(),
      0.0, 1e-14);
}

TEST(Extended, SingleCountByEnumeration) {
  EXPECT_EQ(count_consistent_extended(1, 3, 2), 2u);
  // A 6-bit string LL = 100, RT = 000 has discrepancy weight 1.
  const BitString x = bits("100000");
  EXPECT_EQ(discrepancy(x).weight(), 1);
  std::uint64_t count = 0;
  for (const auto& u : enumerate_extended(3, 2)) count += consistent(x, u);
  EXPECT_EQ(count, 2u);
  EXPECT_EQ(count_consistent_extended(3, 3, 2), 0u);
}

TEST(Extended, PureEnsembleMatchesDepolarization) {
  for (double p : {0.1, 0.7}) {
    const Matrix diff =
        collapse(depolarization_pure_ensemble(2, p)).matrix() - depolarization_state(2, p).matrix();
    EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MeasureRAverage, UniformOverErrorStates) {
  const auto avg = measure_r_average(3, 1);
  EXPECT_EQ(avg.size(), 6u);
  double total = 0.0;
  for (const auto& w : avg) {
    EXPECT_NEAR(w.weight, 1.0 / 6.0, 1e-15);
    total += w.weight;
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(Witness, Values) {
  const auto zero = fidelity_witness(2, 0.0);
  EXPECT_NEAR(epr_fidelity(zero), 1.0, 1e-14);
  EXPECT_NEAR(witness_mixing(2, 0.25), 16.0 / 15.0 * 0.25, 1e-15);
  for (int n = 1; n <= 3; ++n) {
    for (double eps : {0.1, 0.25, 0.5}) {
      EXPECT_NEAR(epr_fidelity(fidelity_witness(n, eps)), 1.0 - eps, 1e-10);
    }
  }
}

TEST(ErrorModel, ValidationAndStates) {
  EXPECT_THROW(ErrorModel(MeasureR{2, 3}), ParameterError);
  EXPECT_THROW(ErrorModel(Depolarization{2, -0.1}), ParameterError);
  EXPECT_THROW(ErrorModel(FidelityModel{2, 1.0}), ParameterError);
  EXPECT_EQ(ErrorModel(MeasureR{3, 2}).evaluation_states().size(), 12u);
  EXPECT_EQ(ErrorModel(Depolarization{2, 0.3}).evaluation_states().size(), 1u);
  const auto fid = ErrorModel(FidelityModel{2, 0.2}).evaluation_states(4, 99);
  ASSERT_EQ(fid.size(), 5u);
  for (const auto& rho : fid) EXPECT_GE(epr_fidelity(rho), 0.8 - 1e-10);
  EXPECT_EQ(ErrorModel(MeasureR{1, 0}).kind(), "measure_r");
}

}  // namespace
}  // namespace edplab
