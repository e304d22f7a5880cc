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

#include <algorithm>
#include <cmath>
#include <limits>

#include "edplab/random.hpp"
#include "edplab/verify.hpp"

namespace edplab {

namespace {

Partition random_partition(Rng& rng, int max_side) {
  return Partition{rng.uniform_int(1, max_side), rng.uniform_int(1, max_side)};
}

Matrix projector(const PureState& s) {
  return s.amplitudes() * s.amplitudes().adjoint();
}

// Running extreme over instances plus a violation count.
struct Tally {
  double extreme;
  int violations = 0;
};

BoundReport finish(std::string name, const LemmaSuiteConfig& cfg, const Tally& t,
                   double bound, Direction dir, double tol) {
  BoundReport r = make_report(std::move(name),
                              {{"instances", cfg.instances},
                               {"violations", t.violations}},
                              bound, t.extreme, dir, tol);
  r.seed = cfg.seed;
  return r;
}

BoundReport pauli_sum_lemma(const LemmaSuiteConfig& cfg) {
  Tally t{-std::numeric_limits<double>::infinity()};
  for (int i = 0; i < cfg.instances; ++i) {
    Rng rng(split_seed(cfg.seed, 1), static_cast<std::uint64_t>(i));
    const int total = rng.uniform_int(2, 5);
    const int na = rng.uniform_int(1, total - 1);
    const Partition part{na, total - na};
    const PureState phi = random_pure_state(part, rng);
    const PureState psi = i % 4 == 0 ? phi : random_pure_state(part, rng);
    const double v = pauli_deviation_sum(phi, psi);
    t.extreme = std::max(t.extreme, v);
    if (v > 2.0 + cfg.inequality_tolerance) ++t.violations;
  }
  return finish("pauli_deviation_sum", cfg, t, 2.0, Direction::Upper,
                cfg.inequality_tolerance);
}

BoundReport bell_identity_lemma(const LemmaSuiteConfig& cfg) {
  Tally t{0.0};
  for (int i = 0; i < cfg.instances; ++i) {
    Rng rng(split_seed(cfg.seed, 2), static_cast<std::uint64_t>(i));
    const PureState phi = random_pure_state(random_partition(rng, 3), rng);
    const BellIdentity b = bell_identity_check(phi);
    const double gap = std::abs(b.lhs - b.rhs);
    t.extreme = std::max(t.extreme, gap);
    if (gap > cfg.equality_tolerance) ++t.violations;
  }
  return finish("bell_identity", cfg, t, 0.0, Direction::Upper, cfg.equality_tolerance);
}

BoundReport disentangled_cap_lemma(const LemmaSuiteConfig& cfg) {
  Tally t{-std::numeric_limits<double>::infinity()};
  for (int i = 0; i < cfg.instances; ++i) {
    Rng rng(split_seed(cfg.seed, 3), static_cast<std::uint64_t>(i));
    const Partition part = random_partition(rng, 3);
    double v;
    if (i % 2 == 0) {
      v = base_fidelity(random_product_state(part, rng));
    } else {
      // Separable mixture of a few product states.
      const int k = rng.uniform_int(2, 4);
      const auto d = static_cast<Eigen::Index>(part.dim());
      Matrix mix = Matrix::Zero(d, d);
      double total = 0.0;
      for (int j = 0; j < k; ++j) {
        const double w = rng.uniform() + 1e-3;
        mix += w * projector(random_product_state(part, rng));
        total += w;
      }
      v = base_fidelity(DensityMatrix::trusted(part, mix / total));
    }
    t.extreme = std::max(t.extreme, v);
    if (v > 0.5 + cfg.inequality_tolerance) ++t.violations;
  }
  return finish("disentangled_cap", cfg, t, 0.5, Direction::Upper,
                cfg.inequality_tolerance);
}

BoundReport linearity_lemma(const LemmaSuiteConfig& cfg) {
  Tally t{0.0};
  for (int i = 0; i < cfg.instances; ++i) {
    Rng rng(split_seed(cfg.seed, 4), static_cast<std::uint64_t>(i));
    const Partition part = random_partition(rng, 2);
    const PureState sigma = random_pure_state(part, rng);
    const int k = rng.uniform_int(2, 4);
    const auto d = static_cast<Eigen::Index>(part.dim());
    Matrix mix = Matrix::Zero(d, d);
    std::vector<double> weights;
    std::vector<PureState> members;
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
      weights.push_back(rng.uniform() + 1e-3);
      total += weights.back();
      members.push_back(random_pure_state(part, rng));
    }
    double rhs = 0.0;
    for (int j = 0; j < k; ++j) {
      const double w = weights[static_cast<std::size_t>(j)] / total;
      const PureState& m = members[static_cast<std::size_t>(j)];
      mix += w * projector(m);
      rhs += w * fidelity(DensityMatrix::from_pure(m), sigma);
    }
    const double lhs = fidelity(DensityMatrix::trusted(part, mix),
                                DensityMatrix::from_pure(sigma));
    const double gap = std::abs(lhs - rhs);
    t.extreme = std::max(t.extreme, gap);
    if (gap > cfg.inequality_tolerance) ++t.violations;
  }
  return finish("fidelity_linearity", cfg, t, 0.0, Direction::Upper,
                cfg.inequality_tolerance);
}

BoundReport monotonicity_lemma(const LemmaSuiteConfig& cfg) {
  Tally t{std::numeric_limits<double>::infinity()};
  for (int i = 0; i < cfg.instances; ++i) {
    Rng rng(split_seed(cfg.seed, 5), static_cast<std::uint64_t>(i));
    const Partition part = rng.uniform() < 0.5 ? Partition{1, 1} : Partition{1, 2};
    const int dim_qubits = part.total();
    const DensityMatrix rho = random_density_matrix(part, rng, rng.uniform_int(1, 4));
    const DensityMatrix sigma = random_density_matrix(part, rng, rng.uniform_int(1, 4));
    const auto kraus = random_kraus_channel(part.dim(), rng.uniform_int(1, 4), rng);
    std::vector<int> all(static_cast<std::size_t>(dim_qubits));
    for (int q = 0; q < dim_qubits; ++q) all[static_cast<std::size_t>(q)] = q;
    auto channel = [&](const DensityMatrix& in) {
      Matrix out = Matrix::Zero(in.matrix().rows(), in.matrix().cols());
      for (const Matrix& k : kraus) out += conjugate(k, all, in.matrix(), dim_qubits);
      return DensityMatrix::trusted(part, 0.5 * (out + out.adjoint()));
    };
    const double gain = fidelity(channel(rho), channel(sigma)) - fidelity(rho, sigma);
    t.extreme = std::min(t.extreme, gain);
    if (gain < -cfg.inequality_tolerance) ++t.violations;
  }
  return finish("fidelity_monotonicity", cfg, t, 0.0, Direction::Lower,
                cfg.inequality_tolerance);
}

}  // namespace

std::vector<BoundReport> lemma_suite(const LemmaSuiteConfig& config) {
  if (config.instances < 1) throw ParameterError("lemma suite needs instances >= 1");
  bell_table_self_test();
  return {pauli_sum_lemma(config), bell_identity_lemma(config),
          disentangled_cap_lemma(config), linearity_lemma(config),
          monotonicity_lemma(config)};
}

}  // namespace edplab
