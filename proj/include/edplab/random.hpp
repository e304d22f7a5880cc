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

#ifndef EDPLAB_RANDOM_HPP
#define EDPLAB_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "edplab/qcore.hpp"

namespace edplab {

/// Counter-based stream derivation: stream (seed, i) is independent of
/// how many other streams were drawn, so serial and parallel runs agree.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(split_seed(seed, stream)) {}

  double uniform();
  double normal();
  int uniform_int(int lo, int hi);  // inclusive
  Complex complex_normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Uniformly distributed pure state (normalized complex Gaussian).
PureState random_pure_state(Partition partition, Rng& rng);
/// Product of random single-party states |a>^A |b>^B.
PureState random_product_state(Partition partition, Rng& rng);
/// Random density matrix G G^dagger / Tr with G of the given rank.
DensityMatrix random_density_matrix(Partition partition, Rng& rng, int rank);
/// Haar unitary via QR of a Ginibre matrix with phase correction.
Matrix random_unitary(std::size_t dim, Rng& rng);
/// Anti-Hermitian matrix with Gaussian entries.
Matrix random_anti_hermitian(std::size_t dim, Rng& rng);
/// Kraus operators of a random trace-preserving channel on `dim`, taken
/// from the blocks of a random isometry.
std::vector<Matrix> random_kraus_channel(std::size_t dim, int n_kraus, Rng& rng);
/// Random isometry with `rows` >= `cols`.
Matrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace edplab

#endif  // EDPLAB_RANDOM_HPP
