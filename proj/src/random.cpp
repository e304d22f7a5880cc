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

#include "edplab/random.hpp"

#include <cmath>

namespace edplab {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 finalizer over (seed, counter).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double Rng::normal() { return normal_(engine_); }

int Rng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

namespace {

Vector random_unit_vector(std::size_t dim, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

}  // namespace

PureState random_pure_state(Partition partition, Rng& rng) {
  return PureState(partition, random_unit_vector(partition.dim(), rng));
}

PureState random_product_state(Partition partition, Rng& rng) {
  const Vector a = random_unit_vector(partition.dim_alice(), rng);
  const Vector b = random_unit_vector(partition.dim_bob(), rng);
  Vector v(static_cast<Eigen::Index>(partition.dim()));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    v.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return PureState(partition, v / v.norm());
}

DensityMatrix random_density_matrix(Partition partition, Rng& rng, int rank) {
  const auto d = static_cast<Eigen::Index>(partition.dim());
  Matrix g(d, rank);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(partition, rho);
}

Matrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  if (r < c) throw ShapeError("isometry needs rows >= cols");
  Matrix g(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(r, c);
  const Matrix rr = qr.matrixQR().topRows(c).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < c; ++j) {
    const Complex d = rr(j, j);
    const double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

Matrix random_unitary(std::size_t dim, Rng& rng) {
  return random_isometry(dim, dim, rng);
}

Matrix random_anti_hermitian(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  }
  return 0.5 * (g - g.adjoint());
}

std::vector<Matrix> random_kraus_channel(std::size_t dim, int n_kraus,
                                         Rng& rng) {
  const Matrix v = random_isometry(dim * static_cast<std::size_t>(n_kraus), dim, rng);
  std::vector<Matrix> kraus;
  const auto d = static_cast<Eigen::Index>(dim);
  for (int k = 0; k < n_kraus; ++k) {
    kraus.emplace_back(v.block(k * d, 0, d, d));
  }
  return kraus;
}

}  // namespace edplab
