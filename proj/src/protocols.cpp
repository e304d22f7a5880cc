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
#include <memory>
#include <numeric>

#include "edplab/locc.hpp"

namespace edplab {

namespace {

void require_pairs(int n) {
  if (n < 1) throw ParameterError("protocol needs at least one pair");
  check_capacity(2 * n);
}

// Projective measurement of `qubits` with outcomes discarded.
std::vector<Matrix> dephasing_kraus(const std::vector<int>& qubits, int n_local) {
  const auto d = Eigen::Index{1} << n_local;
  std::size_t mask = 0;
  for (int q : qubits) mask |= std::size_t{1} << (n_local - 1 - q);
  std::vector<Matrix> kraus;
  // Every outcome pattern is a subset of mask.
  std::size_t sub = mask;
  while (true) {
    Matrix proj = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      if ((static_cast<std::size_t>(i) & mask) == sub) proj(i, i) = 1.0;
    }
    kraus.push_back(std::move(proj));
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
  return kraus;
}

}  // namespace

Matrix permutation_unitary(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const auto d = Eigen::Index{1} << n;
  Matrix u(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    u.col(j) = permute_qubits(Vector(Vector::Unit(d, j)), perm);
  }
  return u;
}

Protocol make_random_pair(int n) {
  require_pairs(n);
  Protocol p;
  p.name = "random_pair";
  p.n = n;
  p.seed_weights.assign(static_cast<std::size_t>(n), 1.0 / n);
  p.output_pair = [](std::size_t seed) { return static_cast<int>(seed); };
  return p;
}

Protocol make_first_pair(int n) {
  require_pairs(n);
  Protocol p;
  p.name = "first_pair";
  p.n = n;
  return p;
}

Protocol make_simple_random_hash(int n, int s) {
  require_pairs(n);
  if (s < 0 || s >= n) {
    throw ParameterError("simple random hash needs 0 <= s < n, got s = " +
                         std::to_string(s) + ", n = " + std::to_string(n));
  }
  // Round k checks pair c_k = n-1-k against a subset of pairs 0..c_k-1.
  // The seed packs the subsets: round k uses c_k bits starting at offset_k.
  std::vector<int> check(static_cast<std::size_t>(s));
  std::vector<int> offset(static_cast<std::size_t>(s));
  int bits = 0;
  for (int k = 0; k < s; ++k) {
    check[static_cast<std::size_t>(k)] = n - 1 - k;
    offset[static_cast<std::size_t>(k)] = bits;
    bits += n - 1 - k;
  }
  if (bits > 20) throw CapacityError("too many shared random bits");

  // Parity-folding unitaries, one per (round, seed).
  const std::size_t n_seeds = std::size_t{1} << bits;
  auto folds = std::make_shared<std::vector<std::vector<Matrix>>>(
      static_cast<std::size_t>(s), std::vector<Matrix>(n_seeds));
  const auto d = Eigen::Index{1} << n;
  for (int k = 0; k < s; ++k) {
    const int c = check[static_cast<std::size_t>(k)];
    for (std::size_t seed = 0; seed < n_seeds; ++seed) {
      Matrix u = Matrix::Identity(d, d);
      for (int j = 0; j < c; ++j) {
        if ((seed >> (offset[static_cast<std::size_t>(k)] + j)) & 1U) {
          const std::vector<int> targets{j, c};
          u = embed(cnot(), targets, n) * u;
        }
      }
      (*folds)[static_cast<std::size_t>(k)][seed] = std::move(u);
    }
  }

  Protocol p;
  p.name = "simple_random_hash";
  p.n = n;
  p.seed_weights.assign(n_seeds, 1.0 / static_cast<double>(n_seeds));
  for (int k = 0; k < s; ++k) {
    const int c = check[static_cast<std::size_t>(k)];
    p.steps.push_back(Step{Party::Bob, true,
                           [folds, k, c, n](std::size_t seed, const Transcript&) {
                             return Instrument::measure_qubit(
                                 c, n, (*folds)[static_cast<std::size_t>(k)][seed]);
                           }});
  }
  p.accept = [folds, check, s, n, d](std::size_t seed, const Transcript& t) {
    Matrix u = Matrix::Identity(d, d);
    for (int k = 0; k < s; ++k) u = (*folds)[static_cast<std::size_t>(k)][seed] * u;
    Matrix proj = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      bool match = true;
      for (int k = 0; k < s && match; ++k) {
        const int c = check[static_cast<std::size_t>(k)];
        const bool alice_bit = (static_cast<std::size_t>(i) >> (n - 1 - c)) & 1U;
        match = alice_bit == t[k];
      }
      if (match) proj(i, i) = 1.0;
    }
    const Matrix id = Matrix::Identity(d, d);
    return Instrument{{{(id - proj) * u}, {proj * u}}};
  };
  return p;
}

Protocol make_random_permutation(int n) {
  require_pairs(n);
  if (n > 8) throw CapacityError("too many permutations to enumerate");
  auto perms = std::make_shared<std::vector<Matrix>>();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms->push_back(permutation_unitary(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<int> rest(static_cast<std::size_t>(n - 1));
  std::iota(rest.begin(), rest.end(), 1);
  auto dephase = std::make_shared<Instrument>(
      Instrument::channel(dephasing_kraus(rest, n)));

  Protocol p;
  p.name = "random_permutation";
  p.n = n;
  p.seed_weights.assign(perms->size(), 1.0 / static_cast<double>(perms->size()));
  for (Party party : {Party::Alice, Party::Bob}) {
    p.steps.push_back(Step{party, false, [perms](std::size_t seed, const Transcript&) {
                             return Instrument::unitary((*perms)[seed]);
                           }});
  }
  if (n > 1) {
    for (Party party : {Party::Alice, Party::Bob}) {
      p.steps.push_back(Step{party, false, [dephase](std::size_t, const Transcript&) {
                               return *dephase;
                             }});
    }
  }
  return p;
}

}  // namespace edplab
