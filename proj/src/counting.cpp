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
#include <map>

#include "edplab/verify.hpp"

namespace edplab {

std::uint64_t binary_count_formula(int n, int distance, int r) {
  const int lower = n - r - distance;
  if (lower < 0) return 0;
  return binomial(n - distance, lower);
}

std::uint64_t brute_force_binary_count(BitString x, BitString y, int r) {
  if (x.length != y.length) throw ShapeError("strings differ in length");
  std::uint64_t count = 0;
  for (const auto& v : enumerate_indicators(x.length, r)) {
    count += consistent(x, v) && consistent(y, v);
  }
  return count;
}

namespace {

BoundReport count_row(std::string name, int n_max, std::uint64_t cases,
                      std::uint64_t mismatches) {
  return make_report(std::move(name),
                     {{"n_max", n_max}, {"cases", static_cast<double>(cases)}}, 0.0,
                     static_cast<double>(mismatches), Direction::Upper, 0.0);
}

BitString bits(std::uint64_t value, int length) { return BitString{value, length}; }

// Counts over all x, y of the indicators consistent with both, one
// enumeration pass per degree.
BoundReport binary_pair_counts(int n_max) {
  std::uint64_t cases = 0;
  std::uint64_t bad = 0;
  for (int n = 1; n <= n_max; ++n) {
    const std::size_t space = std::size_t{1} << n;
    for (int r = 0; r <= n; ++r) {
      std::vector<std::uint64_t> count(space * space, 0);
      for (const auto& v : enumerate_indicators(n, r)) {
        std::vector<std::size_t> members;
        for (std::size_t x = 0; x < space; ++x) {
          if (consistent(bits(x, n), v)) members.push_back(x);
        }
        for (std::size_t x : members) {
          for (std::size_t y : members) ++count[x * space + y];
        }
      }
      for (std::size_t x = 0; x < space; ++x) {
        for (std::size_t y = 0; y < space; ++y) {
          const int d = (bits(x, n) ^ bits(y, n)).weight();
          ++cases;
          bad += count[x * space + y] != binary_count_formula(n, d, r);
        }
      }
    }
  }
  return count_row("binary_pair_count", n_max, cases, bad);
}

BoundReport consistent_strings(int n_max) {
  std::uint64_t cases = 0;
  std::uint64_t bad = 0;
  for (int n = 1; n <= n_max; ++n) {
    for (int r = 0; r <= n; ++r) {
      for (const auto& v : enumerate_indicators(n, r)) {
        std::uint64_t c = 0;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
          c += consistent(bits(x, n), v);
        }
        ++cases;
        bad += c != (std::uint64_t{1} << (n - r));
      }
    }
  }
  return count_row("consistent_strings", n_max, cases, bad);
}

// Single-string and joint counts for extended indicator vectors.
std::vector<BoundReport> extended_counts(int n_max) {
  std::uint64_t single_cases = 0, single_bad = 0;
  std::uint64_t triple_cases = 0, triple_bad = 0;
  std::uint64_t joint_cases = 0, joint_bad = 0;
  std::uint64_t enum_cases = 0, enum_bad = 0;
  for (int n = 1; n <= n_max; ++n) {
    const std::uint64_t half = std::uint64_t{1} << n;
    const std::uint64_t mask = half - 1;
    const std::uint64_t space = half * half;
    for (int r = 0; r <= n; ++r) {
      const auto all = enumerate_extended(n, r);
      ++enum_cases;
      enum_bad += all.size() != (std::uint64_t{1} << (2 * r)) * binomial(n, r);

      std::vector<std::uint64_t> single(space, 0);
      std::map<std::uint64_t, std::uint64_t> triple;  // key (a, b, e)
      std::vector<std::uint64_t> joint(half * half, 0);
      for (const auto& u : all) {
        std::vector<std::uint64_t> members;
        for (std::uint64_t x = 0; x < space; ++x) {
          if (consistent(bits(x, 2 * n), u)) members.push_back(x);
        }
        for (std::uint64_t x : members) {
          ++single[x];
          for (std::uint64_t y : members) {
            const std::uint64_t a = x & mask;
            const std::uint64_t b = y & mask;
            const std::uint64_t e = discrepancy(bits(x, 2 * n)).bits;
            if (e != discrepancy(bits(y, 2 * n)).bits) {
              ++joint_bad;  // two strings under one vector share DIS
              continue;
            }
            ++triple[(a * half + b) * half + e];
            ++joint[a * half + b];
          }
        }
      }
      for (std::uint64_t x = 0; x < space; ++x) {
        const int d = discrepancy(bits(x, 2 * n)).weight();
        const std::uint64_t expect =
            d > r ? 0 : binomial(n - d, r - d);
        ++single_cases;
        single_bad += single[x] != expect ||
                      single[x] != count_consistent_extended(d, n, r);
      }
      for (std::uint64_t a = 0; a < half; ++a) {
        for (std::uint64_t b = 0; b < half; ++b) {
          const int k = (bits(a, n) ^ bits(b, n)).weight();
          ++joint_cases;
          joint_bad += joint[a * half + b] !=
                       (std::uint64_t{1} << r) * binomial(n - k, r);
          for (std::uint64_t e = 0; e < half; ++e) {
            const int l = bits(e, n).weight();
            const bool allowed = ((a ^ b) & e) == 0;
            const int top = n - k - l;
            const int lower = n - k - r;
            const std::uint64_t expect =
                allowed && lower >= 0 && top >= lower ? binomial(top, lower) : 0;
            const auto it = triple.find((a * half + b) * half + e);
            ++triple_cases;
            triple_bad += (it == triple.end() ? 0 : it->second) != expect;
          }
        }
      }
    }
  }
  return {count_row("extended_enumeration", n_max, enum_cases, enum_bad),
          count_row("extended_single_count", n_max, single_cases, single_bad),
          count_row("extended_triple_count", n_max, triple_cases, triple_bad),
          count_row("extended_joint_count", n_max, joint_cases, joint_bad)};
}

// [C(n,r) - C(n-1,r)] 2^{n+1} + C(n-1,r) 2^{n+2} = 2^{n+2} C(n,r) (1 - r/2n),
// multiplied through by n to stay in integers.
BoundReport aggregate_identity(int n_max) {
  std::uint64_t cases = 0;
  std::uint64_t bad = 0;
  for (int n = 1; n <= n_max; ++n) {
    for (int r = 0; r <= n; ++r) {
      const std::uint64_t c = binomial(n, r);
      const std::uint64_t c1 = r <= n - 1 ? binomial(n - 1, r) : 0;
      const std::uint64_t lhs =
          (c - c1) * (std::uint64_t{1} << (n + 1)) + c1 * (std::uint64_t{1} << (n + 2));
      const std::uint64_t rhs = (std::uint64_t{1} << (n + 1)) * c *
                                static_cast<std::uint64_t>(2 * n - r);
      ++cases;
      bad += static_cast<std::uint64_t>(n) * lhs != rhs;
    }
  }
  return count_row("aggregate_identity", n_max, cases, bad);
}

BoundReport depolarization_average(int n_max) {
  double worst = 0.0;
  std::uint64_t cases = 0;
  for (int n = 1; n <= n_max; ++n) {
    for (int step = 0; step <= 10; ++step) {
      const double p = step / 10.0;
      double sum = 0.0;
      for (int r = 0; r <= n; ++r) {
        sum += static_cast<double>(binomial(n, r)) * std::pow(p, r) *
               std::pow(1.0 - p, n - r) * (1.0 - r / (2.0 * n));
      }
      worst = std::max(worst, std::abs(sum - (1.0 - p / 2.0)));
      ++cases;
    }
  }
  return make_report("depolarization_average",
                     {{"n_max", n_max}, {"cases", static_cast<double>(cases)}}, 0.0,
                     worst, Direction::Upper, kDerivedTol);
}

BoundReport mixture_equivalence(int n_max) {
  double worst = 0.0;
  std::uint64_t cases = 0;
  for (int n = 1; n <= n_max; ++n) {
    for (double p : {0.1, 0.3, 0.7}) {
      const Matrix diff =
          binomial_recombination(n, p).matrix() - depolarization_state(n, p).matrix();
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      ++cases;
    }
  }
  return make_report("random_corrupt_mixture",
                     {{"n_max", n_max}, {"cases", static_cast<double>(cases)}}, 0.0,
                     worst, Direction::Upper, kDerivedTol);
}

}  // namespace

std::vector<BoundReport> verify_counting(const CountingConfig& config) {
  if (config.binary_n_max > 8 || config.extended_n_max > 6 ||
      config.aggregate_n_max > 40 || config.mixture_n_max > 4) {
    throw ParameterError("counting range too large for exhaustive enumeration");
  }
  std::vector<BoundReport> out;
  out.push_back(binary_pair_counts(config.binary_n_max));
  out.push_back(consistent_strings(std::min(8, config.binary_n_max + 2)));
  for (auto& r : extended_counts(config.extended_n_max)) out.push_back(std::move(r));
  out.push_back(aggregate_identity(config.aggregate_n_max));
  out.push_back(depolarization_average(config.aggregate_n_max));
  out.push_back(mixture_equivalence(config.mixture_n_max));
  return out;
}

}  // namespace edplab
