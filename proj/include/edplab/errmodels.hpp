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

#ifndef EDPLAB_ERRMODELS_HPP
#define EDPLAB_ERRMODELS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "edplab/qcore.hpp"

namespace edplab {

/// Bit strings of length <= 64. Bit j of the string (entry x[j]) is
/// stored at position j of `bits`.
struct BitString {
  std::uint64_t bits = 0;
  int length = 0;

  bool operator[](int j) const { return (bits >> j) & 1U; }
  int weight() const;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
};

BitString operator^(BitString a, BitString b);

/// Entry of a binary indicator vector: a measured pair in |00> or |11>,
/// or an intact pair (*).
enum class Trit : std::uint8_t { Zero, One, Star };

class IndicatorVector {
 public:
  explicit IndicatorVector(std::vector<Trit> entries);
  /// Parses "0*1" style strings.
  static IndicatorVector parse(const std::string& text);

  int size() const { return static_cast<int>(entries_.size()); }
  int degree() const;
  Trit operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
  const std::vector<Trit>& entries() const { return entries_; }
  std::string to_string() const;

  friend bool operator==(const IndicatorVector&, const IndicatorVector&) = default;

 private:
  std::vector<Trit> entries_;
};

/// Entry of an extended indicator vector: a pair collapsed to |ab> with
/// a on Alice's side and b on Bob's, or intact (*).
enum class PairValue : std::uint8_t { V00, V01, V10, V11, Star };

class ExtendedIndicatorVector {
 public:
  explicit ExtendedIndicatorVector(std::vector<PairValue> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  int degree() const;
  PairValue operator[](int j) const {
    return entries_[static_cast<std::size_t>(j)];
  }
  const std::vector<PairValue>& entries() const { return entries_; }
  std::string to_string() const;

 private:
  std::vector<PairValue> entries_;
};

std::uint64_t binomial(int n, int k);

/// All indicator vectors of length n and degree r: 2^r * C(n, r) of them.
std::vector<IndicatorVector> enumerate_indicators(int n, int r);
/// All extended indicator vectors of length n and degree r: 4^r * C(n, r).
std::vector<ExtendedIndicatorVector> enumerate_extended(int n, int r);

/// 2^{-(n-r)/2} sum_{x consistent with v} |x>^A |x>^B.
PureState error_state(const IndicatorVector& v);
/// x[j] == v[j] wherever v[j] is not *.
bool consistent(const BitString& x, const IndicatorVector& v);

/// Extended error state: pair j is |a>^A|b>^B for entry ab, Phi+ for *.
PureState extended_error_state(const ExtendedIndicatorVector& u);
/// x is a 2n-bit string LL(x); RT(x) with LL on Alice's side. Consistent
/// when x[j]; x[n+j] matches u[j] for non-* entries and x[j] == x[n+j]
/// for * entries.
bool consistent(const BitString& x, const ExtendedIndicatorVector& u);
/// LL(x) xor RT(x) for a 2n-bit string.
BitString discrepancy(const BitString& x);
/// Number of degree-r extended indicator vectors consistent with a
/// string whose discrepancy has weight d: C(n-d, r-d), or 0 when d > r.
std::uint64_t count_consistent_extended(int d, int n, int r);

/// (1-p) rho + p (I/2 (x) Tr_q rho) on global qubit q.
DensityMatrix depolarize(const DensityMatrix& rho, double p, int qubit);
/// Phi+ with Bob's qubit depolarized.
DensityMatrix depolarized_pair(double p);
/// rho_p^{\otimes n}.
DensityMatrix depolarization_state(int n, double p);

template <typename State>
struct Weighted {
  double weight;
  State state;
};
using PureEnsemble = std::vector<Weighted<PureState>>;
using MixedEnsemble = std::vector<Weighted<DensityMatrix>>;

DensityMatrix collapse(const PureEnsemble& ensemble);
DensityMatrix collapse(const MixedEnsemble& ensemble);

/// Uniform mixture over the C(n, r) ways of replacing r pairs by I/4.
MixedEnsemble random_corrupt_ensemble(int n, int r);
/// sum_r C(n,r) p^r (1-p)^{n-r} * random_corrupt(n, r).
DensityMatrix binomial_recombination(int n, double p);
/// rho_p^{\otimes n} as a pure ensemble of extended error states:
/// weight (1-p) per intact pair and p/4 per collapsed pair.
PureEnsemble depolarization_pure_ensemble(int n, double p);
/// Uniform mixture over all degree-r error states.
PureEnsemble measure_r_average(int n, int r);

/// (1-e') Psi_n + e' I/2^{2n} with e' = 2^{2n} eps / (2^{2n} - 1).
DensityMatrix fidelity_witness(int n, double epsilon);
double witness_mixing(int n, double epsilon);

struct MeasureR {
  int n;
  int r;
};
struct Depolarization {
  int n;
  double p;
};
struct FidelityModel {
  int n;
  double epsilon;
};

class ErrorModel {
 public:
  using Variant = std::variant<MeasureR, Depolarization, FidelityModel>;

  /// Validates 0 <= r <= n, 0 <= p <= 1, 0 <= epsilon < 1.
  explicit ErrorModel(Variant v);

  const Variant& variant() const { return v_; }
  int n() const;
  /// "measure_r", "depolarization" or "fidelity".
  std::string kind() const;

  /// States the model is evaluated on. Measure-r: every error state;
  /// depolarization: the single product state; fidelity: the witness plus
  /// `adversarial_samples` random members drawn from `seed`.
  std::vector<DensityMatrix> evaluation_states(int adversarial_samples = 0,
                                               std::uint64_t seed = 0) const;
  /// Same states, produced one at a time.
  void for_each_evaluation_state(
      int adversarial_samples, std::uint64_t seed,
      const std::function<void(const DensityMatrix&)>& visit) const;

 private:
  Variant v_;
};

}  // namespace edplab

#endif  // EDPLAB_ERRMODELS_HPP
