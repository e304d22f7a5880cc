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

#include "edplab/errmodels.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include "edplab/random.hpp"

namespace edplab {

namespace {

constexpr int kMaxIndicatorLength = 12;

void check_nr(int n, int r) {
  if (n < 0 || n > kMaxIndicatorLength || r < 0 || r > n) {
    throw ParameterError("need 0 <= r <= n <= 12, got n=" + std::to_string(n) +
                         ", r=" + std::to_string(r));
  }
}

// Calls visit(mask) for every n-bit mask of weight r, in increasing order.
void for_each_subset(int n, int r, const std::function<void(std::uint64_t)>& visit) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) == r) visit(mask);
  }
}

// Index of |x> on an n-qubit register where x[j] sits on qubit j.
std::size_t register_index(std::uint64_t bits, int n) {
  std::size_t idx = 0;
  for (int j = 0; j < n; ++j) {
    if ((bits >> j) & 1U) idx |= std::size_t{1} << (n - 1 - j);
  }
  return idx;
}

}  // namespace

int BitString::weight() const { return std::popcount(bits); }

std::string BitString::to_string() const {
  std::string s;
  for (int j = 0; j < length; ++j) s.push_back((*this)[j] ? '1' : '0');
  return s;
}

BitString operator^(BitString a, BitString b) {
  if (a.length != b.length) throw ShapeError("xor of strings of unequal length");
  return BitString{a.bits ^ b.bits, a.length};
}

// --- indicator vectors ------------------------------------------------------

IndicatorVector::IndicatorVector(std::vector<Trit> entries)
    : entries_(std::move(entries)) {}

IndicatorVector IndicatorVector::parse(const std::string& text) {
  std::vector<Trit> entries;
  for (char c : text) {
    switch (c) {
      case '0':
        entries.push_back(Trit::Zero);
        break;
      case '1':
        entries.push_back(Trit::One);
        break;
      case '*':
        entries.push_back(Trit::Star);
        break;
      default:
        throw ParameterError(std::string("bad indicator entry '") + c + "'");
    }
  }
  return IndicatorVector(std::move(entries));
}

int IndicatorVector::degree() const {
  int d = 0;
  for (Trit t : entries_) d += t != Trit::Star;
  return d;
}

std::string IndicatorVector::to_string() const {
  std::string s;
  for (Trit t : entries_) s.push_back(t == Trit::Star ? '*' : t == Trit::One ? '1' : '0');
  return s;
}

ExtendedIndicatorVector::ExtendedIndicatorVector(std::vector<PairValue> entries)
    : entries_(std::move(entries)) {}

int ExtendedIndicatorVector::degree() const {
  int d = 0;
  for (PairValue v : entries_) d += v != PairValue::Star;
  return d;
}

std::string ExtendedIndicatorVector::to_string() const {
  static const char* names[] = {"00", "01", "10", "11", "*"};
  std::string s = "(";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) s += ",";
    s += names[static_cast<std::size_t>(entries_[j])];
  }
  return s + ")";
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return out;
}

std::vector<IndicatorVector> enumerate_indicators(int n, int r) {
  check_nr(n, r);
  std::vector<IndicatorVector> out;
  out.reserve(binomial(n, r) << r);
  for_each_subset(n, r, [&](std::uint64_t mask) {
    for (std::uint64_t values = 0; values < (std::uint64_t{1} << r); ++values) {
      std::vector<Trit> entries(static_cast<std::size_t>(n), Trit::Star);
      int k = 0;
      for (int j = 0; j < n; ++j) {
        if ((mask >> j) & 1U) {
          entries[static_cast<std::size_t>(j)] =
              ((values >> k) & 1U) ? Trit::One : Trit::Zero;
          ++k;
        }
      }
      out.emplace_back(std::move(entries));
    }
  });
  return out;
}

std::vector<ExtendedIndicatorVector> enumerate_extended(int n, int r) {
  check_nr(n, r);
  std::vector<ExtendedIndicatorVector> out;
  for_each_subset(n, r, [&](std::uint64_t mask) {
    for (std::uint64_t values = 0; values < (std::uint64_t{1} << (2 * r)); ++values) {
      std::vector<PairValue> entries(static_cast<std::size_t>(n), PairValue::Star);
      int k = 0;
      for (int j = 0; j < n; ++j) {
        if ((mask >> j) & 1U) {
          entries[static_cast<std::size_t>(j)] =
              static_cast<PairValue>((values >> (2 * k)) & 3U);
          ++k;
        }
      }
      out.emplace_back(std::move(entries));
    }
  });
  return out;
}

bool consistent(const BitString& x, const IndicatorVector& v) {
  if (x.length != v.size()) throw ShapeError("indicator length mismatch");
  for (int j = 0; j < v.size(); ++j) {
    if (v[j] == Trit::Star) continue;
    if (x[j] != (v[j] == Trit::One)) return false;
  }
  return true;
}

PureState error_state(const IndicatorVector& v) {
  const int n = v.size();
  const Partition p{n, n};
  check_capacity(p.total());
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(p.dim()));
  const double a = std::pow(2.0, -0.5 * (n - v.degree()));
  const std::size_t half = p.dim_alice();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    if (!consistent(BitString{bits, n}, v)) continue;
    const std::size_t x = register_index(bits, n);
    amp(static_cast<Eigen::Index>(x * half + x)) = a;
  }
  return PureState(p, std::move(amp));
}

bool consistent(const BitString& x, const ExtendedIndicatorVector& u) {
  const int n = u.size();
  if (x.length != 2 * n) throw ShapeError("extended indicator length mismatch");
  for (int j = 0; j < n; ++j) {
    const bool left = x[j];
    const bool right = x[n + j];
    const PairValue value = u[j];
    if (value == PairValue::Star) {
      if (left != right) return false;
    } else {
      const auto code = static_cast<unsigned>(value);
      if (left != bool(code & 2U) || right != bool(code & 1U)) return false;
    }
  }
  return true;
}

PureState extended_error_state(const ExtendedIndicatorVector& u) {
  const int n = u.size();
  const Partition p{n, n};
  check_capacity(p.total());
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(p.dim()));
  const double a = std::pow(2.0, -0.5 * (n - u.degree()));
  const std::size_t half = p.dim_alice();
  const std::uint64_t lo_mask = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * n)); ++bits) {
    if (!consistent(BitString{bits, 2 * n}, u)) continue;
    const std::size_t x = register_index(bits & lo_mask, n);
    const std::size_t y = register_index(bits >> n, n);
    amp(static_cast<Eigen::Index>(x * half + y)) = a;
  }
  return PureState(p, std::move(amp));
}

BitString discrepancy(const BitString& x) {
  if (x.length % 2 != 0) throw ShapeError("discrepancy needs a 2n-bit string");
  const int n = x.length / 2;
  const std::uint64_t lo_mask = (std::uint64_t{1} << n) - 1;
  return BitString{(x.bits & lo_mask) ^ ((x.bits >> n) & lo_mask), n};
}

std::uint64_t count_consistent_extended(int d, int n, int r) {
  if (d < 0 || d > n || r < 0 || r > n) {
    throw ParameterError("need 0 <= d, r <= n");
  }
  if (d > r) return 0;
  return binomial(n - d, r - d);
}

// --- depolarization -------------------------------------------------------

DensityMatrix depolarize(const DensityMatrix& rho, double p, int qubit) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("need 0 <= p <= 1");
  const int n = rho.partition().total();
  const int target[] = {qubit};
  // (1-p) rho + p I/2 (x) Tr_q rho == (1 - 3p/4) rho + p/4 sum_P P rho P.
  Matrix out = (1.0 - 0.75 * p) * rho.matrix();
  for (Pauli u : {Pauli::X, Pauli::Y, Pauli::Z}) {
    out += 0.25 * p * conjugate(pauli(u), target, rho.matrix(), n);
  }
  return DensityMatrix::trusted(rho.partition(), std::move(out));
}

DensityMatrix depolarized_pair(double p) {
  return depolarize(DensityMatrix::from_pure(bell_state(Bell::PhiPlus)), p, 1);
}

DensityMatrix depolarization_state(int n, double p) {
  if (n < 1) throw ParameterError("need n >= 1");
  check_capacity(2 * n);
  return tensor_power(depolarized_pair(p), n);
}

DensityMatrix collapse(const PureEnsemble& ensemble) {
  if (ensemble.empty()) throw ParameterError("empty ensemble");
  const Partition p = ensemble.front().state.partition();
  const auto d = static_cast<Eigen::Index>(p.dim());
  Matrix m = Matrix::Zero(d, d);
  for (const auto& [w, s] : ensemble) {
    m += w * s.amplitudes() * s.amplitudes().adjoint();
  }
  return DensityMatrix::trusted(p, std::move(m));
}

DensityMatrix collapse(const MixedEnsemble& ensemble) {
  if (ensemble.empty()) throw ParameterError("empty ensemble");
  const Partition p = ensemble.front().state.partition();
  const auto d = static_cast<Eigen::Index>(p.dim());
  Matrix m = Matrix::Zero(d, d);
  for (const auto& [w, s] : ensemble) m += w * s.matrix();
  return DensityMatrix::trusted(p, std::move(m));
}

MixedEnsemble random_corrupt_ensemble(int n, int r) {
  check_nr(n, r);
  if (n < 1) throw ParameterError("need n >= 1");
  check_capacity(2 * n);
  const DensityMatrix intact = DensityMatrix::from_pure(bell_state(Bell::PhiPlus));
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(Partition{1, 1});
  const double w = 1.0 / static_cast<double>(binomial(n, r));
  MixedEnsemble out;
  for_each_subset(n, r, [&](std::uint64_t mask) {
    DensityMatrix state = (mask & 1U) ? mixed : intact;
    for (int j = 1; j < n; ++j) {
      state = tensor(state, ((mask >> j) & 1U) ? mixed : intact);
    }
    out.push_back({w, std::move(state)});
  });
  return out;
}

DensityMatrix binomial_recombination(int n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("need 0 <= p <= 1");
  const auto d = Eigen::Index{1} << (2 * n);
  Matrix m = Matrix::Zero(d, d);
  for (int r = 0; r <= n; ++r) {
    const double w = static_cast<double>(binomial(n, r)) * std::pow(p, r) *
                     std::pow(1.0 - p, n - r);
    if (w == 0.0) continue;
    m += w * collapse(random_corrupt_ensemble(n, r)).matrix();
  }
  return DensityMatrix::trusted(Partition{n, n}, std::move(m));
}

PureEnsemble depolarization_pure_ensemble(int n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("need 0 <= p <= 1");
  PureEnsemble out;
  for (int r = 0; r <= n; ++r) {
    const double w = std::pow(1.0 - p, n - r) * std::pow(p / 4.0, r);
    if (w == 0.0) continue;
    for (const auto& u : enumerate_extended(n, r)) {
      out.push_back({w, extended_error_state(u)});
    }
  }
  return out;
}

PureEnsemble measure_r_average(int n, int r) {
  const auto vs = enumerate_indicators(n, r);
  const double w = 1.0 / static_cast<double>(vs.size());
  PureEnsemble out;
  for (const auto& v : vs) out.push_back({w, error_state(v)});
  return out;
}

double witness_mixing(int n, double epsilon) {
  const double big = std::pow(4.0, n);
  return big * epsilon / (big - 1.0);
}

DensityMatrix fidelity_witness(int n, double epsilon) {
  if (n < 1) throw ParameterError("need n >= 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ParameterError("need 0 <= epsilon < 1");
  }
  const double mix = witness_mixing(n, epsilon);
  if (mix > 1.0) {
    throw ParameterError("epsilon too large for a witness on " +
                         std::to_string(n) + " pairs");
  }
  const PureState psi = PureState::epr_pairs(n);
  const Partition p = psi.partition();
  const auto d = static_cast<Eigen::Index>(p.dim());
  Matrix m = (1.0 - mix) * psi.amplitudes() * psi.amplitudes().adjoint() +
             mix * Matrix::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix::trusted(p, std::move(m));
}

// --- error models ----------------------------------------------------------

ErrorModel::ErrorModel(Variant v) : v_(std::move(v)) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if (m.n < 1) throw ParameterError("need n >= 1");
        if constexpr (std::is_same_v<T, MeasureR>) {
          if (m.r < 0 || m.r > m.n) throw ParameterError("need 0 <= r <= n");
        } else if constexpr (std::is_same_v<T, Depolarization>) {
          if (!(m.p >= 0.0 && m.p <= 1.0)) throw ParameterError("need 0 <= p <= 1");
        } else {
          if (!(m.epsilon >= 0.0 && m.epsilon < 1.0)) {
            throw ParameterError("need 0 <= epsilon < 1");
          }
        }
      },
      v_);
}

int ErrorModel::n() const {
  return std::visit([](const auto& m) { return m.n; }, v_);
}

std::string ErrorModel::kind() const {
  switch (v_.index()) {
    case 0:
      return "measure_r";
    case 1:
      return "depolarization";
    default:
      return "fidelity";
  }
}

std::vector<DensityMatrix> ErrorModel::evaluation_states(
    int adversarial_samples, std::uint64_t seed) const {
  std::vector<DensityMatrix> out;
  for_each_evaluation_state(adversarial_samples, seed,
                            [&](const DensityMatrix& rho) { out.push_back(rho); });
  return out;
}

void ErrorModel::for_each_evaluation_state(
    int adversarial_samples, std::uint64_t seed,
    const std::function<void(const DensityMatrix&)>& visit) const {
  if (const auto* m = std::get_if<MeasureR>(&v_)) {
    for (const auto& v : enumerate_indicators(m->n, m->r)) {
      visit(DensityMatrix::from_pure(error_state(v)));
    }
  } else if (const auto* d = std::get_if<Depolarization>(&v_)) {
    visit(depolarization_state(d->n, d->p));
  } else {
    const auto& f = std::get<FidelityModel>(v_);
    visit(fidelity_witness(f.n, f.epsilon));
    // (1-eps) Psi_n + eps sigma has EPR fidelity >= 1 - eps for any sigma.
    const PureState psi = PureState::epr_pairs(f.n);
    const Matrix ideal = psi.amplitudes() * psi.amplitudes().adjoint();
    for (int i = 0; i < adversarial_samples; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      const int rank = rng.uniform_int(1, 4);
      const DensityMatrix sigma = random_density_matrix(psi.partition(), rng, rank);
      visit(DensityMatrix::trusted(
          psi.partition(), (1.0 - f.epsilon) * ideal + f.epsilon * sigma.matrix()));
    }
  }
}

}  // namespace edplab
