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

#ifndef EDPLAB_QCORE_HPP
#define EDPLAB_QCORE_HPP

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace edplab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerances shared by every module.
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kDerivedTol = 1e-9;
inline constexpr double kCertificateTol = 1e-6;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CapacityError : public Error {
 public:
  using Error::Error;
};
class ShapeError : public Error {
 public:
  using Error::Error;
};
class InvalidStateError : public Error {
 public:
  using Error::Error;
};
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Total qubit budget for dense objects. Defaults to 14; the
/// EDPLAB_MAX_QUBITS environment variable overrides it.
int max_qubits();
void check_capacity(int total_qubits);

enum class Party { Alice, Bob };

const char* to_string(Party party);

/// Qubit partition of a bipartite register.
///
/// Global qubit order is Alice 0..n_alice-1 followed by Bob 0..n_bob-1.
/// Qubit 0 is the most significant bit of a basis index, so a basis
/// state |x>^A|y>^B sits at index x * 2^n_bob + y.
struct Partition {
  int n_alice = 0;
  int n_bob = 0;

  int total() const { return n_alice + n_bob; }
  std::size_t dim() const { return std::size_t{1} << total(); }
  std::size_t dim_alice() const { return std::size_t{1} << n_alice; }
  std::size_t dim_bob() const { return std::size_t{1} << n_bob; }
  int alice_qubit(int i) const { return i; }
  int bob_qubit(int i) const { return n_alice + i; }
  bool symmetric() const { return n_alice == n_bob; }

  friend bool operator==(const Partition&, const Partition&) = default;
};

class PureState {
 public:
  /// Validates length and normalization.
  PureState(Partition partition, Vector amplitudes);

  static PureState basis(Partition partition, std::size_t index);
  /// (Phi+)^{\otimes n}, n pairs.
  static PureState epr_pairs(int n);

  const Partition& partition() const { return partition_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  Partition partition_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates shape, Hermiticity, trace and positivity.
  DensityMatrix(Partition partition, Matrix matrix);

  static DensityMatrix from_pure(const PureState& state);
  static DensityMatrix maximally_mixed(Partition partition);
  /// Skips the spectral check. For matrices built by trace-preserving
  /// operations from valid states.
  static DensityMatrix trusted(Partition partition, Matrix matrix);

  const Partition& partition() const { return partition_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  double trace() const { return matrix_.trace().real(); }

 private:
  DensityMatrix(Partition partition, Matrix matrix, bool validate);

  Partition partition_;
  Matrix matrix_;
};

/// A unitary acting on an ordered list of global qubit indices.
struct UnitaryOp {
  Matrix matrix;
  std::vector<int> targets;

  UnitaryOp(Matrix m, std::vector<int> t);
};

// --- elementary gates --------------------------------------------------

enum class Pauli { I, X, Y, Z };
inline constexpr std::array<Pauli, 4> kPaulis = {Pauli::I, Pauli::X, Pauli::Y,
                                                 Pauli::Z};

/// Pauli matrices. Y follows Y(a|0> + b|1>) = i b|0> - i a|1>, the
/// negative of the usual convention; every quantity built from it
/// (|<.|U|.>|^2, U (x) U*) is insensitive to the sign.
Matrix pauli(Pauli p);
Matrix pauli_y_standard();
Matrix hadamard();
Matrix cnot();

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
inline constexpr std::array<Bell, 4> kBells = {Bell::PhiPlus, Bell::PhiMinus,
                                               Bell::PsiPlus, Bell::PsiMinus};
const char* to_string(Bell b);
const char* to_string(Pauli p);

/// Two-qubit Bell state, Alice qubit first.
PureState bell_state(Bell b);

struct BellAction {
  int sign;
  Bell state;
};

/// Sign pattern of U (x) U* on the Bell states. The table is checked
/// once against explicit matrix action on first use; a mismatch throws
/// std::logic_error.
BellAction bell_action(Pauli u, Bell b);
/// Runs the table self-test (also against the standard Y convention)
/// and returns true. Throws std::logic_error on mismatch.
bool bell_table_self_test();

// --- register plumbing ---------------------------------------------------

/// Plain Kronecker product on concatenated registers. The result keeps
/// a's qubits first: Alice(a), Bob(a), Alice(b), Bob(b) are reordered to
/// Alice(a), Alice(b), Bob(a), Bob(b).
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
/// n-fold pair-wise tensor power.
PureState tensor_power(const PureState& a, int n);
DensityMatrix tensor_power(const DensityMatrix& a, int n);

/// Reorders qubits: new qubit i is old qubit perm[i].
Vector permute_qubits(const Vector& v, std::span<const int> perm);
Matrix permute_qubits(const Matrix& m, std::span<const int> perm);

/// Reduced state on the kept global qubits (in ascending order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);
/// Unnormalized variant on raw matrices with n qubits.
Matrix partial_trace(const Matrix& rho, int n_qubits, std::vector<int> keep);
/// Reduced matrix on one party's register.
Matrix reduce_to_party(const Matrix& rho, Partition partition, Party party);

/// op acting on `targets` (in the given order), identity elsewhere.
Vector apply(const Matrix& op, std::span<const int> targets, const Vector& v,
             int n_qubits);
/// op * rho * op^dagger on `targets`.
Matrix conjugate(const Matrix& op, std::span<const int> targets,
                 const Matrix& rho, int n_qubits);
/// Full-dimension embedding of op on targets.
Matrix embed(const Matrix& op, std::span<const int> targets, int n_qubits);

// --- fidelities ----------------------------------------------------------

/// Tr^2(sqrt(rho^{1/2} sigma rho^{1/2})) (squared convention).
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// <phi|rho|phi>.
double fidelity(const DensityMatrix& rho, const PureState& phi);
/// <Psi_n|rho|Psi_n>.
double epr_fidelity(const DensityMatrix& rho);
double epr_fidelity(const PureState& phi);
/// Fidelity of the first pair (Alice 0, Bob 0) with Phi+.
double base_fidelity(const DensityMatrix& rho);
double base_fidelity(const PureState& phi);
/// Same on a raw 2n-qubit matrix with n pairs; no trace normalization.
double base_fidelity_raw(const Matrix& rho, Partition partition);

/// Hermitian square root with eigenvalue clamping: eigenvalues in
/// [-kStructuralTol, 0) are floored, smaller ones throw InvalidStateError.
Matrix psd_sqrt(const Matrix& m);
double min_eigenvalue(const Matrix& hermitian);

// --- single-pair lemma quantities ---------------------------------------

/// Sum over U in {I,X,Y,Z} on qubit 0 of |<phi|U|psi>|^2.
double pauli_deviation_sum(const PureState& phi, const PureState& psi);

struct BellIdentity {
  double lhs;
  double rhs;
};
/// lhs = <phi|phi> + sum_{U in X,Y,Z} <phi|U (x) U*|phi> on the first
/// pair, rhs = 4 * base fidelity.
BellIdentity bell_identity_check(const PureState& phi);

}  // namespace edplab

#endif  // EDPLAB_QCORE_HPP
