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

#include "edplab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#include <Eigen/SVD>

namespace edplab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t bit_of(int qubit, int n_qubits) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

void check_targets(std::span<const int> targets, int n_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n_qubits) {
      throw ShapeError("qubit index " + std::to_string(targets[i]) +
                       " out of range for " + std::to_string(n_qubits) +
                       " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) throw ShapeError("repeated target qubit");
    }
  }
}

// Offsets of the 2^k sub-basis states spanned by `targets`; target 0 is
// the most significant bit of the sub-index.
std::vector<std::size_t> sub_offsets(std::span<const int> targets,
                                     int n_qubits) {
  const std::size_t k = targets.size();
  std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      if ((j >> (k - 1 - i)) & 1U) offsets[j] |= bit_of(targets[i], n_qubits);
    }
  }
  return offsets;
}

std::size_t target_mask(std::span<const int> targets, int n_qubits) {
  std::size_t mask = 0;
  for (int t : targets) mask |= bit_of(t, n_qubits);
  return mask;
}

// Rows of m (a 2^n-row matrix) replaced by op acting on targets.
Matrix left_apply(const Matrix& op, std::span<const int> targets,
                  const Matrix& m, int n_qubits) {
  const auto offsets = sub_offsets(targets, n_qubits);
  const std::size_t mask = target_mask(targets, n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  const auto sub = static_cast<Eigen::Index>(offsets.size());
  if (op.rows() != sub || op.cols() != sub) {
    throw ShapeError("operator dimension does not match target count");
  }
  bool contiguous = true;
  for (std::size_t i = 1; i < targets.size(); ++i) {
    contiguous = contiguous && targets[i] == targets[i - 1] + 1;
  }
  if (contiguous && m.rows() == static_cast<Eigen::Index>(dim)) {
    // Index = lo + low * (mid + sub * hi): contract the mid factor with op.
    const Eigen::Index low =
        Eigen::Index{1} << (n_qubits - targets.front() - static_cast<int>(targets.size()));
    const Eigen::Index total = m.rows() * m.cols();
    Matrix out(m.rows(), m.cols());
    if (low == 1) {
      Eigen::Map<const Matrix> in(m.data(), sub, total / sub);
      Eigen::Map<Matrix>(out.data(), sub, total / sub).noalias() = op * in;
    } else {
      const Matrix op_t = op.transpose();
      for (Eigen::Index off = 0; off < total; off += low * sub) {
        Eigen::Map<const Matrix> in(m.data() + off, low, sub);
        Eigen::Map<Matrix>(out.data() + off, low, sub).noalias() = in * op_t;
      }
    }
    return out;
  }
  Matrix out(m.rows(), m.cols());
  Matrix block(sub, m.cols());
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (Eigen::Index j = 0; j < sub; ++j) {
      block.row(j) = m.row(static_cast<Eigen::Index>(base + offsets[j]));
    }
    Matrix res = op * block;
    for (Eigen::Index j = 0; j < sub; ++j) {
      out.row(static_cast<Eigen::Index>(base + offsets[j])) = res.row(j);
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::vector<std::size_t> permutation_map(std::span<const int> perm,
                                         int n_qubits) {
  if (static_cast<int>(perm.size()) != n_qubits) {
    throw ShapeError("permutation length does not match qubit count");
  }
  std::vector<int> seen(perm.begin(), perm.end());
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < n_qubits; ++i) {
    if (seen[static_cast<std::size_t>(i)] != i) {
      throw ShapeError("not a qubit permutation");
    }
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<std::size_t> map(dim, 0);
  for (std::size_t old_index = 0; old_index < dim; ++old_index) {
    std::size_t new_index = 0;
    for (int i = 0; i < n_qubits; ++i) {
      if (old_index & bit_of(perm[static_cast<std::size_t>(i)], n_qubits)) {
        new_index |= bit_of(i, n_qubits);
      }
    }
    map[old_index] = new_index;
  }
  return map;
}

// New qubit order placing the Alice block of both operands first.
std::vector<int> pair_merge_order(Partition a, Partition b) {
  std::vector<int> perm;
  const int a_alice = 0;
  const int a_bob = a.n_alice;
  const int b_alice = a.total();
  const int b_bob = a.total() + b.n_alice;
  for (int i = 0; i < a.n_alice; ++i) perm.push_back(a_alice + i);
  for (int i = 0; i < b.n_alice; ++i) perm.push_back(b_alice + i);
  for (int i = 0; i < a.n_bob; ++i) perm.push_back(a_bob + i);
  for (int i = 0; i < b.n_bob; ++i) perm.push_back(b_bob + i);
  return perm;
}

void check_partition(Partition p) {
  if (p.n_alice < 0 || p.n_bob < 0) {
    throw ShapeError("negative qubit count");
  }
  check_capacity(p.total());
}

}  // namespace

int max_qubits() {
  if (const char* env = std::getenv("EDPLAB_MAX_QUBITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 30) {
      return static_cast<int>(v);
    }
  }
  return 14;
}

void check_capacity(int total_qubits) {
  if (total_qubits > max_qubits()) {
    throw CapacityError("register of " + std::to_string(total_qubits) +
                        " qubits exceeds capacity of " +
                        std::to_string(max_qubits()));
  }
}

const char* to_string(Party party) {
  return party == Party::Alice ? "alice" : "bob";
}

// --- states ----------------------------------------------------------------

PureState::PureState(Partition partition, Vector amplitudes)
    : partition_(partition), amplitudes_(std::move(amplitudes)) {
  check_partition(partition_);
  if (static_cast<std::size_t>(amplitudes_.size()) != partition_.dim()) {
    throw ShapeError("amplitude vector has length " +
                     std::to_string(amplitudes_.size()) + ", expected " +
                     std::to_string(partition_.dim()));
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kStructuralTol) {
    throw InvalidStateError("state is not normalized");
  }
}

PureState PureState::basis(Partition partition, std::size_t index) {
  check_partition(partition);
  if (index >= partition.dim()) throw ShapeError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(partition.dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(partition, std::move(v));
}

PureState PureState::epr_pairs(int n) {
  if (n < 0) throw ParameterError("negative pair count");
  const Partition p{n, n};
  check_partition(p);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(p.dim()));
  const std::size_t half = p.dim_alice();
  const double amp = 1.0 / std::sqrt(static_cast<double>(half));
  for (std::size_t x = 0; x < half; ++x) {
    v(static_cast<Eigen::Index>(x * half + x)) = amp;
  }
  return PureState(p, std::move(v));
}

DensityMatrix::DensityMatrix(Partition partition, Matrix matrix)
    : DensityMatrix(partition, std::move(matrix), true) {}

DensityMatrix::DensityMatrix(Partition partition, Matrix matrix, bool validate)
    : partition_(partition), matrix_(std::move(matrix)) {
  check_partition(partition_);
  const auto d = static_cast<Eigen::Index>(partition_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw ShapeError("density matrix has shape " +
                     std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + ", expected " +
                     std::to_string(d) + "x" + std::to_string(d));
  }
  if (!validate) return;
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol) {
    throw InvalidStateError("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace().real() - 1.0) > kStructuralTol) {
    throw InvalidStateError("density matrix does not have unit trace");
  }
  if (min_eigenvalue(matrix_) < -kStructuralTol) {
    throw InvalidStateError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  const Vector& v = state.amplitudes();
  return DensityMatrix(state.partition(), v * v.adjoint(), false);
}

DensityMatrix DensityMatrix::maximally_mixed(Partition partition) {
  check_partition(partition);
  const auto d = static_cast<Eigen::Index>(partition.dim());
  return DensityMatrix(partition,
                       Matrix::Identity(d, d) / static_cast<double>(d), false);
}

DensityMatrix DensityMatrix::trusted(Partition partition, Matrix matrix) {
  return DensityMatrix(partition, std::move(matrix), false);
}

UnitaryOp::UnitaryOp(Matrix m, std::vector<int> t)
    : matrix(std::move(m)), targets(std::move(t)) {
  const auto d = Eigen::Index{1} << targets.size();
  if (matrix.rows() != d || matrix.cols() != d) {
    throw ShapeError("unitary dimension does not match target count");
  }
  if ((matrix * matrix.adjoint() - Matrix::Identity(d, d))
          .cwiseAbs()
          .maxCoeff() > kDerivedTol) {
    throw InvalidStateError("operator is not unitary");
  }
}

// --- gates -------------------------------------------------------------------

Matrix pauli(Pauli p) {
  const Complex i{0.0, 1.0};
  Matrix m(2, 2);
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      // Y|0> = -i|1>, Y|1> = i|0>.
      m << 0, i, -i, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Matrix pauli_y_standard() { return -pauli(Pauli::Y); }

Matrix hadamard() {
  Matrix m(2, 2);
  m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return m;
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

const char* to_string(Bell b) {
  switch (b) {
    case Bell::PhiPlus:
      return "Phi+";
    case Bell::PhiMinus:
      return "Phi-";
    case Bell::PsiPlus:
      return "Psi+";
    case Bell::PsiMinus:
      return "Psi-";
  }
  return "?";
}

const char* to_string(Pauli p) {
  switch (p) {
    case Pauli::I:
      return "I";
    case Pauli::X:
      return "X";
    case Pauli::Y:
      return "Y";
    case Pauli::Z:
      return "Z";
  }
  return "?";
}

PureState bell_state(Bell b) {
  Vector v = Vector::Zero(4);
  switch (b) {
    case Bell::PhiPlus:
      v(0) = kInvSqrt2;
      v(3) = kInvSqrt2;
      break;
    case Bell::PhiMinus:
      v(0) = kInvSqrt2;
      v(3) = -kInvSqrt2;
      break;
    case Bell::PsiPlus:
      v(1) = kInvSqrt2;
      v(2) = kInvSqrt2;
      break;
    case Bell::PsiMinus:
      v(1) = kInvSqrt2;
      v(2) = -kInvSqrt2;
      break;
  }
  return PureState(Partition{1, 1}, std::move(v));
}

namespace {

// Rows I, X, Y, Z; columns Phi+, Phi-, Psi+, Psi-.
constexpr int kBellSigns[4][4] = {
    {+1, +1, +1, +1},
    {+1, -1, +1, -1},
    {+1, -1, -1, +1},
    {+1, +1, -1, -1},
};

int measured_sign(const Matrix& u, Bell b) {
  const Matrix uu = kron(u, Matrix(u.conjugate()));
  const Vector v = bell_state(b).amplitudes();
  const Vector w = uu * v;
  const Complex overlap = v.dot(w);
  if (std::abs(std::abs(overlap) - 1.0) > kStructuralTol ||
      std::abs(overlap.imag()) > kStructuralTol) {
    throw std::logic_error("U (x) U* does not map a Bell state to +-itself");
  }
  return overlap.real() > 0 ? 1 : -1;
}

bool run_bell_self_test() {
  for (std::size_t u = 0; u < 4; ++u) {
    for (std::size_t b = 0; b < 4; ++b) {
      if (measured_sign(pauli(kPaulis[u]), kBells[b]) != kBellSigns[u][b]) {
        throw std::logic_error("Bell action table disagrees with matrices");
      }
    }
  }
  const Matrix y = pauli(Pauli::Y);
  const Matrix ys = pauli_y_standard();
  const Matrix a = kron(y, Matrix(y.conjugate()));
  const Matrix b = kron(ys, Matrix(ys.conjugate()));
  if ((a - b).cwiseAbs().maxCoeff() > kStructuralTol) {
    throw std::logic_error("Y (x) Y* depends on the Y sign convention");
  }
  return true;
}

}  // namespace

bool bell_table_self_test() {
  static const bool ok = run_bell_self_test();
  return ok;
}

BellAction bell_action(Pauli u, Bell b) {
  bell_table_self_test();
  const int sign =
      kBellSigns[static_cast<std::size_t>(u)][static_cast<std::size_t>(b)];
  return BellAction{sign, b};
}

// --- register plumbing ---------------------------------------------------

Vector permute_qubits(const Vector& v, std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  if (v.size() != (Eigen::Index{1} << n)) throw ShapeError("bad vector size");
  const auto map = permutation_map(perm, n);
  Vector out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out(static_cast<Eigen::Index>(map[i])) = v(static_cast<Eigen::Index>(i));
  }
  return out;
}

Matrix permute_qubits(const Matrix& m, std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  if (m.rows() != (Eigen::Index{1} << n) || m.cols() != m.rows()) {
    throw ShapeError("bad matrix size");
  }
  const auto map = permutation_map(perm, n);
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) {
      out(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j])) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  const Partition p{a.partition().n_alice + b.partition().n_alice,
                    a.partition().n_bob + b.partition().n_bob};
  check_partition(p);
  const auto perm = pair_merge_order(a.partition(), b.partition());
  return PureState(p, permute_qubits(kron(a.amplitudes(), b.amplitudes()), perm));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  const Partition p{a.partition().n_alice + b.partition().n_alice,
                    a.partition().n_bob + b.partition().n_bob};
  check_partition(p);
  const auto perm = pair_merge_order(a.partition(), b.partition());
  return DensityMatrix::trusted(
      p, permute_qubits(kron(a.matrix(), b.matrix()), perm));
}

PureState tensor_power(const PureState& a, int n) {
  if (n < 1) throw ParameterError("tensor power needs n >= 1");
  PureState out = a;
  for (int i = 1; i < n; ++i) out = tensor(out, a);
  return out;
}

DensityMatrix tensor_power(const DensityMatrix& a, int n) {
  if (n < 1) throw ParameterError("tensor power needs n >= 1");
  DensityMatrix out = a;
  for (int i = 1; i < n; ++i) out = tensor(out, a);
  return out;
}

Matrix partial_trace(const Matrix& rho, int n_qubits, std::vector<int> keep) {
  if (keep.empty()) {
    throw ShapeError("partial trace over every qubit is not supported");
  }
  std::sort(keep.begin(), keep.end());
  check_targets(keep, n_qubits);
  std::vector<int> traced;
  for (int q = 0; q < n_qubits; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);
  }
  const auto kept_off = sub_offsets(keep, n_qubits);
  const auto traced_off = sub_offsets(traced, n_qubits);
  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (std::size_t t : traced_off) {
        acc += rho(static_cast<Eigen::Index>(kept_off[static_cast<std::size_t>(a)] + t),
                   static_cast<Eigen::Index>(kept_off[static_cast<std::size_t>(b)] + t));
      }
      out(a, b) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const Partition& p = rho.partition();
  std::sort(keep.begin(), keep.end());
  Partition reduced{0, 0};
  for (int q : keep) {
    if (q >= 0 && q < p.n_alice) {
      ++reduced.n_alice;
    } else {
      ++reduced.n_bob;
    }
  }
  Matrix m = partial_trace(rho.matrix(), p.total(), keep);
  return DensityMatrix::trusted(reduced, std::move(m));
}

Matrix reduce_to_party(const Matrix& rho, Partition partition, Party party) {
  std::vector<int> keep;
  if (party == Party::Alice) {
    for (int i = 0; i < partition.n_alice; ++i) keep.push_back(i);
  } else {
    for (int i = 0; i < partition.n_bob; ++i) keep.push_back(partition.n_alice + i);
  }
  return partial_trace(rho, partition.total(), keep);
}

Vector apply(const Matrix& op, std::span<const int> targets, const Vector& v,
             int n_qubits) {
  check_targets(targets, n_qubits);
  Matrix m = v;
  return left_apply(op, targets, m, n_qubits).col(0);
}

Matrix conjugate(const Matrix& op, std::span<const int> targets,
                 const Matrix& rho, int n_qubits) {
  check_targets(targets, n_qubits);
  Matrix left = left_apply(op, targets, rho, n_qubits);
  Matrix both = left_apply(op, targets, Matrix(left.adjoint()), n_qubits);
  return both.adjoint();
}

Matrix embed(const Matrix& op, std::span<const int> targets, int n_qubits) {
  check_targets(targets, n_qubits);
  const auto d = Eigen::Index{1} << n_qubits;
  return left_apply(op, targets, Matrix::Identity(d, d), n_qubits);
}

// --- fidelities --------------------------------------------------------------

double min_eigenvalue(const Matrix& hermitian) {
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix psd_sqrt(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kStructuralTol) {
      throw InvalidStateError("matrix is not positive semidefinite");
    }
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

namespace {

// Columns V_i sqrt(lambda_i) over the eigenvalues above round-off, so that
// B B^dagger reproduces the operand. Dropping the noise eigenvalues keeps
// their square roots (about 1e-8) out of the fidelity.
Matrix psd_factor(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.size() > 0 && ev(0) < -kStructuralTol) {
    throw InvalidStateError("matrix is not positive semidefinite");
  }
  const double cutoff = 1e-14 * std::max(1.0, ev.size() > 0 ? ev(ev.size() - 1) : 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff) keep.push_back(i);
  }
  Matrix b(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    b.col(static_cast<Eigen::Index>(c)) =
        es.eigenvectors().col(keep[c]) * std::sqrt(ev(keep[c]));
  }
  return b;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ShapeError("fidelity of unequal dimensions");
  // sqrt F is the trace norm of sqrt(rho) sqrt(sigma), which has the same
  // singular values as B_rho^dagger B_sigma.
  const Matrix a = psd_factor(rho.matrix());
  const Matrix b = psd_factor(sigma.matrix());
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  const Matrix cross = a.adjoint() * b;
  Eigen::BDCSVD<Matrix> svd(cross);
  const double tr = svd.singularValues().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const PureState& phi) {
  if (rho.dim() != phi.dim()) throw ShapeError("fidelity of unequal dimensions");
  const Vector& v = phi.amplitudes();
  return v.dot(rho.matrix() * v).real();
}

double epr_fidelity(const DensityMatrix& rho) {
  const Partition& p = rho.partition();
  if (!p.symmetric()) throw ShapeError("EPR fidelity needs n_alice == n_bob");
  const std::size_t half = p.dim_alice();
  Complex acc = 0.0;
  for (std::size_t x = 0; x < half; ++x) {
    for (std::size_t y = 0; y < half; ++y) {
      acc += rho.matrix()(static_cast<Eigen::Index>(x * half + x),
                          static_cast<Eigen::Index>(y * half + y));
    }
  }
  return acc.real() / static_cast<double>(half);
}

double epr_fidelity(const PureState& phi) {
  const Partition& p = phi.partition();
  if (!p.symmetric()) throw ShapeError("EPR fidelity needs n_alice == n_bob");
  const std::size_t half = p.dim_alice();
  Complex acc = 0.0;
  for (std::size_t x = 0; x < half; ++x) {
    acc += phi.amplitudes()(static_cast<Eigen::Index>(x * half + x));
  }
  return std::norm(acc) / static_cast<double>(half);
}

namespace {

struct PairIndexing {
  std::size_t alice_bit;
  std::size_t bob_bit;
  std::vector<std::size_t> rest;
};

PairIndexing first_pair_indexing(Partition p) {
  if (p.n_alice < 1 || p.n_bob < 1) {
    throw ShapeError("base fidelity needs at least one qubit per party");
  }
  const int n = p.total();
  PairIndexing out{bit_of(0, n), bit_of(p.n_alice, n), {}};
  std::vector<int> others;
  for (int q = 0; q < n; ++q) {
    if (q != 0 && q != p.n_alice) others.push_back(q);
  }
  out.rest = sub_offsets(others, n);
  return out;
}

}  // namespace

double base_fidelity_raw(const Matrix& rho, Partition partition) {
  const PairIndexing ix = first_pair_indexing(partition);
  const std::size_t both = ix.alice_bit | ix.bob_bit;
  Complex acc = 0.0;
  for (std::size_t r : ix.rest) {
    const auto i00 = static_cast<Eigen::Index>(r);
    const auto i11 = static_cast<Eigen::Index>(r | both);
    acc += rho(i00, i00) + rho(i00, i11) + rho(i11, i00) + rho(i11, i11);
  }
  return 0.5 * acc.real();
}

double base_fidelity(const DensityMatrix& rho) {
  return base_fidelity_raw(rho.matrix(), rho.partition());
}

double base_fidelity(const PureState& phi) {
  const PairIndexing ix = first_pair_indexing(phi.partition());
  const std::size_t both = ix.alice_bit | ix.bob_bit;
  const Vector& v = phi.amplitudes();
  double acc = 0.0;
  for (std::size_t r : ix.rest) {
    acc += std::norm(v(static_cast<Eigen::Index>(r)) +
                     v(static_cast<Eigen::Index>(r | both)));
  }
  return 0.5 * acc;
}

double pauli_deviation_sum(const PureState& phi, const PureState& psi) {
  if (phi.dim() != psi.dim()) throw ShapeError("states of unequal dimension");
  const int n = phi.partition().total();
  if (n < 1) throw ShapeError("states need at least one qubit");
  const int target[] = {0};
  double sum = 0.0;
  for (Pauli u : kPaulis) {
    const Vector moved = apply(pauli(u), target, psi.amplitudes(), n);
    sum += std::norm(phi.amplitudes().dot(moved));
  }
  return sum;
}

BellIdentity bell_identity_check(const PureState& phi) {
  const Partition& p = phi.partition();
  if (p.n_alice < 1 || p.n_bob < 1) {
    throw ShapeError("Bell identity needs at least one pair");
  }
  const int n = p.total();
  const int targets[] = {0, p.n_alice};
  double lhs = phi.amplitudes().squaredNorm();
  for (Pauli u : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const Matrix m = pauli(u);
    const Vector moved = apply(kron(m, Matrix(m.conjugate())), targets,
                               phi.amplitudes(), n);
    lhs += phi.amplitudes().dot(moved).real();
  }
  return BellIdentity{lhs, 4.0 * base_fidelity(phi)};
}

}  // namespace edplab
