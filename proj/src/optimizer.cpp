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

// Local-unitary ascent for 0-bit protocols.
//
// A deterministic 0-bit protocol is a pair of local unitaries on each
// party's register plus ancillas, followed by keeping the first pair.
// With the state written as an Alice-by-Bob amplitude matrix M, the
// output amplitudes are X = U_A M U_B^T and the base fidelity is
// (1/2) ||X_00 + X_11||_F^2, where X_ij is the block with Alice's first
// qubit i and Bob's first qubit j.

#include <algorithm>
#include <cmath>
#include <limits>

#include "edplab/random.hpp"
#include "edplab/verify.hpp"

namespace edplab {

Matrix amplitude_matrix(const PureState& state, int ancillas) {
  if (ancillas < 0) throw ParameterError("negative ancilla count");
  const Partition& p = state.partition();
  const auto da = static_cast<Eigen::Index>(p.dim_alice());
  const auto db = static_cast<Eigen::Index>(p.dim_bob());
  const Eigen::Index pad = Eigen::Index{1} << ancillas;
  Matrix m = Matrix::Zero(da * pad, db * pad);
  for (Eigen::Index x = 0; x < da; ++x) {
    for (Eigen::Index y = 0; y < db; ++y) {
      m(x * pad, y * pad) = state.amplitudes()(x * db + y);
    }
  }
  return m;
}

namespace {

Matrix fold(const Matrix& x) {
  const Eigen::Index h = x.rows() / 2;
  const Eigen::Index w = x.cols() / 2;
  return x.topLeftCorner(h, w) + x.bottomRightCorner(h, w);
}

Matrix unfold(const Matrix& y) {
  Matrix z = Matrix::Zero(2 * y.rows(), 2 * y.cols());
  z.topLeftCorner(y.rows(), y.cols()) = y;
  z.bottomRightCorner(y.rows(), y.cols()) = y;
  return z;
}

// exp(eta * omega) for anti-Hermitian omega, unitary to rounding.
Matrix expm_anti_hermitian(const Matrix& omega, double eta) {
  const Matrix h = Complex(0.0, 1.0) * omega;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  Vector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -eta * es.eigenvalues()(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct Problem {
  std::vector<Matrix> states;
  std::vector<double> weights;
};

struct Ascent {
  double value;
  bool converged;
};

Ascent ascend(const Problem& prob, Matrix& ua, Matrix& ub, const OptimizerConfig& cfg) {
  double value = local_unitary_objective(prob.states, prob.weights, ua, ub);
  double eta = cfg.initial_step;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const auto [ga, gb] = local_unitary_gradient(prob.states, prob.weights, ua, ub);
    const Matrix aa = ga * ua.adjoint();
    const Matrix ab = gb * ub.adjoint();
    const Matrix omega_a = aa - aa.adjoint();
    const Matrix omega_b = ab - ab.adjoint();
    const double norm2 = omega_a.squaredNorm() + omega_b.squaredNorm();
    if (norm2 < cfg.gradient_tolerance) return {value, true};
    bool moved = false;
    while (eta > 1e-12) {
      const Matrix ta = expm_anti_hermitian(omega_a, eta) * ua;
      const Matrix tb = expm_anti_hermitian(omega_b, eta) * ub;
      const double trial = local_unitary_objective(prob.states, prob.weights, ta, tb);
      if (trial > value) {
        ua = ta;
        ub = tb;
        value = trial;
        eta = std::min(eta * 1.5, 16.0);
        moved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!moved) return {value, true};
  }
  return {value, false};
}

}  // namespace

double local_unitary_objective(const std::vector<Matrix>& states,
                               const std::vector<double>& weights,
                               const Matrix& alice, const Matrix& bob) {
  const Matrix bob_t = bob.transpose();
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Matrix x = alice * states[i] * bob_t;
    total += 0.5 * weights[i] * fold(x).squaredNorm();
  }
  return total;
}

std::pair<Matrix, Matrix> local_unitary_gradient(const std::vector<Matrix>& states,
                                                 const std::vector<double>& weights,
                                                 const Matrix& alice,
                                                 const Matrix& bob) {
  const Matrix bob_t = bob.transpose();
  const Matrix alice_c = alice.conjugate();
  const Matrix bob_c = bob.conjugate();
  Matrix ga = Matrix::Zero(alice.rows(), alice.cols());
  Matrix gb = Matrix::Zero(bob.rows(), bob.cols());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Matrix& m = states[i];
    const Matrix z = unfold(fold(alice * m * bob_t));
    ga += weights[i] * z * bob_c * m.adjoint();
    gb += weights[i] * z.transpose() * alice_c * m.conjugate();
  }
  return {ga, gb};
}

OptimizationResult maximize_local_unitaries(const PureEnsemble& ensemble, int ancillas,
                                            const OptimizerConfig& config) {
  if (ensemble.empty()) throw ParameterError("empty ensemble");
  if (config.restarts < 1) throw ParameterError("need at least one restart");
  const Partition& part = ensemble.front().state.partition();
  check_capacity(part.total() + 2 * ancillas);

  Problem prob;
  for (const auto& member : ensemble) {
    if (member.weight == 0.0) continue;
    prob.states.push_back(amplitude_matrix(member.state, ancillas));
    prob.weights.push_back(member.weight);
  }
  const auto da = static_cast<std::size_t>(prob.states.front().rows());
  const auto db = static_cast<std::size_t>(prob.states.front().cols());

  OptimizationResult result;
  result.best = -std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < config.restarts; ++restart) {
    Rng rng(config.seed, static_cast<std::uint64_t>(restart));
    Matrix ua = Matrix::Identity(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
    Matrix ub = Matrix::Identity(static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db));
    if (restart > 0) {
      ua = random_unitary(da, rng);
      ub = random_unitary(db, rng);
    }
    Ascent best = ascend(prob, ua, ub, config);
    // Perturb and re-ascend with shrinking kicks; keep the better point.
    for (double kick : {0.3, 0.1}) {
      Matrix ka = expm_anti_hermitian(random_anti_hermitian(da, rng), kick) * ua;
      Matrix kb = expm_anti_hermitian(random_anti_hermitian(db, rng), kick) * ub;
      const Ascent next = ascend(prob, ka, kb, config);
      if (next.value > best.value) {
        best = next;
        ua = ka;
        ub = kb;
      }
    }
    result.per_restart.push_back(best.value);
    if (best.value > result.best) {
      result.best = best.value;
      result.converged = best.converged;
      result.alice = ua;
      result.bob = ub;
    }
  }
  return result;
}

namespace {

void check_optimizer_range(int n, int ancillas) {
  if (n < 1 || n > 3) throw ParameterError("optimizer supports 1 <= n <= 3");
  if (ancillas < 0 || ancillas > 2) {
    throw ParameterError("optimizer supports 0 to 2 ancillas per party");
  }
}

BoundReport finish(BoundReport report, const OptimizationResult& opt, double floor,
                   const OptimizerConfig& config) {
  report.floor = floor;
  report.seed = config.seed;
  report.converged = opt.converged;
  report.note =
      "searched class: local unitaries with the stated ancillas; shared "
      "randomness covered by linearity";
  if (opt.best < floor - kCertificateTol) {
    report.converged = false;
    report.note += "; best value below the achievable floor";
  }
  return report;
}

}  // namespace

BoundReport optimize_0bit_measure_r(int n, int r, int ancillas,
                                    const OptimizerConfig& config) {
  check_optimizer_range(n, ancillas);
  if (r < 0 || r > n) throw ParameterError("need 0 <= r <= n");
  const OptimizationResult opt =
      maximize_local_unitaries(measure_r_average(n, r), ancillas, config);
  const double bound = 1.0 - static_cast<double>(r) / (2.0 * n);
  BoundReport report = make_report(
      "neg_measure_r",
      {{"n", n}, {"r", r}, {"ancillas", ancillas}, {"restarts", config.restarts}},
      bound, opt.best, Direction::Upper, kCertificateTol);
  return finish(std::move(report), opt, bound, config);
}

BoundReport optimize_0bit_depolarization(int n, double p, int ancillas,
                                         const OptimizerConfig& config) {
  check_optimizer_range(n, ancillas);
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("need 0 <= p <= 1");
  const OptimizationResult opt =
      maximize_local_unitaries(depolarization_pure_ensemble(n, p), ancillas, config);
  BoundReport report = make_report(
      "neg_depolarization",
      {{"n", n}, {"p", p}, {"ancillas", ancillas}, {"restarts", config.restarts}},
      1.0 - p / 2.0, opt.best, Direction::Upper, kCertificateTol);
  return finish(std::move(report), opt, 1.0 - 0.75 * p, config);
}

}  // namespace edplab
