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

#include "edplab/verify.hpp"

namespace edplab {

double BoundReport::margin() const {
  switch (direction) {
    case Direction::Upper:
      return bound - achieved;
    case Direction::Lower:
      return achieved - bound;
    case Direction::Equal:
      return -std::abs(achieved - bound);
  }
  return 0.0;
}

bool BoundReport::pass() const { return skipped || margin() >= -tolerance; }

BoundReport make_report(std::string theorem,
                        std::vector<std::pair<std::string, double>> params,
                        double bound, double achieved, Direction direction,
                        double tolerance) {
  BoundReport r;
  r.theorem = std::move(theorem);
  r.params = std::move(params);
  r.bound = bound;
  r.achieved = achieved;
  r.direction = direction;
  r.tolerance = tolerance;
  return r;
}

bool all_pass(const std::vector<BoundReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const BoundReport& r) { return r.pass(); });
}

namespace {

void require_hermitian(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(name) + " is not square");
  if (m.size() > 0 && (m - m.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol) {
    throw InvalidStateError(std::string(name) + " is not Hermitian");
  }
}

}  // namespace

DominanceReport check_dominance(const Matrix& a, const Matrix& b, double tolerance) {
  require_hermitian(a, "A");
  require_hermitian(b, "B");
  if (a.rows() != b.rows()) throw ShapeError("dominance operands differ in dimension");
  const double lambda = min_eigenvalue(a - b);
  return {lambda, lambda >= -tolerance};
}

PovmReport check_povm_consequence(const Matrix& rho, const Matrix& sigma, double a,
                                  const std::vector<Matrix>& povm, double tolerance) {
  require_hermitian(rho, "rho");
  require_hermitian(sigma, "sigma");
  if (rho.rows() != sigma.rows()) throw ShapeError("operands differ in dimension");
  double worst = std::numeric_limits<double>::infinity();
  for (const Matrix& e : povm) {
    if (e.rows() != rho.rows() || e.cols() != rho.cols()) {
      throw ShapeError("POVM element has the wrong dimension");
    }
    const double pm = (e * rho).trace().real();
    const double qm = (e * sigma).trace().real();
    worst = std::min(worst, pm - a * qm);
  }
  return {worst, worst >= -tolerance};
}

}  // namespace edplab
