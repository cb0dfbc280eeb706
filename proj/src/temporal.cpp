// Copyright 2026 The qmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmlab/temporal.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace qmlab {

namespace {

void require_qubit(Eigen::Index dim, const char* who) {
  if (dim != 2) throw UnsupportedDimension(std::string(who) + ": qubit required, got dimension " + std::to_string(dim));
}

double pauli_expectation(int k, const ComplexMatrixd& m) { return (m * pauli(k)).trace().real(); }

}  // namespace

Channel::Channel(std::vector<ComplexMatrixd> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvalidInput("channel: no Kraus operators");
  const auto d = kraus_.front().rows();
  if (d == 0) throw InvalidInput("channel: empty Kraus operator");
  ComplexMatrixd sum = ComplexMatrixd::Zero(d, d);
  for (const auto& k : kraus_) {
    if (k.rows() != d || k.cols() != d) throw DimensionMismatch("channel: Kraus operators of different shape");
    if (!k.allFinite()) throw InvalidInput("channel: non-finite Kraus entry");
    sum += k.adjoint() * k;
  }
  const double defect = max_abs_diff(sum, ComplexMatrixd::Identity(d, d));
  if (defect > tol::completeness) throw InvalidInput("channel: not trace preserving, defect " + std::to_string(defect));
}

Channel Channel::identity(Eigen::Index dim) { return Channel({ComplexMatrixd::Identity(dim, dim)}); }

Channel Channel::unitary(const ComplexMatrixd& u) { return Channel({u}); }

Channel Channel::fully_depolarizing() {
  return Channel({pauli(0) / 2.0, pauli(1) / 2.0, pauli(2) / 2.0, pauli(3) / 2.0});
}

ComplexMatrixd Channel::apply(const ComplexMatrixd& m) const {
  if (m.rows() != dim() || m.cols() != dim()) throw DimensionMismatch("channel: operand dimension mismatch");
  ComplexMatrixd out = ComplexMatrixd::Zero(dim(), dim());
  for (const auto& k : kraus_) out += k * m * k.adjoint();
  return out;
}

DensityMatrixd Channel::apply(const DensityMatrixd& rho) const {
  const ComplexMatrixd out = apply(rho.matrix());
  return DensityMatrixd(ComplexMatrixd((out + out.adjoint()) / 2.0));
}

PseudoDensityMatrix::PseudoDensityMatrix(const ComplexMatrixd& r) {
  if (r.rows() != 4 || r.cols() != 4) throw UnsupportedDimension("pseudo-density matrix: two-qubit (4x4) operator required");
  if (!r.allFinite()) throw InvalidInput("pseudo-density matrix: non-finite entry");
  const double herm = hermiticity_defect<double>(r);
  if (herm > tol::hermiticity) throw InvalidInput("pseudo-density matrix: not Hermitian, defect " + std::to_string(herm));
  const double tr = r.trace().real();
  if (std::abs(tr - 1.0) > tol::trace) throw InvalidInput("pseudo-density matrix: trace " + std::to_string(tr));
  r_ = (r + r.adjoint()) / 2.0;
  eigenvalues_ = hermitian_eigenvalues<double>(r_);
}

double two_time_correlator(int i, int j, const DensityMatrixd& rho, const Channel& ch) {
  if (i < 0 || i > 3 || j < 0 || j > 3) throw InvalidInput("two_time_correlator: Pauli index must be 0..3");
  require_qubit(rho.dim(), "two_time_correlator");
  require_qubit(ch.dim(), "two_time_correlator");
  if (i == 0 && j == 0) return 1.0;
  if (j == 0) return pauli_expectation(i, rho.matrix());
  if (i == 0) return pauli_expectation(j, ch.apply(rho.matrix()));

  const ComplexMatrixd id = pauli(0);
  double c = 0;
  for (const int a : {+1, -1}) {
    const ComplexMatrixd proj = (id + static_cast<double>(a) * pauli(i)) / 2.0;
    c += a * pauli_expectation(j, ch.apply(ComplexMatrixd(proj * rho.matrix() * proj)));
  }
  return c;
}

Eigen::Matrix4d two_time_correlators(const DensityMatrixd& rho, const Channel& ch) {
  Eigen::Matrix4d c;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) c(i, j) = two_time_correlator(i, j, rho, ch);
  }
  return c;
}

Eigen::Matrix4d product_correlators(const DensityMatrixd& rho_a, const DensityMatrixd& rho_b) {
  require_qubit(rho_a.dim(), "product_correlators");
  require_qubit(rho_b.dim(), "product_correlators");
  Eigen::Vector4d a, b;
  for (int k = 0; k < 4; ++k) {
    a(k) = pauli_expectation(k, rho_a.matrix());
    b(k) = pauli_expectation(k, rho_b.matrix());
  }
  return a * b.transpose();
}

PseudoDensityMatrix pdm_from_correlators(const Eigen::Matrix4d& c) {
  ComplexMatrixd r = ComplexMatrixd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) r += c(i, j) * ComplexMatrixd(Eigen::kroneckerProduct(pauli(i), pauli(j)));
  }
  return PseudoDensityMatrix(r / 4.0);
}

PseudoDensityMatrix build_pdm(const DensityMatrixd& rho, const Channel& ch) {
  return pdm_from_correlators(two_time_correlators(rho, ch));
}

double negativity(const PseudoDensityMatrix& p) {
  double n = 0;
  for (Eigen::Index k = 0; k < p.eigenvalues().size(); ++k) {
    if (p.eigenvalues()(k) < -tol::psd) n -= p.eigenvalues()(k);
  }
  return n;
}

ComplexMatrixd trace_out_second(const ComplexMatrixd& r) {
  if (r.rows() != 4 || r.cols() != 4) throw UnsupportedDimension("partial trace: 4x4 operator required");
  ComplexMatrixd out(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out(a, b) = r(2 * a, 2 * b) + r(2 * a + 1, 2 * b + 1);
  }
  return out;
}

ComplexMatrixd trace_out_first(const ComplexMatrixd& r) {
  if (r.rows() != 4 || r.cols() != 4) throw UnsupportedDimension("partial trace: 4x4 operator required");
  ComplexMatrixd out(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out(a, b) = r(a, b) + r(2 + a, 2 + b);
  }
  return out;
}

}  // namespace qmlab
