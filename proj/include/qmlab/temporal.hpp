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

#pragma once

#include <vector>

#include "qmlab/measurement.hpp"

namespace qmlab {

/// CPTP map in Kraus form, sum_k K^dag K = I.
class Channel {
 public:
  explicit Channel(std::vector<ComplexMatrixd> kraus);

  static Channel identity(Eigen::Index dim);
  static Channel unitary(const ComplexMatrixd& u);
  /// rho -> tr(rho) I/2 through the four Kraus operators sigma_k / 2.
  static Channel fully_depolarizing();

  const std::vector<ComplexMatrixd>& kraus() const noexcept { return kraus_; }
  Eigen::Index dim() const noexcept { return kraus_.front().rows(); }

  ComplexMatrixd apply(const ComplexMatrixd& m) const;
  DensityMatrixd apply(const DensityMatrixd& rho) const;

 private:
  std::vector<ComplexMatrixd> kraus_;
};

/// Haar-random 2x2 unitary channel.
template <typename Rng>
Channel random_unitary_channel(Rng& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrixd g(2, 2);
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<ComplexMatrixd> qr(g);
  ComplexMatrixd q = qr.householderQ();
  const ComplexMatrixd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < 2; ++k) {
    const auto d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return Channel::unitary(q);
}

/// Hermitian unit-trace 4x4 two-time operator; may have negative eigenvalues.
class PseudoDensityMatrix {
 public:
  explicit PseudoDensityMatrix(const ComplexMatrixd& r);

  const ComplexMatrixd& matrix() const noexcept { return r_; }
  /// Ascending.
  const RealVectord& eigenvalues() const noexcept { return eigenvalues_; }
  double min_eigenvalue() const { return eigenvalues_.minCoeff(); }

 private:
  ComplexMatrixd r_;
  RealVectord eigenvalues_;
};

/// Pauli correlator c_ij: sigma_i measured with Lueders update at time one,
/// the channel applied, sigma_j read at time two. c_00 = 1,
/// c_i0 = tr(sigma_i rho), c_0j = tr(sigma_j ch(rho)).
double two_time_correlator(int i, int j, const DensityMatrixd& rho, const Channel& ch);

/// All sixteen correlators, indexed [i][j].
Eigen::Matrix4d two_time_correlators(const DensityMatrixd& rho, const Channel& ch);

/// c_ij = tr(sigma_i rho_a) tr(sigma_j rho_b): the spatial product-state case.
Eigen::Matrix4d product_correlators(const DensityMatrixd& rho_a, const DensityMatrixd& rho_b);

/// R = 1/4 sum_ij c_ij sigma_i (x) sigma_j; slot 1 is time one.
PseudoDensityMatrix pdm_from_correlators(const Eigen::Matrix4d& c);

PseudoDensityMatrix build_pdm(const DensityMatrixd& rho, const Channel& ch);

/// Sum of |lambda| over eigenvalues below -1e-9.
double negativity(const PseudoDensityMatrix& p);

/// Partial traces of a 4x4 operator on C^2 (x) C^2.
ComplexMatrixd trace_out_second(const ComplexMatrixd& r);
ComplexMatrixd trace_out_first(const ComplexMatrixd& r);

}  // namespace qmlab
