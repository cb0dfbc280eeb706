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

// Independent reference computations for the test suites. Nothing here calls
// into the library's update, measurement or fitting paths: qubit states are
// handled as Bloch vectors and probabilities via closed forms.

#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

struct Bloch {
  double x = 0, y = 0, z = 0;
  double r() const { return std::sqrt(x * x + y * y + z * z); }
};

/// (I + v.sigma)/2 written out entrywise.
inline M2 density(const Bloch& v) {
  return {{{C(0.5 * (1 + v.z)), C(0.5 * v.x, -0.5 * v.y)}, {C(0.5 * v.x, 0.5 * v.y), C(0.5 * (1 - v.z))}}};
}

/// Bloch vector of a qubit mixture with weight w on |z+><z+| and 1-w on I/2.
inline Bloch z_plus_garbage(double w) { return {0, 0, w}; }

/// Logistic radial map applied to a Bloch vector.
inline Bloch logistic(double lambda, const Bloch& v) {
  const double r = v.r();
  if (r == 0) return {};
  const double s = lambda * (1 - r);
  return {v.x * s, v.y * s, v.z * s};
}

/// Computational-basis outcome probability for sign s (+1 for z+).
inline double z_prob(int s, const Bloch& v) { return 0.5 * (1 + s * v.z); }

/// Two computational-basis stages with the logistic update in between:
/// P(i, j) = (1 + s_i z)/2 * (1 + s_j z')/2, indexed [i][j] with 0 = z+.
inline std::array<std::array<double, 2>, 2> logistic_joint(double lambda, const Bloch& v) {
  const Bloch post = logistic(lambda, v);
  std::array<std::array<double, 2>, 2> p{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) p[i][j] = z_prob(i == 0 ? 1 : -1, v) * z_prob(j == 0 ? 1 : -1, post);
  }
  return p;
}

/// Same experiment under the Lueders rule: a repeatable projective
/// measurement, so P(i, j) = delta_ij (1 + s_i z)/2.
inline std::array<std::array<double, 2>, 2> lueders_joint(const Bloch& v) {
  return {{{z_prob(1, v), 0.0}, {0.0, z_prob(-1, v)}}};
}

/// Second-stage z+ marginal for the logistic experiment on w|z+><z+| + (1-w)I/2.
inline double logistic_marginal_zplus(double lambda, double w) { return 0.5 * (1 + lambda * w * (1 - w)); }

/// Eigenvalues of a 2x2 Hermitian matrix, ascending.
inline std::array<double, 2> eig2(const M2& m) {
  const double a = m[0][0].real(), d = m[1][1].real();
  const double off = std::abs(m[0][1]);
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  return {mean - rad, mean + rad};
}

/// Trace distance of two qubit states: half the Euclidean Bloch distance.
inline double trace_distance(const Bloch& a, const Bloch& b) {
  return 0.5 * std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

/// Purity tr(rho^2) = (1 + r^2)/2.
inline double purity(const Bloch& v) { return 0.5 * (1 + v.r() * v.r()); }

}  // namespace oracle
