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

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qmlab/statekit.hpp"

namespace qmlab {

namespace tol {
inline constexpr double effect_spectrum = 1e-9;
inline constexpr double completeness = 1e-10;
inline constexpr double probability_clamp = 1e-12;
inline constexpr double distribution_sum = 1e-10;
}  // namespace tol

/// Operator Q with 0 <= Q <= I.
template <typename Real = double>
class Effect {
 public:
  using Matrix = ComplexMatrix<Real>;

  explicit Effect(const Matrix& q) {
    if (q.rows() != q.cols() || q.rows() == 0) throw InvalidInput("effect: operator must be square");
    if (!q.allFinite()) throw InvalidInput("effect: non-finite entry");
    const Real herm = hermiticity_defect<Real>(q);
    if (herm > Real(tol::hermiticity)) {
      throw InvalidInput("effect: not Hermitian, max |Q-Q^dag| = " + std::to_string(herm));
    }
    const auto ev = hermitian_eigenvalues<Real>(q);
    if (ev.minCoeff() < -Real(tol::effect_spectrum) || ev.maxCoeff() > Real(1) + Real(tol::effect_spectrum)) {
      throw InvalidInput("effect: spectrum [" + std::to_string(ev.minCoeff()) + ", " +
                         std::to_string(ev.maxCoeff()) + "] outside [0, 1]");
    }
    q_ = (q + q.adjoint()) / Real(2);
  }

  static Effect identity(Eigen::Index dim) { return Effect(Matrix::Identity(dim, dim)); }

  const Matrix& matrix() const noexcept { return q_; }
  Eigen::Index dim() const noexcept { return q_.rows(); }

 private:
  Matrix q_;
};

using Effectd = Effect<double>;

/// Ordered, labelled effects summing to the identity.
template <typename Real = double>
class Povm {
 public:
  Povm(std::vector<Effect<Real>> effects, std::vector<std::string> labels)
      : effects_(std::move(effects)), labels_(std::move(labels)) {
    if (effects_.empty()) throw InvalidInput("povm: no effects");
    if (effects_.size() != labels_.size()) throw InvalidInput("povm: one label per effect required");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw InvalidInput("povm: empty outcome label");
      for (std::size_t j = 0; j < i; ++j) {
        if (labels_[i] == labels_[j]) throw InvalidInput("povm: duplicate label '" + labels_[i] + "'");
      }
    }
    const auto d = effects_.front().dim();
    ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(d, d);
    for (const auto& e : effects_) {
      if (e.dim() != d) throw DimensionMismatch("povm: effects of different dimension");
      sum += e.matrix();
    }
    const Real defect = max_abs_diff(sum, ComplexMatrix<Real>::Identity(d, d));
    if (defect > Real(tol::completeness)) {
      throw InvalidInput("povm: effects do not sum to identity, defect " + std::to_string(defect));
    }
  }

  const std::vector<Effect<Real>>& effects() const noexcept { return effects_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return effects_.size(); }
  Eigen::Index dim() const noexcept { return effects_.front().dim(); }

  std::size_t index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw InvalidInput("povm: unknown outcome label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  const Effect<Real>& effect(const std::string& label) const { return effects_[index_of(label)]; }

 private:
  std::vector<Effect<Real>> effects_;
  std::vector<std::string> labels_;
};

using Povmd = Povm<double>;

template <typename Real = double>
class OutcomeDistribution {
 public:
  OutcomeDistribution(std::vector<std::string> labels, std::vector<Real> probabilities)
      : labels_(std::move(labels)), p_(std::move(probabilities)) {
    if (labels_.size() != p_.size() || p_.empty()) throw InvalidInput("distribution: label/probability count mismatch");
    Real total = 0;
    for (const Real p : p_) {
      if (!(p >= -Real(tol::probability_clamp) && p <= Real(1) + Real(tol::probability_clamp))) {
        throw InvalidInput("distribution: probability " + std::to_string(p) + " outside [0, 1]");
      }
      total += p;
    }
    if (std::abs(total - Real(1)) > Real(tol::distribution_sum)) {
      throw InvalidInput("distribution: probabilities sum to " + std::to_string(total));
    }
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Real>& probabilities() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }

  Real probability(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw InvalidInput("distribution: unknown outcome label '" + label + "'");
    return p_[static_cast<std::size_t>(it - labels_.begin())];
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Real> p_;
};

using OutcomeDistributiond = OutcomeDistribution<double>;

/// tr(rho Q). Values within 1e-12 outside [0, 1] are clamped; anything
/// further out is an error rather than silently repaired.
template <typename Real>
Real born_probability(const Effect<Real>& q, const DensityMatrix<Real>& rho) {
  if (q.dim() != rho.dim()) throw DimensionMismatch("born_probability: dimension mismatch");
  const Real p = (rho.matrix() * q.matrix()).trace().real();
  const Real slack = Real(tol::probability_clamp);
  if (p < -slack || p > Real(1) + slack || !std::isfinite(p)) {
    throw InvalidInput("born_probability: tr(rho Q) = " + std::to_string(p) + " outside [0, 1]");
  }
  return std::clamp(p, Real(0), Real(1));
}

template <typename Real>
OutcomeDistribution<Real> outcome_distribution(const Povm<Real>& m, const DensityMatrix<Real>& rho) {
  if (m.dim() != rho.dim()) throw DimensionMismatch("outcome_distribution: dimension mismatch");
  std::vector<Real> p;
  p.reserve(m.size());
  for (const auto& e : m.effects()) p.push_back(born_probability(e, rho));
  return OutcomeDistribution<Real>(m.labels(), std::move(p));
}

/// Projective measurement of sigma_axis (axis 1..3) on a qubit, labels "<a>+" / "<a>-".
template <typename Real = double>
Povm<Real> pauli_basis_povm(int axis) {
  static constexpr const char* names[] = {"", "x", "y", "z"};
  if (axis < 1 || axis > 3) throw InvalidInput("pauli_basis_povm: axis must be 1..3");
  const std::string n = names[axis];
  return Povm<Real>({Effect<Real>(qubit_axis_state<Real>(axis, +1).matrix()),
                     Effect<Real>(qubit_axis_state<Real>(axis, -1).matrix())},
                    {n + "+", n + "-"});
}

/// {|z+><z+|, |z-><z-|}.
template <typename Real = double>
Povm<Real> computational_basis_povm() {
  return pauli_basis_povm<Real>(3);
}

/// The single-outcome POVM {I}; label "I".
template <typename Real = double>
Povm<Real> trivial_povm(Eigen::Index dim) {
  return Povm<Real>({Effect<Real>::identity(dim)}, {"I"});
}

/// Index of the outcome selected by a uniform variate u in [0, 1).
template <typename Real>
std::size_t select_outcome(const std::vector<Real>& p, Real u) {
  Real acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  // u landed in the rounding gap above the cumulative sum; take the last
  // outcome that has nonzero weight.
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] > 0) return i;
  }
  return p.size() - 1;
}

template <typename Real>
std::string sample_outcome(const Povm<Real>& m, const DensityMatrix<Real>& rho, std::uint64_t seed) {
  const auto dist = outcome_distribution(m, rho);
  std::mt19937_64 rng(seed);
  const Real u = std::uniform_real_distribution<Real>(0, 1)(rng);
  return m.labels()[select_outcome(dist.probabilities(), u)];
}

/// n draws from one seeded stream.
template <typename Real>
std::vector<std::string> sample_outcomes(const Povm<Real>& m, const DensityMatrix<Real>& rho,
                                         std::uint64_t seed, std::size_t n) {
  const auto dist = outcome_distribution(m, rho);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> uni(0, 1);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(m.labels()[select_outcome(dist.probabilities(), uni(rng))]);
  return out;
}

}  // namespace qmlab
