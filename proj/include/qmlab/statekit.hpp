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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qmlab/errors.hpp"

namespace qmlab {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrixd = ComplexMatrix<double>;
using ComplexVectord = ComplexVector<double>;
using RealVectord = RealVector<double>;

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double trace = 1e-10;
inline constexpr double weights = 1e-10;
inline constexpr double bloch_radius = 1e-9;
}  // namespace tol

/// Largest entry of |a - b|. Both operands must have the same shape.
template <typename Derived, typename OtherDerived>
auto max_abs_diff(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<OtherDerived>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return typename Eigen::NumTraits<typename Derived::Scalar>::Real{0};
  return (a - b).cwiseAbs().maxCoeff();
}

/// max |M - M^dagger| entrywise.
template <typename Real>
Real hermiticity_defect(const ComplexMatrix<Real>& m) {
  return max_abs_diff(m, m.adjoint());
}

/// Ascending eigenvalues of the Hermitian part of m.
template <typename Real>
RealVector<Real> hermitian_eigenvalues(const ComplexMatrix<Real>& m) {
  const ComplexMatrix<Real> h = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Pauli matrix sigma_k with sigma_0 = I.
template <typename Real = double>
ComplexMatrix<Real> pauli(int k) {
  using C = std::complex<Real>;
  ComplexMatrix<Real> s(2, 2);
  switch (k) {
    case 0: s << C(1), C(0), C(0), C(1); break;
    case 1: s << C(0), C(1), C(1), C(0); break;
    case 2: s << C(0), C(0, -1), C(0, 1), C(0); break;
    case 3: s << C(1), C(0), C(0), C(-1); break;
    default: throw InvalidInput("pauli: index must be in 0..3");
  }
  return s;
}

enum class DensityViolation { none, not_square, non_finite, hermiticity, positivity, trace };

inline const char* to_string(DensityViolation v) {
  switch (v) {
    case DensityViolation::none: return "none";
    case DensityViolation::not_square: return "not-square";
    case DensityViolation::non_finite: return "non-finite";
    case DensityViolation::hermiticity: return "hermiticity";
    case DensityViolation::positivity: return "positivity";
    case DensityViolation::trace: return "trace";
  }
  return "unknown";
}

template <typename Real>
class DensityMatrix;

/// Outcome of validate_density. `measured` carries the offending quantity:
/// the hermiticity defect, the minimum eigenvalue or the trace.
template <typename Real>
struct DensityCheck {
  DensityViolation violation = DensityViolation::none;
  Real measured = 0;
  std::optional<DensityMatrix<Real>> state;

  bool ok() const noexcept { return violation == DensityViolation::none; }

  std::string describe() const {
    if (ok()) return "valid density matrix";
    std::string out = std::string(to_string(violation)) + " violation";
    switch (violation) {
      case DensityViolation::hermiticity: out += ", max |M-M^dag| = "; break;
      case DensityViolation::positivity: out += ", min eigenvalue = "; break;
      case DensityViolation::trace: out += ", trace = "; break;
      default: return out;
    }
    return out + std::to_string(measured);
  }
};

/// A d x d Hermitian, positive semidefinite, unit-trace operator.
///
/// The stored matrix is the Hermitian part of the input, so downstream
/// eigensolvers always see an exactly self-adjoint operand.
template <typename Real = double>
class DensityMatrix {
 public:
  using Scalar = Real;
  using Matrix = ComplexMatrix<Real>;

  /// Throws InvalidInput naming the violated invariant.
  explicit DensityMatrix(const Matrix& m) : DensityMatrix(checked(m)) {}

  static DensityCheck<Real> check(const Matrix& m) {
    DensityCheck<Real> report;
    if (m.rows() != m.cols() || m.rows() == 0) {
      report.violation = DensityViolation::not_square;
      return report;
    }
    if (!m.allFinite()) {
      report.violation = DensityViolation::non_finite;
      return report;
    }
    const Real herm = hermiticity_defect<Real>(m);
    if (herm > Real(tol::hermiticity)) {
      report.violation = DensityViolation::hermiticity;
      report.measured = herm;
      return report;
    }
    const Real min_eig = hermitian_eigenvalues<Real>(m).minCoeff();
    if (min_eig < -Real(tol::psd)) {
      report.violation = DensityViolation::positivity;
      report.measured = min_eig;
      return report;
    }
    const Real tr = m.trace().real();
    if (std::abs(tr - Real(1)) > Real(tol::trace)) {
      report.violation = DensityViolation::trace;
      report.measured = tr;
      return report;
    }
    report.state = DensityMatrix(Matrix((m + m.adjoint()) / Real(2)), Unchecked{});
    return report;
  }

  static DensityMatrix maximally_mixed(Eigen::Index dim) {
    if (dim < 1) throw InvalidInput("maximally_mixed: dimension must be positive");
    return DensityMatrix(Matrix(Matrix::Identity(dim, dim) / Real(dim)), Unchecked{});
  }

  /// |k><k| in the computational basis.
  static DensityMatrix basis_state(Eigen::Index dim, Eigen::Index k) {
    if (k < 0 || k >= dim) throw InvalidInput("basis_state: index out of range");
    Matrix m = Matrix::Zero(dim, dim);
    m(k, k) = 1;
    return DensityMatrix(m, Unchecked{});
  }

  /// |psi><psi| for a nonzero vector, normalized.
  static DensityMatrix pure(const ComplexVector<Real>& psi) {
    const Real n = psi.norm();
    if (!(n > 0) || !std::isfinite(n)) throw InvalidInput("pure: zero or non-finite vector");
    const ComplexVector<Real> u = psi / n;
    return DensityMatrix(Matrix(u * u.adjoint()), Unchecked{});
  }

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  struct Unchecked {};
  DensityMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

  static DensityMatrix checked(const Matrix& m) {
    auto report = check(m);
    if (!report.ok()) throw InvalidInput("invalid density matrix: " + report.describe());
    return std::move(*report.state);
  }

  Matrix m_;
};

using DensityMatrixd = DensityMatrix<double>;

template <typename Real>
DensityCheck<Real> validate_density(const ComplexMatrix<Real>& m) {
  return DensityMatrix<Real>::check(m);
}

template <typename Real = double>
struct BlochVector {
  Real x = 0;
  Real y = 0;
  Real z = 0;

  Real radius() const { return std::sqrt(x * x + y * y + z * z); }
  Eigen::Matrix<Real, 3, 1> vec() const { return {x, y, z}; }
};

using BlochVectord = BlochVector<double>;

/// (I + v . sigma) / 2.
template <typename Real>
DensityMatrix<Real> bloch_to_density(const BlochVector<Real>& v) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
    throw InvalidInput("bloch_to_density: non-finite component");
  }
  const Real r = v.radius();
  if (r > Real(1) + Real(tol::bloch_radius)) {
    throw InvalidInput("bloch_to_density: radius " + std::to_string(r) + " exceeds 1");
  }
  const ComplexMatrix<Real> m =
      (pauli<Real>(0) + v.x * pauli<Real>(1) + v.y * pauli<Real>(2) + v.z * pauli<Real>(3)) / Real(2);
  // Radius within tolerance of 1 can leave an eigenvalue of order -tol/2; check() accepts it.
  return DensityMatrix<Real>(m);
}

template <typename Real>
BlochVector<Real> density_to_bloch(const DensityMatrix<Real>& rho) {
  if (rho.dim() != 2) {
    throw UnsupportedDimension("density_to_bloch: requires a qubit, got dimension " +
                               std::to_string(rho.dim()));
  }
  const auto& m = rho.matrix();
  // tr(rho sigma_k) written out for the 2x2 case.
  return {Real(2) * m(0, 1).real(), -Real(2) * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

/// Pure qubit eigenstate of sigma_axis with eigenvalue sign (+1 or -1); axis in {1,2,3}.
template <typename Real = double>
DensityMatrix<Real> qubit_axis_state(int axis, int sign) {
  if (axis < 1 || axis > 3 || (sign != 1 && sign != -1)) {
    throw InvalidInput("qubit_axis_state: axis must be 1..3 and sign +-1");
  }
  BlochVector<Real> v;
  (axis == 1 ? v.x : axis == 2 ? v.y : v.z) = Real(sign);
  return bloch_to_density(v);
}

/// Weighted list {(p_i, rho_i)} with p_i >= 0 and sum p_i = 1.
template <typename Real = double>
class EnsembleDecomposition {
 public:
  struct Member {
    Real weight;
    DensityMatrix<Real> state;
  };

  explicit EnsembleDecomposition(std::vector<Member> members) : members_(std::move(members)) {
    if (members_.empty()) throw InvalidInput("ensemble: no members");
    Real total = 0;
    const auto d = members_.front().state.dim();
    for (const auto& m : members_) {
      if (!(m.weight >= 0) || !std::isfinite(m.weight)) throw InvalidInput("ensemble: negative or non-finite weight");
      if (m.state.dim() != d) throw DimensionMismatch("ensemble: members of different dimension");
      total += m.weight;
    }
    if (std::abs(total - Real(1)) > Real(tol::weights)) {
      throw InvalidInput("ensemble: weights sum to " + std::to_string(total));
    }
  }

  const std::vector<Member>& members() const noexcept { return members_; }
  Eigen::Index dim() const noexcept { return members_.front().state.dim(); }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<Member> members_;
};

using EnsembleDecompositiond = EnsembleDecomposition<double>;

template <typename Real>
DensityMatrix<Real> mix(const EnsembleDecomposition<Real>& e) {
  const auto d = e.dim();
  ComplexMatrix<Real> acc = ComplexMatrix<Real>::Zero(d, d);
  for (const auto& m : e.members()) acc += m.weight * m.state.matrix();
  return DensityMatrix<Real>(acc);
}

/// Half the trace norm of rho - sigma.
template <typename Real>
Real trace_distance(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("trace_distance: dimension mismatch");
  const ComplexMatrix<Real> diff = rho.matrix() - sigma.matrix();
  return hermitian_eigenvalues<Real>(diff).cwiseAbs().sum() / Real(2);
}

// Seeded sampling. Pure states are unitarily invariant (uniform on the Bloch
// sphere for qubits); mixed states blend a random pure state with I/d at a
// uniform weight.

template <typename Real = double, typename Rng>
DensityMatrix<Real> random_pure_state(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<Real> gauss;
  ComplexVector<Real> psi(dim);
  do {
    for (Eigen::Index i = 0; i < dim; ++i) psi(i) = {gauss(rng), gauss(rng)};
  } while (psi.norm() == Real(0));
  return DensityMatrix<Real>::pure(psi);
}

template <typename Real = double, typename Rng>
DensityMatrix<Real> random_mixed_state(Eigen::Index dim, Rng& rng) {
  const auto pure = random_pure_state<Real>(dim, rng);
  const Real w = std::uniform_real_distribution<Real>(0, 1)(rng);
  const ComplexMatrix<Real> m =
      w * pure.matrix() + (Real(1) - w) * DensityMatrix<Real>::maximally_mixed(dim).matrix();
  return DensityMatrix<Real>(m);
}

/// Flat-Dirichlet weights over `size` random mixed states.
template <typename Real = double, typename Rng>
EnsembleDecomposition<Real> random_ensemble(Eigen::Index dim, std::size_t size, Rng& rng) {
  if (size == 0) throw InvalidInput("random_ensemble: size must be positive");
  std::exponential_distribution<Real> expo(1);
  std::vector<Real> w(size);
  Real total = 0;
  for (auto& x : w) total += (x = expo(rng));
  std::vector<typename EnsembleDecomposition<Real>::Member> members;
  members.reserve(size);
  for (std::size_t i = 0; i < size; ++i) members.push_back({w[i] / total, random_mixed_state<Real>(dim, rng)});
  return EnsembleDecomposition<Real>(std::move(members));
}

}  // namespace qmlab
