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

#include "qmlab/update_rules.hpp"

#include <algorithm>
#include <cmath>

namespace qmlab {

namespace {

ComplexMatrixd kraus_sum(const LudersRule::KrausFamily& family) {
  const auto d = family.front().rows();
  ComplexMatrixd s = ComplexMatrixd::Zero(d, d);
  for (const auto& k : family) s += k.adjoint() * k;
  return s;
}

void require_qubit(const Effectd& f, const DensityMatrixd& rho, const char* who) {
  if (rho.dim() != 2 || f.dim() != 2) {
    throw UnsupportedDimension(std::string(who) + ": Bloch-ball rule needs a qubit, got dimension " +
                               std::to_string(rho.dim()));
  }
}

ComplexMatrixd lueders_unnormalized(const LudersRule& rule, const Effectd& f, const DensityMatrixd& rho) {
  if (const auto* family = rule.family_for(f)) {
    ComplexMatrixd out = ComplexMatrixd::Zero(rho.dim(), rho.dim());
    for (const auto& k : *family) out += k * rho.matrix() * k.adjoint();
    return out;
  }
  const ComplexMatrixd root = psd_sqrt(f.matrix());
  return root * rho.matrix() * root;
}

// Hermitian part, so accumulated rounding never trips the density check.
DensityMatrixd as_state(const ComplexMatrixd& m) { return DensityMatrixd(ComplexMatrixd((m + m.adjoint()) / 2.0)); }

}  // namespace

LudersRule::LudersRule(std::vector<KrausFamily> instrument) {
  if (instrument.empty()) throw InvalidInput("lueders: empty instrument");
  const auto d = instrument.front().empty() ? Eigen::Index{0} : instrument.front().front().rows();
  if (d == 0) throw InvalidInput("lueders: empty Kraus family");
  ComplexMatrixd total = ComplexMatrixd::Zero(d, d);
  for (const auto& family : instrument) {
    if (family.empty()) throw InvalidInput("lueders: empty Kraus family");
    for (const auto& k : family) {
      if (k.rows() != d || k.cols() != d) throw DimensionMismatch("lueders: Kraus operator of wrong shape");
      if (!k.allFinite()) throw InvalidInput("lueders: non-finite Kraus entry");
    }
    const ComplexMatrixd s = kraus_sum(family);
    if (hermitian_eigenvalues<double>(ComplexMatrixd(ComplexMatrixd::Identity(d, d) - s)).minCoeff() <
        -tol::effect_spectrum) {
      throw InvalidInput("lueders: Kraus family exceeds the identity");
    }
    total += s;
  }
  const double defect = max_abs_diff(total, ComplexMatrixd::Identity(d, d));
  if (defect > tol::completeness) {
    throw InvalidInput("lueders: instrument not trace preserving, defect " + std::to_string(defect));
  }
  kraus_ = std::move(instrument);
}

const LudersRule::KrausFamily* LudersRule::family_for(const Effectd& f) const {
  if (!kraus_) return nullptr;
  for (const auto& family : *kraus_) {
    const ComplexMatrixd s = kraus_sum(family);
    if (s.rows() == f.dim() && max_abs_diff(s, f.matrix()) <= tol::completeness) return &family;
  }
  throw InvalidInput("lueders: no Kraus family implements the measured effect");
}

LogisticBlochRule::LogisticBlochRule(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 4.0)) {
    throw InvalidInput("logistic rule: lambda " + std::to_string(lambda) + " outside [0, 4]");
  }
}

std::string describe(const UpdateRule& rule) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, LudersRule>) {
          return r.kraus() ? "lueders(kraus)" : "lueders";
        } else if constexpr (std::is_same_v<T, LogisticBlochRule>) {
          return "logistic(lambda=" + std::to_string(r.lambda()) + ")";
        } else {
          return "probability-dependent";
        }
      },
      rule);
}

ComplexMatrixd psd_sqrt(const ComplexMatrixd& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrixd> solver(ComplexMatrixd((m + m.adjoint()) / 2.0));
  const RealVectord roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.cast<std::complex<double>>().asDiagonal() * solver.eigenvectors().adjoint();
}

BlochVectord logistic_bloch_map(double lambda, const BlochVectord& v) {
  const double r = std::min(v.radius(), 1.0);
  if (r == 0.0) return {};
  const double scale = lambda * (1.0 - r);
  return {v.x * scale, v.y * scale, v.z * scale};
}

UpdateOutcome apply_update(const UpdateRule& rule, const Effectd& f, const DensityMatrixd& rho) {
  if (f.dim() != rho.dim()) throw DimensionMismatch("apply_update: effect and state dimensions differ");
  if (std::holds_alternative<LogisticBlochRule>(rule)) require_qubit(f, rho, "apply_update");

  const double p = born_probability(f, rho);
  if (p <= kZeroProbability) {
    throw UndefinedPostState("apply_update: outcome has probability " + std::to_string(p));
  }

  return std::visit(
      [&](const auto& r) -> UpdateOutcome {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, LudersRule>) {
          return {as_state(lueders_unnormalized(r, f, rho) / p), p};
        } else if constexpr (std::is_same_v<T, LogisticBlochRule>) {
          return {bloch_to_density(logistic_bloch_map(r.lambda(), density_to_bloch(rho))), p};
        } else {
          const ComplexMatrixd base = lueders_unnormalized(r.base, f, rho) / p;
          const auto d = rho.dim();
          const ComplexMatrixd noise = ComplexMatrixd::Identity(d, d) / static_cast<double>(d);
          return {as_state((1.0 - p) * base + p * noise), p};
        }
      },
      rule);
}

ComplexMatrixd unnormalized_map(const UpdateRule& rule, const Effectd& f, const DensityMatrixd& rho) {
  if (f.dim() != rho.dim()) throw DimensionMismatch("unnormalized_map: effect and state dimensions differ");
  if (std::holds_alternative<LogisticBlochRule>(rule)) require_qubit(f, rho, "unnormalized_map");
  const double p = born_probability(f, rho);
  if (p <= kZeroProbability) return ComplexMatrixd::Zero(rho.dim(), rho.dim());
  if (const auto* lueders = std::get_if<LudersRule>(&rule)) return lueders_unnormalized(*lueders, f, rho);
  return p * apply_update(rule, f, rho).post_state.matrix();
}

}  // namespace qmlab
