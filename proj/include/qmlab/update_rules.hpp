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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmlab/measurement.hpp"

namespace qmlab {

/// Outcomes whose probability falls at or below this are treated as never
/// occurring: they have no normalized post-state.
inline constexpr double kZeroProbability = 1e-12;

/// Standard rule rho -> sqrt(F) rho sqrt(F) / tr(F rho), or the Kraus form
/// sum_k K rho K^dag / tr(F rho) when an instrument is supplied. Each Kraus
/// family is matched to the measured effect through sum_k K^dag K = F.
class LudersRule {
 public:
  using KrausFamily = std::vector<ComplexMatrixd>;

  LudersRule() = default;
  explicit LudersRule(std::vector<KrausFamily> instrument);

  const std::optional<std::vector<KrausFamily>>& kraus() const noexcept { return kraus_; }

  /// The family implementing effect f, or nullptr without an instrument.
  /// Throws InvalidInput when an instrument is set but no family matches.
  const KrausFamily* family_for(const Effectd& f) const;

 private:
  std::optional<std::vector<KrausFamily>> kraus_;
};

/// Outcome-independent nonlinear update on the Bloch ball: a Bloch vector of
/// radius r is rescaled to radius lambda r (1 - r), keeping its direction.
class LogisticBlochRule {
 public:
  explicit LogisticBlochRule(double lambda);
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// The base rule followed by depolarization whose strength is the outcome's
/// own probability p: (1 - p) * base(rho) + p * I/d.
struct ProbabilityDependentRule {
  LudersRule base;
};

using UpdateRule = std::variant<LudersRule, LogisticBlochRule, ProbabilityDependentRule>;

std::string describe(const UpdateRule& rule);

struct UpdateOutcome {
  DensityMatrixd post_state;
  double probability;
};

/// Post-measurement state and outcome probability. Throws UndefinedPostState
/// for a zero-probability outcome and UnsupportedDimension when a Bloch-based
/// rule meets a non-qubit state.
UpdateOutcome apply_update(const UpdateRule& rule, const Effectd& f, const DensityMatrixd& rho);

/// Post-state scaled by its probability; the zero matrix for outcomes that
/// cannot occur. Its trace is the Born probability of f.
ComplexMatrixd unnormalized_map(const UpdateRule& rule, const Effectd& f, const DensityMatrixd& rho);

/// Positive square root of a positive semidefinite Hermitian operator.
ComplexMatrixd psd_sqrt(const ComplexMatrixd& m);

/// Bloch vector v of radius r mapped to v * lambda (1 - r).
BlochVectord logistic_bloch_map(double lambda, const BlochVectord& v);

}  // namespace qmlab
