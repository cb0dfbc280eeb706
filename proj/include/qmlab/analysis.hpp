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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmlab/sequential.hpp"

namespace qmlab {

/// Outcome probability function: any map from density matrices to [0, 1].
/// Evaluators must be pure. Calls outside [-1e-12, 1 + 1e-12] throw.
class Opf {
 public:
  using Evaluator = std::function<double(const DensityMatrixd&)>;

  Opf(Evaluator eval, std::string label, Eigen::Index dim = 2);

  double operator()(const DensityMatrixd& rho) const;
  const std::string& label() const noexcept { return label_; }
  Eigen::Index dim() const noexcept { return dim_; }

 private:
  Evaluator eval_;
  std::string label_;
  Eigen::Index dim_;
};

Opf born_opf(const Effectd& q, std::string label = "born");
/// rho -> P(first_label, second_label) of a two-stage experiment.
Opf joint_opf(const TwoStageExperiment& x, const std::string& first_label, const std::string& second_label);
/// rho -> second-stage marginal probability of `second_label`.
Opf second_stage_opf(const TwoStageExperiment& x, const std::string& second_label);
Opf purity_opf(Eigen::Index dim = 2);

/// rho -> p f(rho) + (1 - p) g(rho).
Opf mix_opfs(double p, const Opf& f, const Opf& g);

struct LinearityReport {
  bool passed = true;
  double worst_gap = 0;
  double tolerance = 0;
  /// Gap on {(1/2, I/d), (1/2, |0><0|)}, which is always tried first.
  double canonical_gap = 0;
  std::size_t ensembles_tested = 0;
  std::optional<EnsembleDecompositiond> witness;
};

/// |f(sum p_i rho_i) - sum p_i f(rho_i)|, the convex-linearity defect of f on e.
double convexity_gap(const Opf& f, const EnsembleDecompositiond& e);

/// The ensemble {(1/2, I/d), (1/2, |0><0|)}; for a qubit, I/2 and |z+><z+|.
EnsembleDecompositiond canonical_witness(Eigen::Index dim = 2);

/// Tests f on the canonical witness plus `trials` seeded random ensembles of
/// 2 to 4 members. A witness is reported whenever the worst gap exceeds tol.
LinearityReport convex_linearity_check(const Opf& f, std::size_t trials, std::uint64_t seed, double tol);

/// Affine fits are judged on this many held-out random mixed states.
inline constexpr std::size_t kHeldOutStates = 100;
inline constexpr std::uint64_t kHeldOutSeed = 0x9e3779b97f4a7c15ULL;

/// The fixed held-out states used by the fitting routines.
const std::vector<DensityMatrixd>& held_out_states();

struct EffectFit {
  ComplexMatrixd effect;
  double residual = 0;
  /// Whether `effect` satisfies 0 <= E <= I.
  bool valid_effect = false;
};

/// Solves tr(rho_k E) = f(rho_k) on {I/2, (I + sigma_k)/2}. The residual is
/// the largest disagreement with f over held_out_states().
EffectFit fit_effect_from_opf(const Opf& f);

struct HeraldedPovmFit {
  std::vector<std::string> first_labels;
  std::vector<std::string> second_labels;
  /// Row-major over (first, second).
  std::vector<ComplexMatrixd> effects;
  double fit_residual = 0;
  double completeness_defect = 0;

  const ComplexMatrixd& effect(const std::string& first_label, const std::string& second_label) const;
};

/// Attempts to find a single POVM {H(i, j)} reproducing the two-stage joint
/// statistics as tr(H(i, j) rho). A large residual means none exists.
HeraldedPovmFit fit_heralded_povm(const TwoStageExperiment& x);

/// Member-wise joint statistics: sum_k p_k joint_distribution(x, rho_k).
JointDistribution ensemble_joint_distribution(const TwoStageExperiment& x, const EnsembleDecompositiond& e);

/// Total-variation distance between the member-wise joint statistics of two
/// decompositions of the same state. Throws InvalidComparison when mix(a)
/// and mix(b) differ by more than 1e-9 in any entry.
double ensemble_discrimination_gap(const EnsembleDecompositiond& a, const EnsembleDecompositiond& b,
                                   const TwoStageExperiment& x);

/// Half the L1 distance between two tables of the same shape.
double total_variation(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q);

}  // namespace qmlab
