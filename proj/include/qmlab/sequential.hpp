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

#include <string>
#include <vector>

#include "qmlab/update_rules.hpp"

namespace qmlab {

/// Measure `first`, update the state with `rule`, then measure `second`.
class TwoStageExperiment {
 public:
  TwoStageExperiment(Povmd first, Povmd second, UpdateRule rule);

  const Povmd& first() const noexcept { return first_; }
  const Povmd& second() const noexcept { return second_; }
  const UpdateRule& rule() const noexcept { return rule_; }
  Eigen::Index dim() const noexcept { return first_.dim(); }

 private:
  Povmd first_;
  Povmd second_;
  UpdateRule rule_;
};

/// P(i, j): row i is the first-stage outcome, column j the second.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::string> first_labels, std::vector<std::string> second_labels,
                    Eigen::MatrixXd probabilities);

  const std::vector<std::string>& first_labels() const noexcept { return first_; }
  const std::vector<std::string>& second_labels() const noexcept { return second_; }
  const Eigen::MatrixXd& table() const noexcept { return p_; }

  double probability(const std::string& first_label, const std::string& second_label) const;

 private:
  std::vector<std::string> first_;
  std::vector<std::string> second_;
  Eigen::MatrixXd p_;
};

/// P(i, j) = tr[G_j sigma(F_i, rho)] tr[F_i rho]; rows of impossible first
/// outcomes are zero.
JointDistribution joint_distribution(const TwoStageExperiment& x, const DensityMatrixd& rho);

OutcomeDistributiond first_stage_marginal(const TwoStageExperiment& x, const DensityMatrixd& rho);
OutcomeDistributiond second_stage_marginal(const TwoStageExperiment& x, const DensityMatrixd& rho);

/// P(j | first_label). Throws UndefinedPostState if the conditioning outcome
/// has probability zero.
OutcomeDistributiond conditional_distribution(const TwoStageExperiment& x, const DensityMatrixd& rho,
                                              const std::string& first_label);

}  // namespace qmlab
