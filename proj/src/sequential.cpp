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

#include "qmlab/sequential.hpp"

#include <algorithm>

namespace qmlab {

namespace {

std::size_t find_label(const std::vector<std::string>& labels, const std::string& label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InvalidInput("unknown outcome label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

TwoStageExperiment::TwoStageExperiment(Povmd first, Povmd second, UpdateRule rule)
    : first_(std::move(first)), second_(std::move(second)), rule_(std::move(rule)) {
  if (first_.dim() != second_.dim()) throw DimensionMismatch("experiment: stages act on different dimensions");
  if (std::holds_alternative<LogisticBlochRule>(rule_) && first_.dim() != 2) {
    throw UnsupportedDimension("experiment: logistic rule needs qubit stages");
  }
  // Kraus families must cover every first-stage effect.
  if (const auto* lueders = std::get_if<LudersRule>(&rule_)) {
    for (const auto& f : first_.effects()) lueders->family_for(f);
  } else if (const auto* pd = std::get_if<ProbabilityDependentRule>(&rule_)) {
    for (const auto& f : first_.effects()) pd->base.family_for(f);
  }
}

JointDistribution::JointDistribution(std::vector<std::string> first_labels, std::vector<std::string> second_labels,
                                     Eigen::MatrixXd probabilities)
    : first_(std::move(first_labels)), second_(std::move(second_labels)), p_(std::move(probabilities)) {
  if (p_.rows() != static_cast<Eigen::Index>(first_.size()) ||
      p_.cols() != static_cast<Eigen::Index>(second_.size())) {
    throw InvalidInput("joint distribution: table shape does not match labels");
  }
  const double slack = tol::probability_clamp;
  if (p_.size() == 0 || p_.minCoeff() < -slack || p_.maxCoeff() > 1.0 + slack) {
    throw InvalidInput("joint distribution: entry outside [0, 1]");
  }
  if (std::abs(p_.sum() - 1.0) > tol::distribution_sum) {
    throw InvalidInput("joint distribution: total " + std::to_string(p_.sum()));
  }
}

double JointDistribution::probability(const std::string& first_label, const std::string& second_label) const {
  return p_(static_cast<Eigen::Index>(find_label(first_, first_label)),
            static_cast<Eigen::Index>(find_label(second_, second_label)));
}

JointDistribution joint_distribution(const TwoStageExperiment& x, const DensityMatrixd& rho) {
  if (rho.dim() != x.dim()) throw DimensionMismatch("joint_distribution: state dimension mismatch");
  const auto& first = x.first();
  const auto& second = x.second();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(first.size()),
                                            static_cast<Eigen::Index>(second.size()));
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (born_probability(first.effects()[i], rho) <= kZeroProbability) continue;
    const auto update = apply_update(x.rule(), first.effects()[i], rho);
    for (std::size_t j = 0; j < second.size(); ++j) {
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          born_probability(second.effects()[j], update.post_state) * update.probability;
    }
  }
  return JointDistribution(first.labels(), second.labels(), std::move(p));
}

OutcomeDistributiond first_stage_marginal(const TwoStageExperiment& x, const DensityMatrixd& rho) {
  return outcome_distribution(x.first(), rho);
}

OutcomeDistributiond second_stage_marginal(const TwoStageExperiment& x, const DensityMatrixd& rho) {
  const auto joint = joint_distribution(x, rho);
  const Eigen::VectorXd col = joint.table().colwise().sum().transpose();
  return OutcomeDistributiond(joint.second_labels(), std::vector<double>(col.data(), col.data() + col.size()));
}

OutcomeDistributiond conditional_distribution(const TwoStageExperiment& x, const DensityMatrixd& rho,
                                              const std::string& first_label) {
  const auto& f = x.first().effect(first_label);
  const double p_first = born_probability(f, rho);
  if (p_first <= kZeroProbability) {
    throw UndefinedPostState("conditional_distribution: outcome '" + first_label + "' has probability zero");
  }
  const auto joint = joint_distribution(x, rho);
  const auto row = static_cast<Eigen::Index>(x.first().index_of(first_label));
  std::vector<double> p(joint.second_labels().size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = joint.table()(row, static_cast<Eigen::Index>(j)) / p_first;
  return OutcomeDistributiond(joint.second_labels(), std::move(p));
}

}  // namespace qmlab
