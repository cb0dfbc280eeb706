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

#include "qmlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qmlab {

namespace {

// Fitting basis {I/2, (I + sigma_x)/2, (I + sigma_y)/2, (I + sigma_z)/2}.
const std::vector<DensityMatrixd>& fitting_basis() {
  static const std::vector<DensityMatrixd> basis = {
      DensityMatrixd::maximally_mixed(2),
      qubit_axis_state(1, +1),
      qubit_axis_state(2, +1),
      qubit_axis_state(3, +1),
  };
  return basis;
}

// Solves for the Pauli coefficients c of E = sum_n c_n sigma_n from the four
// values tr(rho_m E) = values_m on the fitting basis.
ComplexMatrixd solve_effect(const Eigen::Vector4d& values) {
  const auto& basis = fitting_basis();
  Eigen::Matrix4d a;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) a(m, n) = (basis[m].matrix() * pauli(n)).trace().real();
  }
  const Eigen::Vector4d c = a.fullPivLu().solve(values);
  ComplexMatrixd e = ComplexMatrixd::Zero(2, 2);
  for (int n = 0; n < 4; ++n) e += c(n) * pauli(n);
  return e;
}

bool is_valid_effect(const ComplexMatrixd& e) {
  if (hermiticity_defect<double>(e) > tol::hermiticity) return false;
  const auto ev = hermitian_eigenvalues<double>(e);
  return ev.minCoeff() >= -tol::effect_spectrum && ev.maxCoeff() <= 1.0 + tol::effect_spectrum;
}

double expectation(const ComplexMatrixd& e, const DensityMatrixd& rho) { return (rho.matrix() * e).trace().real(); }

void require_qubit(Eigen::Index dim, const char* who) {
  if (dim != 2) throw UnsupportedDimension(std::string(who) + ": qubit domain required");
}

}  // namespace

Opf::Opf(Evaluator eval, std::string label, Eigen::Index dim)
    : eval_(std::move(eval)), label_(std::move(label)), dim_(dim) {
  if (!eval_) throw InvalidInput("opf: empty evaluator");
  if (dim_ < 1) throw InvalidInput("opf: dimension must be positive");
}

double Opf::operator()(const DensityMatrixd& rho) const {
  if (rho.dim() != dim_) throw DimensionMismatch("opf '" + label_ + "': state dimension mismatch");
  const double v = eval_(rho);
  if (!(v >= -tol::probability_clamp && v <= 1.0 + tol::probability_clamp)) {
    throw InvalidInput("opf '" + label_ + "' returned " + std::to_string(v) + ", outside [0, 1]");
  }
  return v;
}

Opf born_opf(const Effectd& q, std::string label) {
  return Opf([q](const DensityMatrixd& rho) { return born_probability(q, rho); }, std::move(label), q.dim());
}

Opf joint_opf(const TwoStageExperiment& x, const std::string& first_label, const std::string& second_label) {
  x.first().index_of(first_label);
  x.second().index_of(second_label);
  return Opf([x, first_label, second_label](
                 const DensityMatrixd& rho) { return joint_distribution(x, rho).probability(first_label, second_label); },
             "P(" + first_label + "," + second_label + ")", x.dim());
}

Opf second_stage_opf(const TwoStageExperiment& x, const std::string& second_label) {
  x.second().index_of(second_label);
  return Opf([x, second_label](const DensityMatrixd& rho) { return second_stage_marginal(x, rho).probability(second_label); },
             "P2(" + second_label + ")", x.dim());
}

Opf purity_opf(Eigen::Index dim) {
  return Opf([](const DensityMatrixd& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }, "purity", dim);
}

Opf mix_opfs(double p, const Opf& f, const Opf& g) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("mix_opfs: weight " + std::to_string(p) + " outside [0, 1]");
  if (f.dim() != g.dim()) throw DimensionMismatch("mix_opfs: OPFs act on different dimensions");
  return Opf([p, f, g](const DensityMatrixd& rho) { return p * f(rho) + (1.0 - p) * g(rho); },
             "mix(" + f.label() + "," + g.label() + ")", f.dim());
}

double convexity_gap(const Opf& f, const EnsembleDecompositiond& e) {
  double avg = 0;
  for (const auto& m : e.members()) avg += m.weight * f(m.state);
  return std::abs(f(mix(e)) - avg);
}

EnsembleDecompositiond canonical_witness(Eigen::Index dim) {
  return EnsembleDecompositiond(
      {{0.5, DensityMatrixd::maximally_mixed(dim)}, {0.5, DensityMatrixd::basis_state(dim, 0)}});
}

LinearityReport convex_linearity_check(const Opf& f, std::size_t trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw InvalidInput("convex_linearity_check: at least one trial required");
  LinearityReport report;
  report.tolerance = tol;

  auto consider = [&](EnsembleDecompositiond e) {
    const double gap = convexity_gap(f, e);
    ++report.ensembles_tested;
    if (gap > report.worst_gap || !report.witness) {
      report.worst_gap = std::max(report.worst_gap, gap);
      report.witness = std::move(e);
    }
    return gap;
  };

  report.canonical_gap = consider(canonical_witness(f.dim()));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(2, 4);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = size_dist(rng);
    consider(random_ensemble<double>(f.dim(), n, rng));
  }

  report.passed = report.worst_gap <= tol;
  if (report.passed) report.witness.reset();
  return report;
}

const std::vector<DensityMatrixd>& held_out_states() {
  static const std::vector<DensityMatrixd> states = [] {
    std::mt19937_64 rng(kHeldOutSeed);
    std::vector<DensityMatrixd> out;
    out.reserve(kHeldOutStates);
    for (std::size_t k = 0; k < kHeldOutStates; ++k) out.push_back(random_mixed_state<double>(2, rng));
    return out;
  }();
  return states;
}

EffectFit fit_effect_from_opf(const Opf& f) {
  require_qubit(f.dim(), "fit_effect_from_opf");
  Eigen::Vector4d values;
  for (int m = 0; m < 4; ++m) values(m) = f(fitting_basis()[m]);

  EffectFit fit;
  fit.effect = solve_effect(values);
  for (const auto& rho : held_out_states()) {
    fit.residual = std::max(fit.residual, std::abs(f(rho) - expectation(fit.effect, rho)));
  }
  fit.valid_effect = is_valid_effect(fit.effect);
  return fit;
}

const ComplexMatrixd& HeraldedPovmFit::effect(const std::string& first_label, const std::string& second_label) const {
  const auto i = std::find(first_labels.begin(), first_labels.end(), first_label);
  const auto j = std::find(second_labels.begin(), second_labels.end(), second_label);
  if (i == first_labels.end() || j == second_labels.end()) {
    throw InvalidInput("heralded fit: unknown label pair (" + first_label + ", " + second_label + ")");
  }
  return effects[static_cast<std::size_t>(i - first_labels.begin()) * second_labels.size() +
                 static_cast<std::size_t>(j - second_labels.begin())];
}

HeraldedPovmFit fit_heralded_povm(const TwoStageExperiment& x) {
  require_qubit(x.dim(), "fit_heralded_povm");
  const auto n1 = x.first().size();
  const auto n2 = x.second().size();

  std::vector<Eigen::MatrixXd> basis_tables;
  for (const auto& rho : fitting_basis()) basis_tables.push_back(joint_distribution(x, rho).table());

  HeraldedPovmFit fit;
  fit.first_labels = x.first().labels();
  fit.second_labels = x.second().labels();
  ComplexMatrixd total = ComplexMatrixd::Zero(2, 2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      Eigen::Vector4d values;
      for (int m = 0; m < 4; ++m) values(m) = basis_tables[m](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      fit.effects.push_back(solve_effect(values));
      total += fit.effects.back();
    }
  }
  fit.completeness_defect = max_abs_diff(total, ComplexMatrixd::Identity(2, 2));

  for (const auto& rho : held_out_states()) {
    const Eigen::MatrixXd p = joint_distribution(x, rho).table();
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        const double predicted = expectation(fit.effects[i * n2 + j], rho);
        fit.fit_residual = std::max(fit.fit_residual,
                                    std::abs(predicted - p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
      }
    }
  }
  return fit;
}

JointDistribution ensemble_joint_distribution(const TwoStageExperiment& x, const EnsembleDecompositiond& e) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(x.first().size()),
                                              static_cast<Eigen::Index>(x.second().size()));
  for (const auto& m : e.members()) acc += m.weight * joint_distribution(x, m.state).table();
  return JointDistribution(x.first().labels(), x.second().labels(), std::move(acc));
}

double total_variation(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) throw DimensionMismatch("total_variation: shape mismatch");
  return (p - q).cwiseAbs().sum() / 2.0;
}

double ensemble_discrimination_gap(const EnsembleDecompositiond& a, const EnsembleDecompositiond& b,
                                   const TwoStageExperiment& x) {
  if (a.dim() != x.dim() || b.dim() != x.dim()) throw DimensionMismatch("ensemble_discrimination_gap: dimension mismatch");
  const double mismatch = max_abs_diff(mix(a).matrix(), mix(b).matrix());
  if (mismatch > 1e-9) {
    throw InvalidComparison("ensemble_discrimination_gap: ensembles average to different states (max entry gap " +
                            std::to_string(mismatch) + ")");
  }
  return total_variation(ensemble_joint_distribution(x, a).table(), ensemble_joint_distribution(x, b).table());
}

}  // namespace qmlab
