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

#include "qmlab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmlab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ScenarioError(path + ": " + msg); }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// Library errors raised while building a value are reported against the
// field that produced it.
template <typename F>
auto at_field(const std::string& path, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

ComplexMatrixd parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  ComplexMatrixd m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array()) fail(rp, "expected an array");
    if (r == 0) m.resize(rows, static_cast<Eigen::Index>(row.size()));
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) fail(rp, "ragged matrix row");
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      const std::string ep = rp + "[" + std::to_string(c) + "]";
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = {number(e[0], ep + "[0]"), number(e[1], ep + "[1]")};
      } else {
        fail(ep, "expected a number or a [re, im] pair");
      }
    }
  }
  return m;
}

DensityMatrixd parse_state(const json& j, const std::string& path);

EnsembleDecompositiond parse_ensemble(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("mixture")) {
    const auto& list = j["mixture"];
    const std::string lp = path + ".mixture";
    if (!list.is_array() || list.empty()) fail(lp, "expected a non-empty array");
    std::vector<EnsembleDecompositiond::Member> members;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string mp = lp + "[" + std::to_string(k) + "]";
      members.push_back({number(require(list[k], "weight", mp), mp + ".weight"),
                         parse_state(require(list[k], "state", mp), mp + ".state")});
    }
    return at_field(lp, [&] { return EnsembleDecompositiond(std::move(members)); });
  }
  return EnsembleDecompositiond({{1.0, parse_state(j, path)}});
}

DensityMatrixd parse_state(const json& j, const std::string& path) {
  if (j.is_string()) return at_field(path, [&] { return named_state(j.get<std::string>()); });
  if (!j.is_object()) fail(path, "expected a state name or object");
  if (j.contains("bloch")) {
    const auto& v = j["bloch"];
    const std::string bp = path + ".bloch";
    if (!v.is_array() || v.size() != 3) fail(bp, "expected [x, y, z]");
    const BlochVectord b{number(v[0], bp + "[0]"), number(v[1], bp + "[1]"), number(v[2], bp + "[2]")};
    return at_field(bp, [&] { return bloch_to_density(b); });
  }
  if (j.contains("matrix")) {
    const auto m = parse_matrix(j["matrix"], path + ".matrix");
    const auto report = validate_density(m);
    if (!report.ok()) fail(path + ".matrix", report.describe());
    return *report.state;
  }
  if (j.contains("mixture")) return at_field(path, [&] { return mix(parse_ensemble(j, path)); });
  fail(path, "state needs one of 'bloch', 'matrix' or 'mixture'");
}

LudersRule parse_lueders(const json& j, const std::string& path) {
  if (!j.contains("kraus")) return LudersRule{};
  const auto& fams = j["kraus"];
  const std::string kp = path + ".kraus";
  if (!fams.is_array()) fail(kp, "expected an array of Kraus families");
  std::vector<LudersRule::KrausFamily> instrument;
  for (std::size_t f = 0; f < fams.size(); ++f) {
    const std::string fp = kp + "[" + std::to_string(f) + "]";
    if (!fams[f].is_array()) fail(fp, "expected an array of matrices");
    LudersRule::KrausFamily family;
    for (std::size_t k = 0; k < fams[f].size(); ++k) family.push_back(parse_matrix(fams[f][k], fp + "[" + std::to_string(k) + "]"));
    instrument.push_back(std::move(family));
  }
  return at_field(kp, [&] { return LudersRule(std::move(instrument)); });
}

UpdateRule parse_rule(const json& j, const std::string& path) {
  const std::string type = text(require(j, "type", path), path + ".type");
  if (type == "lueders") return parse_lueders(j, path);
  if (type == "logistic") {
    const double lambda = number(require(j, "lambda", path), path + ".lambda");
    return at_field(path + ".lambda", [&] { return LogisticBlochRule(lambda); });
  }
  if (type == "probability_dependent") return ProbabilityDependentRule{parse_lueders(j, path)};
  fail(path + ".type", "unknown rule '" + type + "' (lueders, logistic, probability_dependent)");
}

Povmd parse_povm(const json& j, const std::string& path) {
  if (j.is_string()) return at_field(path, [&] { return named_povm(j.get<std::string>()); });
  const auto& list = require(j, "effects", path);
  const std::string lp = path + ".effects";
  if (!list.is_array() || list.empty()) fail(lp, "expected a non-empty array");
  std::vector<Effectd> effects;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string ep = lp + "[" + std::to_string(k) + "]";
    labels.push_back(text(require(list[k], "label", ep), ep + ".label"));
    const auto m = parse_matrix(require(list[k], "matrix", ep), ep + ".matrix");
    effects.push_back(at_field(ep + ".matrix", [&] { return Effectd(m); }));
  }
  return at_field(path, [&] { return Povmd(std::move(effects), std::move(labels)); });
}

Channel parse_channel(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "identity") return Channel::identity(2);
    if (name == "depolarizing") return Channel::fully_depolarizing();
    fail(path, "unknown channel '" + name + "' (identity, depolarizing)");
  }
  if (j.is_object() && j.contains("unitary")) {
    const auto u = parse_matrix(j["unitary"], path + ".unitary");
    return at_field(path + ".unitary", [&] { return Channel::unitary(u); });
  }
  if (j.is_object() && j.contains("kraus")) {
    const auto& list = j["kraus"];
    if (!list.is_array()) fail(path + ".kraus", "expected an array of matrices");
    std::vector<ComplexMatrixd> ks;
    for (std::size_t k = 0; k < list.size(); ++k) ks.push_back(parse_matrix(list[k], path + ".kraus[" + std::to_string(k) + "]"));
    return at_field(path + ".kraus", [&] { return Channel(std::move(ks)); });
  }
  fail(path, "channel needs a name, 'unitary' or 'kraus'");
}

Analysis parse_analysis(const json& j, const std::string& path) {
  const auto name = text(j, path);
  for (const auto a : {Analysis::joint, Analysis::marginal, Analysis::linearity, Analysis::effect_fit,
                       Analysis::heralded_fit, Analysis::discrimination, Analysis::pdm}) {
    if (name == to_string(a)) return a;
  }
  fail(path, "unknown analysis '" + name + "'");
}

bool needs_stages(Analysis a) { return a != Analysis::pdm; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Pauli coefficients c_n = tr(E sigma_n) / 2 of a qubit operator.
std::vector<Cell> pauli_coefficients(const ComplexMatrixd& e) {
  std::vector<Cell> out;
  for (int n = 0; n < 4; ++n) out.emplace_back((e * pauli(n)).trace().real() / 2.0);
  return out;
}

}  // namespace

const char* to_string(Analysis a) {
  switch (a) {
    case Analysis::joint: return "joint";
    case Analysis::marginal: return "marginal";
    case Analysis::linearity: return "linearity";
    case Analysis::effect_fit: return "effect_fit";
    case Analysis::heralded_fit: return "heralded_fit";
    case Analysis::discrimination: return "discrimination";
    case Analysis::pdm: return "pdm";
  }
  return "unknown";
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double v = from + static_cast<double>(k) * step;
    if (v >= to - 1e-9 * step) break;
    out.push_back(v);
  }
  out.push_back(to);
  return out;
}

TwoStageExperiment Scenario::experiment() const {
  if (stages.size() != 2) throw ScenarioError("stages: exactly two stages are required");
  return TwoStageExperiment(stages[0], stages[1], rule);
}

DensityMatrixd named_state(const std::string& name) {
  if (name == "I/2" || name == "mixed") return DensityMatrixd::maximally_mixed(2);
  if (name.size() == 2 && (name[1] == '+' || name[1] == '-')) {
    const int sign = name[1] == '+' ? 1 : -1;
    switch (name[0]) {
      case 'x': return qubit_axis_state(1, sign);
      case 'y': return qubit_axis_state(2, sign);
      case 'z': return qubit_axis_state(3, sign);
      default: break;
    }
  }
  throw InvalidInput("unknown state '" + name + "' (z+, z-, x+, x-, y+, y-, I/2)");
}

Povmd named_povm(const std::string& name) {
  if (name == "computational" || name == "z") return computational_basis_povm();
  if (name == "x") return pauli_basis_povm(1);
  if (name == "y") return pauli_basis_povm(2);
  if (name == "trivial") return trivial_povm(2);
  throw InvalidInput("unknown POVM '" + name + "' (computational, x, y, trivial)");
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("$", "scenario must be an object");
  const std::string name = text(require(doc, "name", "$"), "name");
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) fail("name", "must be a non-empty file-name-safe string");

  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    seed = doc["seed"].get<std::uint64_t>();
  }
  double tolerance = 1e-10;
  if (doc.contains("tolerance")) {
    tolerance = number(doc["tolerance"], "tolerance");
    if (!(tolerance >= 0)) fail("tolerance", "must be non-negative");
  }
  std::size_t trials = 200;
  if (doc.contains("trials")) {
    if (!doc["trials"].is_number_unsigned() || doc["trials"].get<std::size_t>() < 1) fail("trials", "expected a positive integer");
    trials = doc["trials"].get<std::size_t>();
  }

  auto initial = parse_ensemble(require(doc, "initial_state", "$"), "initial_state");
  UpdateRule rule = doc.contains("rule") ? parse_rule(doc["rule"], "rule") : UpdateRule{LudersRule{}};

  std::vector<Povmd> stages;
  if (doc.contains("stages")) {
    const auto& list = doc["stages"];
    if (!list.is_array() || list.size() != 2) fail("stages", "expected exactly two POVMs");
    for (std::size_t k = 0; k < 2; ++k) stages.push_back(parse_povm(list[k], "stages[" + std::to_string(k) + "]"));
  }

  std::vector<Analysis> analyses;
  if (doc.contains("analyses")) {
    const auto& list = doc["analyses"];
    if (!list.is_array()) fail("analyses", "expected an array");
    for (std::size_t k = 0; k < list.size(); ++k) analyses.push_back(parse_analysis(list[k], "analyses[" + std::to_string(k) + "]"));
  }

  std::optional<SweepSpec> sweep;
  if (doc.contains("sweep")) {
    const auto& sj = doc["sweep"];
    SweepSpec sp{text(require(sj, "parameter", "sweep"), "sweep.parameter"),
                 number(require(sj, "from", "sweep"), "sweep.from"), number(require(sj, "to", "sweep"), "sweep.to"),
                 number(require(sj, "step", "sweep"), "sweep.step")};
    if (!(sp.step > 0)) fail("sweep.step", "must be positive");
    if (!(sp.to >= sp.from)) fail("sweep", "empty range");
    if (sp.parameter == "w") {
      if (initial.size() != 2) fail("sweep.parameter", "sweeping w needs a two-member initial_state mixture");
      if (sp.from < 0 || sp.to > 1) fail("sweep", "w must stay within [0, 1]");
    } else if (sp.parameter == "lambda") {
      if (!std::holds_alternative<LogisticBlochRule>(rule)) fail("sweep.parameter", "sweeping lambda needs the logistic rule");
      if (sp.from < 0 || sp.to > 4) fail("sweep", "lambda must stay within [0, 4]");
    } else {
      fail("sweep.parameter", "unknown parameter '" + sp.parameter + "' (w, lambda)");
    }
    if (stages.size() != 2) fail("stages", "a sweep needs two stages");
    sweep = sp;
  }

  Channel channel = doc.contains("channel") ? parse_channel(doc["channel"], "channel") : Channel::identity(2);

  std::optional<std::pair<EnsembleDecompositiond, EnsembleDecompositiond>> ensembles;
  if (doc.contains("ensembles")) {
    const auto& ej = doc["ensembles"];
    ensembles.emplace(parse_ensemble(require(ej, "a", "ensembles"), "ensembles.a"),
                      parse_ensemble(require(ej, "b", "ensembles"), "ensembles.b"));
  }

  for (std::size_t k = 0; k < analyses.size(); ++k) {
    if (needs_stages(analyses[k]) && stages.size() != 2) {
      fail("analyses[" + std::to_string(k) + "]", std::string("'") + to_string(analyses[k]) + "' needs two stages");
    }
  }

  Scenario s{.name = name,
             .seed = seed,
             .tolerance = tolerance,
             .trials = trials,
             .initial_state = std::move(initial),
             .rule = std::move(rule),
             .stages = std::move(stages),
             .analyses = std::move(analyses),
             .sweep = sweep,
             .channel = std::move(channel),
             .ensembles = std::move(ensembles)};
  if (s.stages.size() == 2) {
    if (s.stages[0].dim() != s.initial_state.dim()) fail("stages", "POVM dimension does not match initial_state");
    at_field("stages", [&] { return s.experiment(); });
  }
  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("parse error: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

RunOutput run_scenario(const Scenario& s) {
  RunOutput out;
  std::ostringstream summary;
  summary << "scenario " << s.name << " (rule " << describe(s.rule) << ", seed " << s.seed << ")\n";
  const DensityMatrixd rho = s.state();

  for (const auto a : s.analyses) {
    const std::string tag = std::string("[") + to_string(a) + "] ";
    switch (a) {
      case Analysis::joint: {
        const auto joint = joint_distribution(s.experiment(), rho);
        ResultTable t({"first", "second", "probability"});
        summary << tag;
        for (std::size_t i = 0; i < joint.first_labels().size(); ++i) {
          for (std::size_t j = 0; j < joint.second_labels().size(); ++j) {
            const double p = joint.table()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            t.add_row({joint.first_labels()[i], joint.second_labels()[j], p});
            summary << "P(" << joint.first_labels()[i] << "," << joint.second_labels()[j] << ")=" << fmt(p) << " ";
          }
        }
        summary << "\n";
        out.tables.push_back({"joint", std::move(t)});
        break;
      }
      case Analysis::marginal: {
        const auto x = s.experiment();
        ResultTable t({"stage", "label", "probability"});
        const OutcomeDistributiond dists[] = {first_stage_marginal(x, rho), second_stage_marginal(x, rho)};
        for (int stage = 0; stage < 2; ++stage) {
          summary << tag << "stage " << stage + 1 << ":";
          for (std::size_t k = 0; k < dists[stage].size(); ++k) {
            t.add_row({static_cast<double>(stage + 1), dists[stage].labels()[k], dists[stage].probabilities()[k]});
            summary << " " << dists[stage].labels()[k] << "=" << fmt(dists[stage].probabilities()[k]);
          }
          summary << "\n";
        }
        out.tables.push_back({"marginal", std::move(t)});
        break;
      }
      case Analysis::linearity: {
        const auto x = s.experiment();
        ResultTable t({"opf", "result", "worst_gap", "canonical_gap", "tolerance", "ensembles_tested"});
        for (const auto& label : x.second().labels()) {
          const auto f = second_stage_opf(x, label);
          const auto r = convex_linearity_check(f, s.trials, s.seed, s.tolerance);
          t.add_row({f.label(), r.passed ? "passed" : "failed", r.worst_gap, r.canonical_gap, r.tolerance,
                     static_cast<double>(r.ensembles_tested)});
          summary << tag << f.label() << ": " << (r.passed ? "passed" : "failed") << ", worst gap "
                  << fmt(r.worst_gap) << ", canonical gap " << fmt(r.canonical_gap) << "\n";
        }
        out.tables.push_back({"linearity", std::move(t)});
        break;
      }
      case Analysis::effect_fit: {
        const auto x = s.experiment();
        ResultTable t({"opf", "residual", "c0", "cx", "cy", "cz", "valid_effect"});
        for (const auto& label : x.second().labels()) {
          const auto f = second_stage_opf(x, label);
          const auto fit = fit_effect_from_opf(f);
          std::vector<Cell> row{f.label(), fit.residual};
          for (auto& c : pauli_coefficients(fit.effect)) row.push_back(std::move(c));
          row.emplace_back(fit.valid_effect ? "yes" : "no");
          t.add_row(std::move(row));
          summary << tag << f.label() << ": residual " << fmt(fit.residual)
                  << (fit.valid_effect ? "" : " (fitted operator is not an effect)") << "\n";
        }
        out.tables.push_back({"effect_fit", std::move(t)});
        break;
      }
      case Analysis::heralded_fit: {
        const auto fit = fit_heralded_povm(s.experiment());
        ResultTable t({"first", "second", "c0", "cx", "cy", "cz", "fit_residual", "completeness_defect"});
        for (const auto& fl : fit.first_labels) {
          for (const auto& sl : fit.second_labels) {
            std::vector<Cell> row{fl, sl};
            for (auto& c : pauli_coefficients(fit.effect(fl, sl))) row.push_back(std::move(c));
            row.emplace_back(fit.fit_residual);
            row.emplace_back(fit.completeness_defect);
            t.add_row(std::move(row));
          }
        }
        summary << tag << "residual " << fmt(fit.fit_residual) << ", completeness defect "
                << fmt(fit.completeness_defect) << "\n";
        out.tables.push_back({"heralded_fit", std::move(t)});
        break;
      }
      case Analysis::discrimination: {
        const auto pair = s.ensembles.value_or(std::make_pair(EnsembleDecompositiond({{1.0, rho}}), s.initial_state));
        const double gap = ensemble_discrimination_gap(pair.first, pair.second, s.experiment());
        ResultTable t({"tv_gap"});
        t.add_row({gap});
        summary << tag << "total-variation gap " << fmt(gap) << "\n";
        out.tables.push_back({"discrimination", std::move(t)});
        break;
      }
      case Analysis::pdm: {
        const auto p = build_pdm(rho, s.channel);
        ResultTable t({"eigenvalue_0", "eigenvalue_1", "eigenvalue_2", "eigenvalue_3", "min_eigenvalue", "negativity",
                       "trace"});
        std::vector<Cell> row;
        for (Eigen::Index k = 0; k < 4; ++k) row.emplace_back(p.eigenvalues()(k));
        row.emplace_back(p.min_eigenvalue());
        row.emplace_back(negativity(p));
        row.emplace_back(p.matrix().trace().real());
        t.add_row(std::move(row));
        summary << tag << "min eigenvalue " << fmt(p.min_eigenvalue()) << ", negativity " << fmt(negativity(p)) << "\n";
        out.tables.push_back({"pdm", std::move(t)});
        break;
      }
    }
  }
  out.summary = summary.str();
  return out;
}

std::vector<double> linear_fit_residuals(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.empty()) throw InvalidInput("linear fit: need equally many (t, y) points");
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    a(k, 0) = 1.0;
    a(k, 1) = t[static_cast<std::size_t>(k)];
    b(k) = y[static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXd coef = a.completeOrthogonalDecomposition().solve(b);
  const Eigen::VectorXd r = (b - a * coef).cwiseAbs();
  return {r.data(), r.data() + r.size()};
}

RunOutput run_sweep(const Scenario& s) {
  if (!s.sweep) throw ScenarioError("sweep: scenario has no sweep specification");
  const auto& sp = *s.sweep;
  const auto values = sp.values();

  std::vector<std::string> columns{sp.parameter};
  for (const auto& l : s.stages[0].labels()) columns.push_back("P1(" + l + ")");
  for (const auto& l : s.stages[1].labels()) columns.push_back("P2(" + l + ")");
  for (const auto& l : s.stages[1].labels()) columns.push_back("P2(" + l + ")_linfit_residual");

  const auto n1 = s.stages[0].size();
  const auto n2 = s.stages[1].size();
  std::vector<std::vector<double>> first(n1), second(n2);
  for (const double v : values) {
    DensityMatrixd rho = s.state();
    UpdateRule rule = s.rule;
    if (sp.parameter == "w") {
      const auto& m = s.initial_state.members();
      rho = mix(EnsembleDecompositiond({{v, m[0].state}, {1.0 - v, m[1].state}}));
    } else {
      rule = LogisticBlochRule(v);
    }
    const TwoStageExperiment x(s.stages[0], s.stages[1], rule);
    const auto p1 = first_stage_marginal(x, rho);
    const auto p2 = second_stage_marginal(x, rho);
    for (std::size_t k = 0; k < n1; ++k) first[k].push_back(p1.probabilities()[k]);
    for (std::size_t k = 0; k < n2; ++k) second[k].push_back(p2.probabilities()[k]);
  }

  std::vector<std::vector<double>> residuals;
  for (const auto& col : second) residuals.push_back(linear_fit_residuals(values, col));

  ResultTable t(columns);
  for (std::size_t r = 0; r < values.size(); ++r) {
    std::vector<Cell> row{values[r]};
    for (const auto& c : first) row.emplace_back(c[r]);
    for (const auto& c : second) row.emplace_back(c[r]);
    for (const auto& c : residuals) row.emplace_back(c[r]);
    t.add_row(std::move(row));
  }

  std::ostringstream summary;
  summary << "sweep " << s.name << " over " << sp.parameter << " (" << values.size() << " points, rule "
          << describe(s.rule) << ")\n";
  for (std::size_t k = 0; k < n2; ++k) {
    double worst = 0;
    for (const double r : residuals[k]) worst = std::max(worst, r);
    summary << "[sweep] P2(" << s.stages[1].labels()[k] << ") max linear-fit residual " << fmt(worst) << "\n";
  }

  RunOutput out;
  out.tables.push_back({"sweep", std::move(t)});
  out.summary = summary.str();
  return out;
}

std::vector<std::filesystem::path> write_tables(const RunOutput& out, const std::string& scenario_name,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> paths;
  for (const auto& nt : out.tables) {
    paths.push_back(dir / (scenario_name + "." + nt.name + ".csv"));
    emit_csv(nt.table, paths.back());
  }
  return paths;
}

}  // namespace qmlab
