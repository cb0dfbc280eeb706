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
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmlab/analysis.hpp"
#include "qmlab/csv.hpp"
#include "qmlab/temporal.hpp"

namespace qmlab {

/// Malformed or inconsistent scenario description. The message names the
/// offending field path (or the line and column of a syntax error).
class ScenarioError : public Error {
 public:
  using Error::Error;
};

enum class Analysis { joint, marginal, linearity, effect_fit, heralded_fit, discrimination, pdm };

const char* to_string(Analysis a);

struct SweepSpec {
  /// "w" (weight of the first of two initial-state members) or "lambda".
  std::string parameter;
  double from = 0;
  double to = 0;
  double step = 0;

  /// from, from + step, ..., always ending exactly at `to`.
  std::vector<double> values() const;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  std::size_t trials = 200;
  EnsembleDecompositiond initial_state;
  UpdateRule rule;
  std::vector<Povmd> stages;
  std::vector<Analysis> analyses;
  std::optional<SweepSpec> sweep;
  Channel channel = Channel::identity(2);
  /// Decompositions compared by the discrimination analysis. Defaults to
  /// {(1, mix(initial_state))} against initial_state itself.
  std::optional<std::pair<EnsembleDecompositiond, EnsembleDecompositiond>> ensembles;

  DensityMatrixd state() const { return mix(initial_state); }
  TwoStageExperiment experiment() const;
};

/// Named states: z+ z- x+ x- y+ y- and I/2 (alias "mixed").
DensityMatrixd named_state(const std::string& name);
/// Named POVMs: computational (alias z), x, y and trivial.
Povmd named_povm(const std::string& name);

Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(const std::string& text);
/// Throws IoError if the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

struct NamedTable {
  std::string name;
  ResultTable table;
};

struct RunOutput {
  std::vector<NamedTable> tables;
  std::string summary;
};

/// Evaluates every requested analysis. Deterministic in (scenario, seed).
RunOutput run_scenario(const Scenario& s);

/// One row per sweep value with first- and second-stage marginals and, per
/// second-stage outcome, the absolute residual of a least-squares line fitted
/// across the whole sweep.
RunOutput run_sweep(const Scenario& s);

/// |y_k - (a + b t_k)| for the least-squares line through (t, y).
std::vector<double> linear_fit_residuals(const std::vector<double>& t, const std::vector<double>& y);

/// Writes each table to `<dir>/<scenario>.<table>.csv`; returns the paths.
std::vector<std::filesystem::path> write_tables(const RunOutput& out, const std::string& scenario_name,
                                                const std::filesystem::path& dir);

}  // namespace qmlab
