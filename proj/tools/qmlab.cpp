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

// Scenario runner: `qmlab run <file>` and `qmlab sweep <file>`.
//
// Exit status: 0 success, 1 invalid scenario or arguments, 2 I/O failure.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "qmlab/scenario.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct Options {
  std::string file;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

int execute(const Options& opt, bool sweep) {
  try {
    auto scenario = qmlab::load_scenario(opt.file);
    if (opt.seed) scenario.seed = *opt.seed;
    if (opt.tol) {
      if (!(*opt.tol >= 0)) throw qmlab::ScenarioError("--tol: must be non-negative");
      scenario.tolerance = *opt.tol;
    }
    const auto out = sweep ? qmlab::run_sweep(scenario) : qmlab::run_scenario(scenario);
    const auto paths = qmlab::write_tables(out, scenario.name, opt.out_dir);
    std::cout << out.summary;
    for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
    return 0;
  } catch (const qmlab::IoError& e) {
    std::cerr << "qmlab: " << e.what() << "\n";
    return kExitIo;
  } catch (const qmlab::Error& e) {
    std::cerr << "qmlab: " << opt.file << ": " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage quantum measurement scenarios under linear and nonlinear state-update rules"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "Scenario file (JSON)")->required();
    sub->add_option("--out", opt.out_dir, "Directory for CSV output");
    sub->add_option("--seed", opt.seed, "Override the scenario seed");
    sub->add_option("--tol", opt.tol, "Override the analysis tolerance");
  };
  auto* run = app.add_subcommand("run", "Execute every analysis listed in the scenario");
  auto* sweep = app.add_subcommand("sweep", "Sweep the scenario's parameter and record marginals");
  add_common(run);
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  return execute(opt, sweep->parsed());
}
