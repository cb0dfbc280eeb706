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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "oracles.hpp"
#include "qmlab/scenario.hpp"

using namespace qmlab;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = QMLAB_SCENARIO_DIR;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qmlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QMLAB_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const NamedTable& table(const RunOutput& out, const std::string& name) {
  for (const auto& t : out.tables) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("no table " + name);
}

}  // namespace

TEST(Csv, EmptyTableIsHeaderOnly) {
  EXPECT_EQ(render_csv(ResultTable({"a", "b"})), "a,b\n");
}

TEST(Csv, SingleValue) {
  ResultTable t({"col"});
  t.add_row({0.5});
  EXPECT_EQ(render_csv(t), "col\n0.5\n");
}

TEST(Csv, SeventeenDigitsAndQuoting) {
  ResultTable t({"x", "label"});
  t.add_row({0.1, std::string("a,\"b\"")});
  EXPECT_EQ(render_csv(t), "x,label\n0.10000000000000001,\"a,\"\"b\"\"\"\n");
  EXPECT_THROW(t.add_row({1.0}), InvalidInput);
}

TEST(Csv, ReparseIsBitExact) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  ResultTable t({"a", "b", "name"});
  for (int k = 0; k < 500; ++k) t.add_row({u(rng), std::ldexp(u(rng), -40), std::string("r") + std::to_string(k)});
  const auto back = parse_csv(render_csv(t));
  ASSERT_EQ(back.rows().size(), t.rows().size());
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    ASSERT_EQ(std::get<double>(back.rows()[r][0]), std::get<double>(t.rows()[r][0]));
    ASSERT_EQ(std::get<double>(back.rows()[r][1]), std::get<double>(t.rows()[r][1]));
    ASSERT_EQ(std::get<std::string>(back.rows()[r][2]), std::get<std::string>(t.rows()[r][2]));
  }
}

TEST(Csv, EmitFailsOnUnwritablePath) {
  EXPECT_THROW(emit_csv(ResultTable({"a"}), "/nonexistent-dir/x.csv"), IoError);
}

TEST(Sweep, ValuesIncludeEndpoints) {
  const auto v = SweepSpec{"w", 0, 1, 0.05}.values();
  ASSERT_EQ(v.size(), 21u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 1.0);
  const auto odd = SweepSpec{"lambda", 0, 1, 0.3}.values();
  ASSERT_EQ(odd.size(), 5u);
  EXPECT_EQ(odd.back(), 1.0);
  EXPECT_EQ((SweepSpec{"w", 0.5, 0.5, 0.1}.values().size()), 1u);
}

TEST(LinearFit, AffineDataHasZeroResidual) {
  const std::vector<double> t{0, 1, 2, 3};
  for (const double r : linear_fit_residuals(t, {1, 3, 5, 7})) EXPECT_LE(r, 1e-12);
  const auto q = linear_fit_residuals(t, {0, 1, 4, 9});
  EXPECT_GT(*std::max_element(q.begin(), q.end()), 0.5);
}

TEST(Scenario, ParsesAllStateForms) {
  const auto s = parse_scenario_text(R"({
    "name": "forms",
    "initial_state": {"mixture": [
      {"weight": 0.25, "state": {"bloch": [0, 0, 1]}},
      {"weight": 0.25, "state": {"matrix": [[0.5, [0, -0.5]], [[0, 0.5], 0.5]]}},
      {"weight": 0.5, "state": {"mixture": [{"weight": 1, "state": "mixed"}]}}
    ]},
    "rule": {"type": "lueders", "kraus": [[[[1, 0], [0, 0]]], [[[0, 0], [0, 1]]]]},
    "stages": ["z", {"effects": [{"label": "yes", "matrix": [[1, 0], [0, 0]]}, {"label": "no", "matrix": [[0, 0], [0, 1]]}]}],
    "channel": {"kraus": [[[1, 0], [0, 1]]]}
  })");
  EXPECT_EQ(s.initial_state.size(), 3u);
  const auto v = density_to_bloch(s.state());
  EXPECT_NEAR(v.y, 0.25, 1e-15);
  EXPECT_NEAR(v.z, 0.25, 1e-15);
  EXPECT_EQ(s.stages[1].labels()[0], "yes");
}

TEST(Scenario, ErrorsNameTheField) {
  auto message = [](const std::string& text) {
    try {
      parse_scenario_text(text);
    } catch (const ScenarioError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message(R"({"name": "x", "initial_state": "I/2", "rule": {"type": "logistic", "lambda": 5}})").find("rule.lambda"),
            std::string::npos);
  EXPECT_NE(message(R"({"name": "x", "initial_state": {"bloch": [0, 0, 2]}})").find("initial_state.bloch"), std::string::npos);
  EXPECT_NE(message(R"({"name": "x", "initial_state": "w+"})").find("initial_state"), std::string::npos);
  EXPECT_NE(message(R"({"name": "x", "initial_state": "I/2", "analyses": ["joint"]})").find("analyses[0]"),
            std::string::npos);
  EXPECT_NE(message(R"({"name": "x", "initial_state": "I/2", "stages": ["z"]})").find("stages"), std::string::npos);
  EXPECT_NE(message(R"({"name": "x", "initial_state": {"matrix": [[1.5, 0], [0, -0.5]]}})").find("positivity"),
            std::string::npos);
  EXPECT_NE(message("{\n  \"name\": \"x\",\n  oops\n}").find("line 3"), std::string::npos);
  EXPECT_NE(message(R"({"name": "x", "initial_state": "I/2", "stages": ["z", "z"], "rule": {"type": "lueders"},
                        "sweep": {"parameter": "lambda", "from": 0, "to": 1, "step": 0.1}})")
                .find("sweep.parameter"),
            std::string::npos);
  EXPECT_NE(message(R"({"name": "x", "initial_state": "I/2", "stages": ["z", "z"],
                        "sweep": {"parameter": "w", "from": 0, "to": 1, "step": 0.1}})")
                .find("two-member"),
            std::string::npos);
  EXPECT_NE(message(R"({"name": "x", "initial_state": "I/2", "stages": ["z", "z"],
                        "sweep": {"parameter": "w", "from": 1, "to": 0, "step": 0.1}})")
                .find("empty range"),
            std::string::npos);
}

TEST(RunScenario, LogisticCounterexample) {
  const auto out = run_scenario(load_scenario(kScenarios / "logistic-counterexample.json"));
  const auto& marg = table(out, "marginal").table;
  // Rows: stage 1 z+, z-, stage 2 z+, z-.
  EXPECT_NEAR(marg.number(2, "probability"), 1.0, 1e-12);
  EXPECT_NEAR(marg.number(3, "probability"), 0.0, 1e-12);
  const auto& lin = table(out, "linearity").table;
  EXPECT_EQ(std::get<std::string>(lin.rows()[0][lin.column_index("result")]), "failed");
  EXPECT_NEAR(lin.number(0, "canonical_gap"), 0.5, 1e-9);
  EXPECT_GE(table(out, "heralded_fit").table.number(0, "fit_residual"), 0.05);
  EXPECT_NEAR(table(out, "discrimination").table.number(0, "tv_gap"), 0.5, 1e-9);
  EXPECT_NE(out.summary.find("failed"), std::string::npos);
}

TEST(RunScenario, LuedersBaseline) {
  const auto out = run_scenario(load_scenario(kScenarios / "lueders-baseline.json"));
  EXPECT_LE(table(out, "heralded_fit").table.number(0, "fit_residual"), 1e-9);
  const auto& lin = table(out, "linearity").table;
  for (std::size_t r = 0; r < lin.rows().size(); ++r) {
    EXPECT_EQ(std::get<std::string>(lin.rows()[r][lin.column_index("result")]), "passed");
  }
  EXPECT_LE(table(out, "discrimination").table.number(0, "tv_gap"), 1e-10);
}

TEST(RunScenario, PdmIdentity) {
  const auto out = run_scenario(load_scenario(kScenarios / "pdm-identity.json"));
  const auto& t = table(out, "pdm").table;
  EXPECT_NEAR(t.number(0, "min_eigenvalue"), -0.5, 1e-9);
  EXPECT_NEAR(t.number(0, "trace"), 1.0, 1e-12);
}

TEST(RunSweep, LogisticWeightMatchesClosedForm) {
  const auto out = run_sweep(load_scenario(kScenarios / "logistic-sweep-w.json"));
  const auto& t = out.tables.front().table;
  ASSERT_EQ(t.rows().size(), 21u);
  double worst = 0;
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    const double w = t.number(r, "w");
    ASSERT_NEAR(t.number(r, "P2(z+)"), oracle::logistic_marginal_zplus(4, w), 1e-10);
    worst = std::max(worst, t.number(r, "P2(z+)_linfit_residual"));
  }
  EXPECT_GE(worst, 0.05);
}

TEST(RunSweep, LuedersWeightIsAffine) {
  const auto out = run_sweep(load_scenario(kScenarios / "lueders-sweep-w.json"));
  const auto& t = out.tables.front().table;
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    ASSERT_NEAR(t.number(r, "P2(z+)"), (1 + t.number(r, "w")) / 2, 1e-12);
    ASSERT_LE(t.number(r, "P2(z+)_linfit_residual"), 1e-10);
  }
}

TEST(RunSweep, LambdaAtHalfWeightIsAffine) {
  const auto out = run_sweep(load_scenario(kScenarios / "logistic-sweep-lambda.json"));
  const auto& t = out.tables.front().table;
  ASSERT_EQ(t.rows().size(), 17u);
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    ASSERT_NEAR(t.number(r, "P2(z+)"), (1 + t.number(r, "lambda") / 4) / 2, 1e-12);
    ASSERT_LE(t.number(r, "P2(z+)_linfit_residual"), 1e-10);
  }
}

TEST(RunSweep, RequiresSweepSpec) {
  EXPECT_THROW(run_sweep(load_scenario(kScenarios / "lueders-baseline.json")), ScenarioError);
}

TEST(LoadScenario, MissingFileIsIoError) {
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), IoError);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  EXPECT_EQ(run_cli("run " + (kScenarios / "pdm-identity.json").string() + " --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "pdm-identity.pdm.csv"));
  EXPECT_EQ(run_cli("sweep " + (kScenarios / "logistic-sweep-w.json").string() + " --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "logistic-sweep-w.sweep.csv"));

  const auto bad = dir / "bad.json";
  std::ofstream(bad) << R"({"name": "bad", "initial_state": "I/2", "rule": {"type": "logistic", "lambda": 9}})";
  EXPECT_EQ(run_cli("run " + bad.string() + " --out " + dir.string()), 1);
  EXPECT_EQ(run_cli("sweep " + (kScenarios / "lueders-baseline.json").string() + " --out " + dir.string()), 1);
  EXPECT_EQ(run_cli("run /nonexistent/file.json"), 2);
  EXPECT_EQ(run_cli("run " + (kScenarios / "pdm-identity.json").string() + " --out /proc/forbidden"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 1);
}

TEST(Cli, SeedAndTolOverrides) {
  const auto a = scratch("seed_a");
  const auto b = scratch("seed_b");
  // Canonical witness is blind to x-basis OPFs, so the worst gap comes from the seeded ensembles.
  const auto file = (a / "xx.json").string();
  std::ofstream(file) << R"({"name": "xx", "initial_state": "I/2", "rule": {"type": "logistic", "lambda": 3},
                             "stages": ["x", "x"], "analyses": ["linearity"]})";
  ASSERT_EQ(run_cli("run " + file + " --seed 1 --out " + a.string()), 0);
  ASSERT_EQ(run_cli("run " + file + " --seed 2 --out " + b.string()), 0);
  const auto name = "xx.linearity.csv";
  EXPECT_NE(read_file(a / name), read_file(b / name));

  ASSERT_EQ(run_cli("run " + file + " --tol 0.75 --out " + a.string()), 0);
  const auto lin = parse_csv(read_file(a / name));
  EXPECT_EQ(lin.number(0, "tolerance"), 0.75);
  EXPECT_EQ(std::get<std::string>(lin.rows()[0][lin.column_index("result")]), "passed");
}

TEST(Cli, ByteIdenticalReruns) {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  for (const auto& entry : fs::directory_iterator(kScenarios)) {
    const auto scenario = load_scenario(entry.path());
    const std::string mode = scenario.sweep ? "sweep " : "run ";
    ASSERT_EQ(run_cli(mode + entry.path().string() + " --out " + a.string()), 0);
    ASSERT_EQ(run_cli(mode + entry.path().string() + " --out " + b.string()), 0);
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    EXPECT_EQ(read_file(entry.path()), read_file(b / entry.path().filename())) << entry.path();
    ++compared;
  }
  EXPECT_GT(compared, 10u);
}
