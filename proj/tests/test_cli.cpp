// Copyright 2026 The varspect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "support/temp_dir.hpp"
#include "support/test_models.hpp"
#include "varspect/io.hpp"

using namespace varspect;
using testing::TempDir;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const TempDir& dir, const std::string& args) {
  const std::string out_path = dir.file("_stdout.txt");
  const std::string err_path = dir.file("_stderr.txt");
  const std::string cmd =
      std::string(VARSPECT_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_text_file(out_path);
  result.err = read_text_file(err_path);
  return result;
}

int count_lines(const std::string& text) {
  int lines = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) ++lines;
  return lines;
}

// First data row of a CSV as numbers.
std::vector<double> first_row(const std::string& csv) {
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::vector<double> cells;
  std::istringstream fields(row);
  for (std::string cell; std::getline(fields, cell, ',');)
    cells.push_back(std::stod(cell));
  return cells;
}

}  // namespace

TEST_CASE("fit selects the order and writes the model") {
  TempDir dir;
  VarModel truth;
  truth.channel_names = {"p", "q"};
  truth.coeffs = {(Eigen::MatrixXd(2, 2) << 0.4, 0.2, -0.2, 0.3).finished(),
                  (Eigen::MatrixXd(2, 2) << 0.3, 0.0, 0.1, -0.35).finished()};
  truth.noise_cov = (Eigen::MatrixXd(2, 2) << 1.0, 0.2, 0.2, 0.5).finished();
  REQUIRE(is_stable(truth));
  write_csv(testing::simulate_model(truth, 3000, 12), dir.file("series.csv"));

  const RunResult r = run_cli(dir, "fit --input " + dir.file("series.csv") +
                                       " --has-header --max-order 8 --out-dir " +
                                       dir.file("out"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("selected order 2") != std::string::npos);

  const std::string aic = read_text_file(dir.file("out/aic.csv"));
  CHECK(count_lines(aic) == 10);  // header + orders 0..8

  const VarModel fitted = load_model_json(dir.file("out/model.json"));
  CHECK(fitted.order() == 2);
  CHECK(fitted.channel_names == truth.channel_names);
  CHECK((fitted.coeffs[0] - truth.coeffs[0]).cwiseAbs().maxCoeff() < 0.1);

  CHECK(std::filesystem::exists(dir.file("out/noise_correlation.csv")));
  CHECK(std::filesystem::exists(dir.file("out/noise_flags.csv")));
}

TEST_CASE("fit estimators agree on well-conditioned data") {
  TempDir dir;
  VarModel truth;
  truth.channel_names = {"p", "q"};
  truth.coeffs = {(Eigen::MatrixXd(2, 2) << 0.5, 0.2, -0.1, 0.4).finished()};
  truth.noise_cov = (Eigen::MatrixXd(2, 2) << 1.0, 0.3, 0.3, 0.8).finished();
  write_csv(testing::simulate_model(truth, 5000, 21), dir.file("series.csv"));

  for (const char* estimator : {"ls", "yw"}) {
    const RunResult r = run_cli(dir, std::string("fit --input ") + dir.file("series.csv") +
                                         " --has-header --order 1 --estimator " +
                                         estimator + " --out-dir " + dir.file(estimator));
    CHECK(r.exit_code == 0);
  }
  const VarModel ls = load_model_json(dir.file("ls/model.json"));
  const VarModel yw = load_model_json(dir.file("yw/model.json"));
  CHECK((ls.coeffs[0] - yw.coeffs[0]).cwiseAbs().maxCoeff() < 0.05);
  CHECK((ls.coeffs[0] - truth.coeffs[0]).cwiseAbs().maxCoeff() < 0.1);

  SUBCASE("bad estimator name") {
    const RunResult r = run_cli(dir, "fit --input " + dir.file("series.csv") +
                                         " --has-header --order 1 --estimator foo");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("fit with order 0 stores the sample covariance") {
  TempDir dir;
  GaussianSampler normal(9);
  MultivariateSeries s;
  s.names = {"x1"};
  s.values.resize(500, 1);
  for (Eigen::Index t = 0; t < 500; ++t) s.values(t, 0) = 2.0 * normal.next();
  write_csv(s, dir.file("series.csv"));

  const RunResult r = run_cli(dir, "fit --input " + dir.file("series.csv") +
                                       " --has-header --order 0 --out-dir " +
                                       dir.file("out"));
  CHECK(r.exit_code == 0);
  const VarModel fitted = load_model_json(dir.file("out/model.json"));
  CHECK(fitted.order() == 0);
  CHECK(fitted.noise_cov(0, 0) == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("fit reports a missing input as a usage error") {
  TempDir dir;
  const RunResult r =
      run_cli(dir, "fit --input " + dir.file("absent.csv") + " --order 1");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("absent.csv") != std::string::npos);
}

TEST_CASE("fit rejects contradictory order flags") {
  TempDir dir;
  write_text_file(dir.file("in.csv"), "1\n2\n3\n");
  const RunResult r = run_cli(dir, "fit --input " + dir.file("in.csv") +
                                       " --order 1 --max-order 3");
  CHECK(r.exit_code == 2);
}

TEST_CASE("contrib emits classical shares for white noise") {
  TempDir dir;
  VarModel model;
  model.channel_names = {"a", "b"};
  model.coeffs = {};
  model.noise_cov = Eigen::MatrixXd::Identity(2, 2);
  save_model_json(model, dir.file("model.json"));

  const RunResult r = run_cli(dir, "contrib --model " + dir.file("model.json") +
                                       " --mode classical --grid-points 5 --out-dir " +
                                       dir.file("out"));
  CHECK(r.exit_code == 0);

  const auto row_a = first_row(read_text_file(dir.file("out/contrib_rel_a.csv")));
  REQUIRE(row_a.size() == 4);  // f, total, a, b
  CHECK(row_a[1] == 1.0);
  CHECK(row_a[2] == 1.0);
  CHECK(row_a[3] == 0.0);
  const auto row_b = first_row(read_text_file(dir.file("out/contrib_rel_b.csv")));
  CHECK(row_b[2] == 0.0);
  CHECK(row_b[3] == 1.0);
  CHECK(std::filesystem::exists(dir.file("out/spectrum.csv")));
  CHECK(std::filesystem::exists(dir.file("out/stack_rel_a.csv")));
}

TEST_CASE("contrib extended pair columns vanish for diagonal noise") {
  TempDir dir;
  VarModel model;
  model.channel_names = {"a", "b"};
  model.coeffs = {(Eigen::MatrixXd(2, 2) << 0.4, 0.1, 0.0, 0.3).finished()};
  model.noise_cov = (Eigen::MatrixXd(2, 2) << 1.0, 0.0, 0.0, 2.0).finished();
  save_model_json(model, dir.file("model.json"));

  const RunResult r = run_cli(dir, "contrib --model " + dir.file("model.json") +
                                       " --mode extended --grid-points 7 --format csv,json"
                                       " --out-dir " +
                                       dir.file("out"));
  CHECK(r.exit_code == 0);
  const std::string csv = read_text_file(dir.file("out/contrib_abs_a.csv"));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "f,total,a,b,a+b");
  while (std::getline(lines, line))
    CHECK(line.substr(line.rfind(',') + 1) == "0");
  CHECK(std::filesystem::exists(dir.file("out/decomposition.json")));
}

TEST_CASE("contrib extended shows negative cells under negative covariance") {
  TempDir dir;
  VarModel model;
  model.channel_names = {"u", "w"};
  model.coeffs = {(Eigen::MatrixXd(2, 2) << 0.6, 0.2, 0.1, 0.5).finished()};
  model.noise_cov = (Eigen::MatrixXd(2, 2) << 1.0, -0.85, -0.85, 1.0).finished();
  save_model_json(model, dir.file("model.json"));

  const RunResult r = run_cli(dir, "contrib --model " + dir.file("model.json") +
                                       " --mode extended --out-dir " + dir.file("out"));
  CHECK(r.exit_code == 0);
  const std::string csv = read_text_file(dir.file("out/contrib_abs_u.csv"));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  bool negative_cell = false;
  while (std::getline(lines, line))
    if (std::stod(line.substr(line.rfind(',') + 1)) < 0.0) negative_cell = true;
  CHECK(negative_cell);
}

TEST_CASE("contrib flags a singular frequency with advice") {
  TempDir dir;
  VarModel model;
  model.channel_names = {"x1"};
  model.coeffs = {(Eigen::MatrixXd(1, 1) << 1.0).finished()};  // unit root at f = 0
  model.noise_cov = (Eigen::MatrixXd(1, 1) << 1.0).finished();
  save_model_json(model, dir.file("model.json"));

  const RunResult r = run_cli(dir, "contrib --model " + dir.file("model.json") +
                                       " --out-dir " + dir.file("out"));
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("singular") != std::string::npos);
  CHECK(r.err.find("--f-max") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir.file("out/spectrum.csv")));
}

TEST_CASE("simulate is reproducible and atomic") {
  TempDir dir;
  const VarModel model = testing::make_stable_model(2, 1, 31, 0.5);
  save_model_json(model, dir.file("model.json"));
  write_text_file(dir.file("scenarios.json"), R"json([
    {"label": "(1,2)", "base_variances": [1.0, 1.0], "pairs": []}
  ])json");

  const std::string args = "simulate --model " + dir.file("model.json") +
                           " --scenarios " + dir.file("scenarios.json") +
                           " --replicates 10 --length 100 --seed 3 --out-dir ";
  CHECK(run_cli(dir, args + dir.file("d1")).exit_code == 0);
  CHECK(run_cli(dir, args + dir.file("d2")).exit_code == 0);
  CHECK(read_text_file(dir.file("d1/simulation_summary.csv")) ==
        read_text_file(dir.file("d2/simulation_summary.csv")));

  SUBCASE("non-PSD scenario exits 2 without partial outputs") {
    write_text_file(dir.file("bad.json"), R"json([
      {"label": "(1,2)", "base_variances": [1.0, 1.0], "pairs": []},
      {"label": "(1+2)", "base_variances": [1.0, 1.0],
       "pairs": [{"l": 2, "m": 1, "cov": 2.0}]}
    ])json");
    const RunResult r = run_cli(dir, "simulate --model " + dir.file("model.json") +
                                         " --scenarios " + dir.file("bad.json") +
                                         " --replicates 5 --length 50 --out-dir " +
                                         dir.file("bad_out"));
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("(2,1)") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir.file("bad_out/simulation_summary.csv")));
  }
}

TEST_CASE("simulate ratio columns follow the oracle's direction") {
  // Channel 3 is driven by y1 + y2 and channel 4 by y1 - y2, so a positive
  // (1,2) noise covariance must push their variance ratios apart.
  TempDir dir;
  VarModel model;
  model.channel_names = {"c1", "c2", "c3", "c4"};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a.diagonal() << 0.5, 0.5, 0.3, 0.3;
  a(2, 0) = 0.4;
  a(2, 1) = 0.4;
  a(3, 0) = 0.4;
  a(3, 1) = -0.4;
  model.coeffs = {a};
  model.noise_cov = Eigen::MatrixXd::Identity(4, 4);
  save_model_json(model, dir.file("model.json"));
  write_text_file(dir.file("scenarios.json"), R"json([
    {"base_variances": [1, 1, 1, 1], "pairs": []},
    {"base_variances": [1, 1, 1, 1], "pairs": [{"l": 2, "m": 1, "cov": 0.8}]}
  ])json");

  const RunResult r = run_cli(dir, "simulate --model " + dir.file("model.json") +
                                       " --scenarios " + dir.file("scenarios.json") +
                                       " --replicates 200 --length 400 --seed 8"
                                       " --out-dir " +
                                       dir.file("out"));
  CHECK(r.exit_code == 0);
  const std::string csv = read_text_file(dir.file("out/simulation_summary.csv"));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::map<std::string, double> ratio;
  while (std::getline(lines, line)) {
    const std::size_t c1 = line.find(',');
    const std::string scenario = line.substr(0, c1);
    const std::string channel = line.substr(c1 + 1, line.find(',', c1 + 1) - c1 - 1);
    if (scenario == "(1+2)") ratio[channel] = std::stod(line.substr(line.rfind(',') + 1));
  }
  REQUIRE(ratio.size() == 4);
  CHECK(ratio["c3"] > 1.0);  // amplified by the positive covariance
  CHECK(ratio["c4"] < 1.0);  // damped by it
}

TEST_CASE("replay reconstructs and validates the channel flag") {
  TempDir dir;
  const VarModel truth = testing::make_stable_model(2, 2, 41, 0.6);
  const MultivariateSeries series = demean(testing::simulate_model(truth, 300, 42));
  write_csv(series, dir.file("series.csv"));
  const VarModel model = fit_least_squares(series, 2);
  save_model_json(model, dir.file("model.json"));

  const RunResult r = run_cli(dir, "replay --model " + dir.file("model.json") +
                                       " --input " + dir.file("series.csv") +
                                       " --has-header --out-dir " + dir.file("out"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(std::filesystem::exists(dir.file("out/replay_full.csv")));
  CHECK(std::filesystem::exists(dir.file("out/replay_sum.csv")));
  CHECK(std::filesystem::exists(dir.file("out/replay_x1.csv")));
  CHECK(std::filesystem::exists(dir.file("out/replay_x2.csv")));

  // The sum of per-channel contributions reproduces the full replay.
  const MultivariateSeries sum = load_csv(dir.file("out/replay_sum.csv"), true, 1.0);
  const MultivariateSeries full = load_csv(dir.file("out/replay_full.csv"), true, 1.0);
  const double scale = full.values.cwiseAbs().maxCoeff();
  CHECK((sum.values - full.values).cwiseAbs().maxCoeff() <= 1e-9 * scale);

  SUBCASE("channel out of range") {
    const RunResult bad = run_cli(dir, "replay --model " + dir.file("model.json") +
                                           " --input " + dir.file("series.csv") +
                                           " --has-header --channel 3 --out-dir " +
                                           dir.file("out2"));
    CHECK(bad.exit_code == 2);
  }
}

TEST_CASE("unknown flags are usage errors") {
  TempDir dir;
  CHECK(run_cli(dir, "fit --nope").exit_code == 2);
  CHECK(run_cli(dir, "").exit_code == 2);
}
