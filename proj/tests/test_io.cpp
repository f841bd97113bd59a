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

#include <sstream>

#include "support/temp_dir.hpp"
#include "support/test_models.hpp"
#include "varspect/contribution.hpp"
#include "varspect/errors.hpp"
#include "varspect/io.hpp"
#include "varspect/spectral.hpp"

using namespace varspect;
using testing::TempDir;

TEST_CASE("model json round-trips bit-identically") {
  VarModel model = testing::make_stable_model(3, 2, 404);
  model.channel_names = {"yaw \"rate\"", "roll", "pitch"};  // exercise escaping
  model.sampling_interval = 0.1;
  model.coeffs[0](0, 0) = 1.0 / 3.0;
  model.coeffs[1](2, 1) = 1e-300;
  model.noise_cov(0, 0) += 1e-13;

  const std::string text = model_to_json(model);
  const VarModel back = model_from_json(text);
  CHECK(back.channel_names == model.channel_names);
  CHECK(back.sampling_interval == model.sampling_interval);
  CHECK(back.noise_cov == model.noise_cov);
  REQUIRE(back.coeffs.size() == model.coeffs.size());
  for (std::size_t j = 0; j < model.coeffs.size(); ++j)
    CHECK(back.coeffs[j] == model.coeffs[j]);

  // And the rendered document is itself stable.
  CHECK(model_to_json(back) == text);
}

TEST_CASE("model json uses full precision") {
  VarModel model;
  model.channel_names = {"x1"};
  model.coeffs = {};
  model.noise_cov = (Eigen::MatrixXd(1, 1) << 1.0 / 3.0).finished();
  CHECK(model_to_json(model).find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("order-0 model serializes an empty coefficient list") {
  VarModel model;
  model.channel_names = {"a", "b"};
  model.coeffs = {};
  model.noise_cov = Eigen::MatrixXd::Identity(2, 2);
  const VarModel back = model_from_json(model_to_json(model));
  CHECK(back.order() == 0);
  CHECK(back.channels() == 2);
}

TEST_CASE("model json validation errors") {
  CHECK_THROWS_AS(model_from_json("not json"), ValidationError);
  CHECK_THROWS_AS(model_from_json("{}"), ValidationError);
  CHECK_THROWS_AS(model_from_json(R"({"k":1,"order":0,"channel_names":["a"],
      "sampling_interval":1.0,"coeffs":[],"noise_cov":[1,2]})"),
                  ValidationError);
  // Asymmetric noise covariance.
  CHECK_THROWS_AS(model_from_json(R"({"k":2,"order":0,"channel_names":["a","b"],
      "sampling_interval":1.0,"coeffs":[],"noise_cov":[1,0.5,0.1,1]})"),
                  ValidationError);
  TempDir dir;
  CHECK_THROWS_AS(load_model_json(dir.file("missing.json")), ValidationError);
}

TEST_CASE("model file round-trip") {
  TempDir dir;
  const VarModel model = testing::make_stable_model(2, 1, 7);
  save_model_json(model, dir.file("model.json"));
  const VarModel back = load_model_json(dir.file("model.json"));
  CHECK(back.coeffs[0] == model.coeffs[0]);
  CHECK(back.noise_cov == model.noise_cov);
}

TEST_CASE("scenario files parse and validate") {
  const char* text = R"json([
    {"label": "(1,2,3,4)", "base_variances": [1, 1, 1, 1], "pairs": []},
    {"label": "(1+2)", "base_variances": [1, 1, 1, 1],
     "pairs": [{"l": 2, "m": 1, "cov": 0.8}]}
  ])json";
  const auto scenarios = scenarios_from_json(text, 4);
  REQUIRE(scenarios.size() == 2);
  CHECK(scenarios[0].is_baseline());
  CHECK(scenarios[1].label() == "(1+2)");
  CHECK(scenarios[1].covariance()(1, 0) == 0.8);

  SUBCASE("l and m may come swapped") {
    const auto swapped = scenarios_from_json(
        R"json([{"base_variances": [1, 1], "pairs": [{"l": 1, "m": 2, "cov": 0.5}]}])json", 2);
    CHECK(swapped[0].covariance()(1, 0) == 0.5);
  }
  SUBCASE("channel count mismatch") {
    CHECK_THROWS_AS(scenarios_from_json(text, 3), ValidationError);
  }
  SUBCASE("non-PSD scenario names itself") {
    CHECK_THROWS_WITH_AS(
        scenarios_from_json(
            R"json([{"label":"bad","base_variances":[1,1],
                 "pairs":[{"l":2,"m":1,"cov":1.5}]}])json",
            2),
        doctest::Contains("scenario 1"), ValidationError);
  }
  SUBCASE("malformed document") {
    CHECK_THROWS_AS(scenarios_from_json("{", 2), ValidationError);
    CHECK_THROWS_AS(scenarios_from_json("[]", 2), ValidationError);
  }
}

TEST_CASE("spectrum csv layout") {
  const VarModel model = testing::make_stable_model(2, 1, 11);
  const CrossSpectrum cs = cross_spectrum(model, make_grid(3, 0.5));
  const std::string csv = spectrum_to_csv(cs);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "f,p_11_re,p_11_im,p_12_re,p_12_im,p_21_re,p_21_im,p_22_re,p_22_im");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("decomposition csv carries term labels") {
  VarModel model;
  model.channel_names = {"GDP", "PC"};
  model.noise_cov = (Eigen::MatrixXd(2, 2) << 1.0, 0.2, 0.2, 1.0).finished();
  const ContributionDecomposition dec = extended_relative(model, make_grid(3, 0.5));

  const std::string abs_csv = decomposition_to_csv(dec, 1, false);
  CHECK(abs_csv.rfind("f,total,GDP,PC,GDP+PC\n", 0) == 0);
  const std::string rel_csv = decomposition_to_csv(dec, 2, true);
  CHECK(rel_csv.rfind("f,total,GDP,PC,GDP+PC\n", 0) == 0);

  const std::string stack = stack_to_csv(dec, 1, true);
  CHECK(stack.rfind("f,GDP,PC,GDP+PC\n", 0) == 0);
  // Relative stack of the last term is exactly 1.
  std::istringstream lines(stack);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.substr(line.rfind(',') + 1) == "1");
}

TEST_CASE("decomposition json mirrors the csv content") {
  VarModel model;
  model.channel_names = {"a", "b"};
  model.noise_cov = Eigen::MatrixXd::Identity(2, 2);
  const ContributionDecomposition dec = extended_relative(model, make_grid(3, 0.5));
  const std::string doc = decomposition_to_json(dec);
  CHECK(doc.find("\"mode\": \"extended\"") != std::string::npos);
  CHECK(doc.find("\"term_count\": 3") != std::string::npos);
  CHECK(doc.find("\"a+b\"") != std::string::npos);
  CHECK(doc.find("\"relative\"") != std::string::npos);
}

TEST_CASE("summary csv includes baseline ratios") {
  const VarModel model = testing::make_stable_model(2, 1, 13, 0.5);
  const NoiseScenario baseline(2, Eigen::Vector2d::Ones(), {});
  const NoiseScenario pair(2, Eigen::Vector2d::Ones(), {{2, 1, 0.5}});
  const auto summaries = monte_carlo(model, {baseline, pair}, 5, 100, 3);
  const std::string csv = summaries_to_csv(summaries, model.channel_names);

  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "scenario,channel,mean_var,sd_var,replicates,length,seed,ratio_vs_baseline");
  std::string first;
  std::getline(lines, first);
  CHECK(first.substr(first.rfind(',') + 1) == "1");  // baseline ratio vs itself
  int rows = 1;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 4);  // 2 scenarios x 2 channels
}
