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

#ifndef VARSPECT_TOOLS_COMMANDS_HPP
#define VARSPECT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <string>

namespace varspect::cli {

struct FitConfig {
  std::string input;
  bool has_header = false;
  double sampling_interval = 1.0;
  int order = -1;      // exactly one of order / max_order is set
  int max_order = -1;
  std::string estimator = "ls";  // ls | yw
  std::string out_dir = ".";
};

struct ContribConfig {
  std::string model_path;
  int grid_points = 201;
  double f_max = 0.5;
  std::string mode = "extended";  // classical | extended
  std::string format = "csv";    // csv | json | csv,json
  std::string out_dir = ".";
};

struct SimulateConfig {
  std::string model_path;
  std::string scenarios_path;
  int replicates = 1000;
  long length = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir = ".";
};

struct ReplayConfig {
  std::string model_path;
  std::string input;
  bool has_header = false;
  double sampling_interval = 1.0;
  int channel = 0;      // 0 = every channel in turn
  long replay_start = 0;  // 0 = order + 1
  std::string out_dir = ".";
};

// Each command validates its configuration, computes everything, then writes
// all outputs through a temp-file-and-rename stage so failures leave no
// partial files behind. Returns the process exit code.
int cmd_fit(const FitConfig& config);
int cmd_contrib(const ContribConfig& config);
int cmd_simulate(const SimulateConfig& config);
int cmd_replay(const ReplayConfig& config);

}  // namespace varspect::cli

#endif  // VARSPECT_TOOLS_COMMANDS_HPP
