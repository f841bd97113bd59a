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

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "varspect/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "varspect: multivariate AR spectral analysis and noise contribution "
      "decomposition"};
  app.require_subcommand(1);

  varspect::cli::FitConfig fit;
  CLI::App* cmd_fit = app.add_subcommand(
      "fit", "Fit a VAR model to a CSV time series and write it as JSON");
  cmd_fit->add_option("--input", fit.input, "Input CSV, one row per time step")
      ->required();
  cmd_fit->add_flag("--has-header", fit.has_header,
                    "First line of the input names the channels");
  cmd_fit->add_option("--sampling-interval", fit.sampling_interval,
                      "Time units per sample (default 1)");
  cmd_fit->add_option("--order", fit.order, "Model order to fit");
  cmd_fit->add_option("--max-order", fit.max_order,
                      "Select the order in 0..max by AIC, then fit it");
  cmd_fit->add_option("--estimator", fit.estimator,
                      "Estimator: ls (least squares) or yw (Yule-Walker); "
                      "order selection always scores least-squares fits");
  cmd_fit->add_option("--out-dir", fit.out_dir, "Output directory (default .)");

  varspect::cli::ContribConfig contrib;
  CLI::App* cmd_contrib = app.add_subcommand(
      "contrib", "Decompose the power spectrum into noise contributions");
  cmd_contrib->add_option("--model", contrib.model_path, "Model JSON from fit")
      ->required();
  cmd_contrib->add_option("--grid-points", contrib.grid_points,
                          "Frequency grid size (default 201)");
  cmd_contrib->add_option("--f-max", contrib.f_max,
                          "Upper grid frequency in cycles/sample, (0, 0.5]");
  cmd_contrib->add_option("--mode", contrib.mode,
                          "classical (diagonal noise) or extended (correlated noise)");
  cmd_contrib->add_option("--format", contrib.format, "csv, json or csv,json");
  cmd_contrib->add_option("--out-dir", contrib.out_dir, "Output directory (default .)");

  varspect::cli::SimulateConfig sim;
  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate", "Monte Carlo variance study under noise covariance scenarios");
  cmd_simulate->add_option("--model", sim.model_path, "Model JSON from fit")->required();
  cmd_simulate->add_option("--scenarios", sim.scenarios_path,
                           "JSON list of noise scenarios")
      ->required();
  cmd_simulate->add_option("--replicates", sim.replicates,
                           "Series generated per scenario (default 1000)");
  cmd_simulate->add_option("--length", sim.length, "Length of each series (default 1000)");
  cmd_simulate->add_option("--seed", sim.seed, "Base seed; runs are reproducible");
  cmd_simulate->add_option("--threads", sim.threads,
                           "Worker threads; results are identical at any level");
  cmd_simulate->add_option("--out-dir", sim.out_dir, "Output directory (default .)");

  varspect::cli::ReplayConfig replay;
  CLI::App* cmd_replay = app.add_subcommand(
      "replay", "Counterfactual single-noise replays through a fitted model");
  cmd_replay->add_option("--model", replay.model_path, "Model JSON from fit")->required();
  cmd_replay->add_option("--input", replay.input, "Series the model was fitted on")
      ->required();
  cmd_replay->add_flag("--has-header", replay.has_header,
                       "First line of the input names the channels");
  cmd_replay->add_option("--sampling-interval", replay.sampling_interval,
                         "Time units per sample (default 1)");
  cmd_replay->add_option("--channel", replay.channel,
                         "Replay only this channel (default: each in turn)");
  cmd_replay->add_option("--replay-start", replay.replay_start,
                         "First recomputed row, 1-based (default order+1)");
  cmd_replay->add_option("--out-dir", replay.out_dir, "Output directory (default .)");

  try {
    app.parse(argc, argv);
    if (cmd_fit->parsed()) return varspect::cli::cmd_fit(fit);
    if (cmd_contrib->parsed()) return varspect::cli::cmd_contrib(contrib);
    if (cmd_simulate->parsed()) return varspect::cli::cmd_simulate(sim);
    if (cmd_replay->parsed()) return varspect::cli::cmd_replay(replay);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const varspect::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const varspect::NumericalError& err) {
    std::cerr << "numerical error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "unexpected error: " << err.what() << "\n";
    return 3;
  }
}
