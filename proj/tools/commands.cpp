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

#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

#include "varspect/contribution.hpp"
#include "varspect/errors.hpp"
#include "varspect/io.hpp"
#include "varspect/simulation.hpp"
#include "varspect/spectral.hpp"
#include "varspect/var_model.hpp"

namespace varspect::cli {

namespace {

namespace fs = std::filesystem;

// Collects outputs in memory; commit() writes each to a temp file in the
// target directory and renames it into place, so a failing command never
// leaves partial files.
class OutputStager {
public:
  explicit OutputStager(std::string dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }

  void commit() const {
    fs::create_directories(dir_);
    for (const auto& [name, content] : files_) {
      const fs::path final_path = dir_ / name;
      const fs::path temp_path = dir_ / ("." + name + ".tmp");
      write_text_file(temp_path.string(), content);
      fs::rename(temp_path, final_path);
      std::cout << "wrote " << final_path.string() << "\n";
    }
  }

private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '-' || c == '.')
               ? c
               : '_';
  return out;
}

// Filesystem-safe channel tags; collisions after sanitizing get a suffix.
std::vector<std::string> file_tags(const std::vector<std::string>& names) {
  std::vector<std::string> tags;
  tags.reserve(names.size());
  for (const auto& name : names) {
    std::string tag = sanitize(name);
    int suffix = 1;
    while (std::find(tags.begin(), tags.end(), tag) != tags.end())
      tag = sanitize(name) + "_" + std::to_string(++suffix);
    tags.push_back(tag);
  }
  return tags;
}

MultivariateSeries load_input(const std::string& path, bool has_header,
                              double sampling_interval) {
  if (path.empty()) throw ValidationError("--input is required");
  if (!fs::exists(path)) throw ValidationError("input file does not exist: " + path);
  return load_csv(path, has_header, sampling_interval);
}

VarModel load_model(const std::string& path) {
  if (path.empty()) throw ValidationError("--model is required");
  if (!fs::exists(path)) throw ValidationError("model file does not exist: " + path);
  return load_model_json(path);
}

std::string correlation_csv(const NoiseCorrelation& nc,
                            const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "channel";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (Eigen::Index r = 0; r < nc.matrix.rows(); ++r) {
    out << names[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < nc.matrix.cols(); ++c)
      out << ',' << detail::format_double(nc.matrix(r, c));
    out << '\n';
  }
  return out.str();
}

std::string correlation_flags_csv(const NoiseCorrelation& nc,
                                  const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "l,m,channel_l,channel_m,correlation,threshold,significant\n";
  for (Eigen::Index l = 1; l < nc.matrix.rows(); ++l)
    for (Eigen::Index m = 0; m < l; ++m) {
      const double r = nc.matrix(l, m);
      out << l + 1 << ',' << m + 1 << ',' << names[static_cast<std::size_t>(l)] << ','
          << names[static_cast<std::size_t>(m)] << ',' << detail::format_double(r) << ','
          << detail::format_double(nc.threshold) << ','
          << (std::abs(r) > nc.threshold ? 1 : 0) << '\n';
    }
  return out.str();
}

}  // namespace

int cmd_fit(const FitConfig& config) {
  if ((config.order < 0) == (config.max_order < 0))
    throw ValidationError("give exactly one of --order or --max-order");
  if (config.estimator != "ls" && config.estimator != "yw")
    throw ValidationError("--estimator must be ls or yw");

  const MultivariateSeries raw = load_input(config.input, config.has_header,
                                            config.sampling_interval);
  const MultivariateSeries series = demean(raw);
  const Eigen::Index n = series.length();

  OutputStager stage(config.out_dir);

  int order = config.order;
  if (config.max_order >= 0) {
    const OrderSelection sel = select_order_aic(series, config.max_order);
    order = sel.best_order;
    std::ostringstream aic;
    aic << "order,aic,best\n";
    for (std::size_t m = 0; m < sel.aic.size(); ++m)
      aic << m << ',' << detail::format_double(sel.aic[m]) << ','
          << (static_cast<int>(m) == sel.best_order ? 1 : 0) << '\n';
    stage.add("aic.csv", aic.str());
    std::cout << "selected order " << order << " by AIC over 0.." << config.max_order
              << "\n";
  }

  VarModel model;
  if (config.estimator == "ls") {
    model = fit_least_squares(series, order);
  } else {
    model = fit_yule_walker(sample_autocovariance(series, order), order, series.names,
                            series.sampling_interval);
  }

  const double radius = companion_spectral_radius(model);
  std::cout << "fitted VAR(" << order << ") on " << n << " rows, " << model.channels()
            << " channels\n";
  std::cout << "companion spectral radius " << radius
            << (radius < 1.0 ? " (stable)" : " (NOT stable)") << "\n";
  if (radius >= 1.0)
    std::cerr << "warning: fitted model is not stable; spectra may be meaningless\n";

  const NoiseCorrelation nc = noise_correlation(model, n);
  std::cout << "noise correlation threshold 1/sqrt(N+2) = " << nc.threshold << "\n";
  for (Eigen::Index l = 1; l < nc.matrix.rows(); ++l)
    for (Eigen::Index m = 0; m < l; ++m)
      if (std::abs(nc.matrix(l, m)) > nc.threshold)
        std::cout << "  flagged pair (" << model.channel_names[static_cast<std::size_t>(m)]
                  << ", " << model.channel_names[static_cast<std::size_t>(l)]
                  << "): r = " << nc.matrix(l, m) << "\n";

  stage.add("model.json", model_to_json(model));
  stage.add("noise_correlation.csv", correlation_csv(nc, model.channel_names));
  stage.add("noise_flags.csv", correlation_flags_csv(nc, model.channel_names));
  stage.commit();
  return 0;
}

int cmd_contrib(const ContribConfig& config) {
  if (config.mode != "classical" && config.mode != "extended")
    throw ValidationError("--mode must be classical or extended");
  const bool want_csv = config.format == "csv" || config.format == "csv,json";
  const bool want_json = config.format == "json" || config.format == "csv,json";
  if (!want_csv && !want_json)
    throw ValidationError("--format must be csv, json or csv,json");

  const VarModel model = load_model(config.model_path);
  const FrequencyGrid grid = make_grid(config.grid_points, config.f_max);

  ContributionDecomposition dec;
  CrossSpectrum spectrum;
  try {
    dec = config.mode == "classical" ? akaike_relative(model, grid)
                                     : extended_relative(model, grid);
    spectrum = cross_spectrum(model, grid);
  } catch (const NumericalError& err) {
    throw NumericalError(std::string(err.what()) +
                         "; try a smaller --f-max to avoid the singular frequency");
  }

  OutputStager stage(config.out_dir);
  if (want_csv) {
    stage.add("spectrum.csv", spectrum_to_csv(spectrum));
    const std::vector<std::string> tags = file_tags(dec.channel_names);
    for (int target = 1; target <= dec.k; ++target) {
      const std::string& tag = tags[static_cast<std::size_t>(target - 1)];
      stage.add("contrib_abs_" + tag + ".csv", decomposition_to_csv(dec, target, false));
      stage.add("contrib_rel_" + tag + ".csv", decomposition_to_csv(dec, target, true));
      stage.add("stack_abs_" + tag + ".csv", stack_to_csv(dec, target, false));
      stage.add("stack_rel_" + tag + ".csv", stack_to_csv(dec, target, true));
    }
  }
  if (want_json) stage.add("decomposition.json", decomposition_to_json(dec));
  stage.commit();
  std::cout << config.mode << " decomposition of " << dec.k << " channels at "
            << grid.size() << " frequencies\n";
  return 0;
}

int cmd_simulate(const SimulateConfig& config) {
  if (config.scenarios_path.empty()) throw ValidationError("--scenarios is required");
  if (!fs::exists(config.scenarios_path))
    throw ValidationError("scenario file does not exist: " + config.scenarios_path);

  const VarModel model = load_model(config.model_path);
  const std::vector<NoiseScenario> scenarios =
      load_scenarios_json(config.scenarios_path, model.channels());

  if (!is_stable(model))
    std::cerr << "warning: model is not stable; simulated variances will diverge\n";
  if (config.replicates == 1)
    std::cerr << "warning: single replicate, standard deviations reported as 0\n";

  const auto summaries = monte_carlo(model, scenarios, config.replicates, config.length,
                                     config.seed, config.threads);

  OutputStager stage(config.out_dir);
  stage.add("simulation_summary.csv", summaries_to_csv(summaries, model.channel_names));
  stage.commit();
  std::cout << "simulated " << summaries.size() << " scenarios x " << config.replicates
            << " replicates of length " << config.length << " (seed " << config.seed
            << ")\n";
  return 0;
}

int cmd_replay(const ReplayConfig& config) {
  const VarModel model = load_model(config.model_path);
  const MultivariateSeries raw = load_input(config.input, config.has_header,
                                            config.sampling_interval);
  const MultivariateSeries series = demean(raw);
  if (series.channels() != model.channels())
    throw ValidationError("input channel count does not match the model");
  const int k = model.channels();
  if (config.channel < 0 || config.channel > k)
    throw ValidationError("--channel out of range 1..k");

  const ResidualSeries resid = residuals(model, series);
  const Eigen::Index start = config.replay_start == 0
                                 ? static_cast<Eigen::Index>(model.order()) + 1
                                 : static_cast<Eigen::Index>(config.replay_start);

  std::vector<int> all;
  for (int c = 1; c <= k; ++c) all.push_back(c);
  const MultivariateSeries full = replay(model, resid, series, all, start);
  const MultivariateSeries none = replay(model, resid, series, {}, start);

  // Reconstruction check: full-noise replay must reproduce the series.
  const double scale = series.values.cwiseAbs().maxCoeff();
  const double err = (full.values - series.values).cwiseAbs().maxCoeff();
  const bool pass = err <= 1e-9 * scale;
  std::cout << "replay check: full-noise replay "
            << (pass ? "reproduces" : "DOES NOT reproduce")
            << " the series beyond row " << model.order() << " (max abs err " << err
            << ", scale " << scale << "): " << (pass ? "PASS" : "FAIL") << "\n";

  OutputStager stage(config.out_dir);
  stage.add("replay_full.csv", series_to_csv(full));
  stage.add("replay_none.csv", series_to_csv(none));

  std::vector<int> channels;
  if (config.channel > 0) {
    channels.push_back(config.channel);
  } else {
    channels = all;
  }
  // Sum of single-channel contributions; shared initial-condition response
  // counted once, so with every channel it reproduces the full replay.
  const std::vector<std::string> tags = file_tags(model.channel_names);
  Eigen::MatrixXd sum = none.values;
  for (int c : channels) {
    const MultivariateSeries one = replay(model, resid, series, {c}, start);
    sum += one.values - none.values;
    stage.add("replay_" + tags[static_cast<std::size_t>(c - 1)] + ".csv",
              series_to_csv(one));
  }
  MultivariateSeries sum_series = none;
  sum_series.values = sum;
  stage.add("replay_sum.csv", series_to_csv(sum_series));
  stage.commit();
  return pass ? 0 : 3;
}

}  // namespace varspect::cli
