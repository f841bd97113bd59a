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

#ifndef VARSPECT_SIMULATION_HPP
#define VARSPECT_SIMULATION_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "varspect/series.hpp"
#include "varspect/var_model.hpp"

namespace varspect {

/// One activated noise covariance between channels l and m (1-based, m < l).
struct NoisePair {
  int l = 0;
  int m = 0;
  double cov = 0.0;
};

/// A noise covariance built from per-channel base variances plus selected
/// off-diagonal pairs. The assembled matrix must be PSD (min eigenvalue
/// >= -1e-10 * trace) and every pair must satisfy cov^2 <= tau_ll * tau_mm;
/// violating scenarios are rejected at construction, never clipped.
class NoiseScenario {
public:
  NoiseScenario(int k, Eigen::VectorXd base_variances, std::vector<NoisePair> pairs,
                std::string label = "");

  int channels() const { return k_; }
  const std::string& label() const { return label_; }
  const Eigen::VectorXd& base_variances() const { return base_variances_; }
  const std::vector<NoisePair>& pairs() const { return pairs_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  bool is_baseline() const { return pairs_.empty(); }

private:
  int k_;
  Eigen::VectorXd base_variances_;
  std::vector<NoisePair> pairs_;
  std::string label_;
  Eigen::MatrixXd covariance_;
};

/// Reruns the fitted recursion y_n = sum_j A_j y_{n-j} + e_n keeping only the
/// residual channels listed in keep_channels (1-based) and zeroing the rest.
/// Rows before start_row (1-based, default order+1) are copied from the
/// observed series as initial values. Keeping every channel reproduces the
/// series; keeping none gives the pure initial-condition response.
MultivariateSeries replay(const VarModel& model, const ResidualSeries& resid,
                          const MultivariateSeries& series,
                          const std::vector<int>& keep_channels, Eigen::Index start_row = 0);

/// Single-channel counterfactual: only the noise entering `channel` is kept.
MultivariateSeries replay_channel(const VarModel& model, const ResidualSeries& resid,
                                  const MultivariateSeries& series, int channel);

/// Simulates `length` samples of the model driven by Gaussian noise with the
/// scenario covariance. The noise transform is the symmetric eigenvalue
/// square root of the covariance (well defined for semidefinite scenarios);
/// the recursion starts from a zero state and discards a burn-in of
/// 10*order + 100 samples. Identical (seed, scenario, length) give
/// bit-identical output. Unstable models are simulated as requested; callers
/// can check is_stable() first.
MultivariateSeries simulate(const VarModel& model, const NoiseScenario& scenario,
                            Eigen::Index length, std::uint64_t seed);

/// Per-scenario Monte Carlo summary of per-channel sample variances.
struct SimulationSummary {
  std::string label;
  Eigen::VectorXd mean_variance;  // mean over replicates, per channel
  Eigen::VectorXd sd_variance;    // standard deviation over replicates
  int replicates = 0;
  Eigen::Index length = 0;
  std::uint64_t seed = 0;
  bool sd_degenerate = false;     // true when replicates == 1 (sd fixed at 0)
  bool baseline = false;          // scenario had no active pairs
};

/// Runs `replicates` simulations per scenario and summarizes the per-channel
/// sample variances (divisor length-1). Replicate r draws from the stream
/// seeded by mix_seed(seed, r); streams are shared across scenarios, so
/// identical scenarios produce bit-identical summaries and scenario deltas
/// are paired comparisons. If no scenario is pair-free, a baseline built from
/// the first scenario's base variances is prepended for comparison. Replicates
/// may be evaluated on n_threads; results are deterministic regardless.
std::vector<SimulationSummary> monte_carlo(const VarModel& model,
                                           const std::vector<NoiseScenario>& scenarios,
                                           int replicates, Eigen::Index length,
                                           std::uint64_t seed, int n_threads = 1);

/// Stationary covariance of a stable model with the given noise covariance:
/// solves the companion-form discrete Lyapunov equation by doubling and
/// returns the top-left k x k block. Throws NumericalError for unstable
/// models.
Eigen::MatrixXd stationary_covariance(const VarModel& model,
                                      const Eigen::MatrixXd& noise_cov);

}  // namespace varspect

#endif  // VARSPECT_SIMULATION_HPP
