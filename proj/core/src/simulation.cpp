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

#include "varspect/simulation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "varspect/errors.hpp"
#include "varspect/rng.hpp"

namespace varspect {

namespace {

std::string auto_label(int k, const std::vector<NoisePair>& pairs) {
  std::ostringstream out;
  if (pairs.empty()) {
    out << "(";
    for (int c = 1; c <= k; ++c) out << (c > 1 ? "," : "") << c;
    out << ")";
  } else {
    for (const auto& p : pairs) out << "(" << p.m << "+" << p.l << ")";
  }
  return out.str();
}

// Symmetric PSD square root; tiny negative eigenvalues are treated as zero.
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

NoiseScenario::NoiseScenario(int k, Eigen::VectorXd base_variances,
                             std::vector<NoisePair> pairs, std::string label)
    : k_(k), base_variances_(std::move(base_variances)), pairs_(std::move(pairs)),
      label_(std::move(label)) {
  if (k_ < 1) throw ValidationError("scenario needs at least one channel");
  if (base_variances_.size() != k_)
    throw ValidationError("scenario base variance count does not match channel count");
  for (Eigen::Index i = 0; i < k_; ++i) {
    const double v = base_variances_(i);
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("scenario base variances must be finite and nonnegative");
  }

  covariance_ = Eigen::MatrixXd::Zero(k_, k_);
  covariance_.diagonal() = base_variances_;
  std::set<std::pair<int, int>> seen;
  for (const auto& p : pairs_) {
    if (p.m < 1 || p.l <= p.m || p.l > k_)
      throw ValidationError("scenario pair requires 1 <= m < l <= k");
    if (!seen.insert({p.l, p.m}).second) {
      std::ostringstream msg;
      msg << "duplicate scenario pair (" << p.l << "," << p.m << ")";
      throw ValidationError(msg.str());
    }
    if (!std::isfinite(p.cov))
      throw ValidationError("scenario pair covariance must be finite");
    const double bound = base_variances_(p.l - 1) * base_variances_(p.m - 1);
    if (p.cov * p.cov > bound) {
      std::ostringstream msg;
      msg << "scenario pair (" << p.l << "," << p.m << ") covariance " << p.cov
          << " exceeds sqrt(tau_ll tau_mm)";
      throw ValidationError(msg.str());
    }
    covariance_(p.l - 1, p.m - 1) = p.cov;
    covariance_(p.m - 1, p.l - 1) = p.cov;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10 * covariance_.trace()) {
    std::ostringstream msg;
    msg << "scenario covariance is not positive semidefinite (min eigenvalue "
        << eig.eigenvalues().minCoeff() << ")";
    throw ValidationError(msg.str());
  }

  if (label_.empty()) label_ = auto_label(k_, pairs_);
}

MultivariateSeries replay(const VarModel& model, const ResidualSeries& resid,
                          const MultivariateSeries& series,
                          const std::vector<int>& keep_channels, Eigen::Index start_row) {
  validate(model);
  validate(series);
  const int m = model.order();
  const Eigen::Index n = series.length();
  const Eigen::Index k = series.channels();
  if (k != model.channels())
    throw ValidationError("series channel count does not match model");
  if (resid.values.cols() != k || resid.start_index != m + 1 ||
      resid.values.rows() != n - m)
    throw ValidationError("residuals do not match the model/series pair");
  if (start_row == 0) start_row = m + 1;
  if (start_row < m + 1 || start_row > n)
    throw ValidationError("replay start must lie in order+1 .. N");
  for (int c : keep_channels)
    if (c < 1 || c > k) throw ValidationError("replay channel out of range 1..k");

  Eigen::VectorXd mask = Eigen::VectorXd::Zero(k);
  for (int c : keep_channels) mask(c - 1) = 1.0;

  MultivariateSeries out;
  out.names = series.names;
  out.sampling_interval = series.sampling_interval;
  out.values.resize(n, k);
  out.values.topRows(start_row - 1) = series.values.topRows(start_row - 1);
  for (Eigen::Index t = start_row - 1; t < n; ++t) {
    Eigen::RowVectorXd y =
        resid.values.row(t - m).cwiseProduct(mask.transpose());
    for (int j = 1; j <= m; ++j)
      y += out.values.row(t - j) * model.coeffs[static_cast<std::size_t>(j - 1)].transpose();
    out.values.row(t) = y;
  }
  return out;
}

MultivariateSeries replay_channel(const VarModel& model, const ResidualSeries& resid,
                                  const MultivariateSeries& series, int channel) {
  return replay(model, resid, series, {channel});
}

MultivariateSeries simulate(const VarModel& model, const NoiseScenario& scenario,
                            Eigen::Index length, std::uint64_t seed) {
  validate(model);
  if (scenario.channels() != model.channels())
    throw ValidationError("scenario channel count does not match model");
  if (length < 1) throw ValidationError("simulation length must be positive");

  const int m = model.order();
  const Eigen::Index k = model.channels();
  const Eigen::Index burn_in = 10 * m + 100;
  const Eigen::Index steps = burn_in + length;
  const Eigen::MatrixXd transform = symmetric_sqrt(scenario.covariance());

  GaussianSampler normal(seed);
  Eigen::VectorXd z(k);
  Eigen::MatrixXd history = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(m, 1), k);

  MultivariateSeries out;
  out.names = model.channel_names;
  out.sampling_interval = model.sampling_interval;
  out.values.resize(length, k);

  for (Eigen::Index t = 0; t < steps; ++t) {
    for (Eigen::Index c = 0; c < k; ++c) z(c) = normal.next();
    Eigen::VectorXd y = transform * z;
    for (int j = 1; j <= m; ++j)
      y += model.coeffs[static_cast<std::size_t>(j - 1)] *
           history.row((t - j + m * steps) % m).transpose();
    if (m > 0) history.row(t % m) = y.transpose();
    if (t >= burn_in) out.values.row(t - burn_in) = y.transpose();
  }
  return out;
}

std::vector<SimulationSummary> monte_carlo(const VarModel& model,
                                           const std::vector<NoiseScenario>& scenarios,
                                           int replicates, Eigen::Index length,
                                           std::uint64_t seed, int n_threads) {
  validate(model);
  if (scenarios.empty()) throw ValidationError("no scenarios given");
  if (replicates < 1) throw ValidationError("replicates must be positive");
  if (length < 2) throw ValidationError("length must be at least 2");
  if (n_threads < 1) throw ValidationError("thread count must be positive");
  for (const auto& s : scenarios)
    if (s.channels() != model.channels())
      throw ValidationError("scenario channel count does not match model");

  // Ensure a pair-free baseline is part of the run.
  std::vector<const NoiseScenario*> run_list;
  NoiseScenario synthesized_baseline(1, Eigen::VectorXd::Ones(1), {});
  const bool have_baseline =
      std::any_of(scenarios.begin(), scenarios.end(),
                  [](const NoiseScenario& s) { return s.is_baseline(); });
  if (!have_baseline) {
    synthesized_baseline =
        NoiseScenario(scenarios.front().channels(), scenarios.front().base_variances(), {});
    run_list.push_back(&synthesized_baseline);
  }
  for (const auto& s : scenarios) run_list.push_back(&s);

  const Eigen::Index k = model.channels();
  std::vector<SimulationSummary> summaries;
  summaries.reserve(run_list.size());

  for (const NoiseScenario* scenario : run_list) {
    // Per-replicate slots keep the reduction order fixed under any threading.
    Eigen::MatrixXd variances(replicates, k);
    auto worker = [&](int begin, int end) {
      for (int r = begin; r < end; ++r) {
        const MultivariateSeries sim =
            simulate(model, *scenario, length, mix_seed(seed, static_cast<std::uint64_t>(r)));
        const Eigen::RowVectorXd mean = sim.values.colwise().mean();
        variances.row(r) = (sim.values.rowwise() - mean).colwise().squaredNorm() /
                           static_cast<double>(length - 1);
      }
    };
    if (n_threads == 1 || replicates == 1) {
      worker(0, replicates);
    } else {
      const int chunks = std::min(n_threads, replicates);
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(chunks));
      const int per = (replicates + chunks - 1) / chunks;
      for (int c = 0; c < chunks; ++c)
        pool.emplace_back(worker, c * per, std::min(replicates, (c + 1) * per));
      for (auto& t : pool) t.join();
    }

    SimulationSummary summary;
    summary.label = scenario->label();
    summary.replicates = replicates;
    summary.length = length;
    summary.seed = seed;
    summary.baseline = scenario->is_baseline();
    summary.mean_variance = variances.colwise().mean().transpose();
    if (replicates == 1) {
      summary.sd_variance = Eigen::VectorXd::Zero(k);
      summary.sd_degenerate = true;
    } else {
      summary.sd_variance =
          ((variances.rowwise() - summary.mean_variance.transpose()).colwise().squaredNorm() /
           static_cast<double>(replicates - 1))
              .cwiseSqrt()
              .transpose();
    }
    summaries.push_back(std::move(summary));
  }
  return summaries;
}

Eigen::MatrixXd stationary_covariance(const VarModel& model,
                                      const Eigen::MatrixXd& noise_cov) {
  validate(model);
  const Eigen::Index k = model.channels();
  if (noise_cov.rows() != k || noise_cov.cols() != k)
    throw ValidationError("noise covariance dimensions do not match model");
  const int m = model.order();
  if (m == 0) return ((noise_cov + noise_cov.transpose()) / 2.0).eval();

  const double radius = companion_spectral_radius(model);
  if (radius >= 1.0) {
    std::ostringstream msg;
    msg << "model is not stable (companion spectral radius " << radius << ")";
    throw NumericalError(msg.str());
  }

  const Eigen::Index dim = static_cast<Eigen::Index>(m) * k;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j < m; ++j)
    companion.block(0, static_cast<Eigen::Index>(j) * k, k, k) =
        model.coeffs[static_cast<std::size_t>(j)];
  if (m > 1)
    companion.block(k, 0, dim - k, dim - k) = Eigen::MatrixXd::Identity(dim - k, dim - k);

  // Doubling iteration for S = sum_i F^i Q (F^i)^T.
  Eigen::MatrixXd state_cov = Eigen::MatrixXd::Zero(dim, dim);
  state_cov.topLeftCorner(k, k) = (noise_cov + noise_cov.transpose()) / 2.0;
  Eigen::MatrixXd power = companion;
  for (int iter = 0; iter < 64; ++iter) {
    state_cov = (state_cov + power * state_cov * power.transpose()).eval();
    if (power.cwiseAbs().maxCoeff() < 1e-14) break;
    power = (power * power).eval();
  }
  Eigen::MatrixXd out = state_cov.topLeftCorner(k, k);
  return ((out + out.transpose()) / 2.0).eval();
}

}  // namespace varspect
