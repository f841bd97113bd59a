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

#ifndef VARSPECT_TESTS_SUPPORT_TEST_MODELS_HPP
#define VARSPECT_TESTS_SUPPORT_TEST_MODELS_HPP

#include <cassert>
#include <cstdint>

#include "varspect/rng.hpp"
#include "varspect/simulation.hpp"
#include "varspect/var_model.hpp"

namespace varspect::testing {

inline Eigen::MatrixXd random_matrix(int rows, int cols, GaussianSampler& normal) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = normal.next();
  return m;
}

/// Random VAR(m) model with the companion spectral radius scaled to exactly
/// `radius`. Scaling A_j by lambda^j scales every companion eigenvalue by
/// lambda. The noise covariance is a random PD matrix (or its diagonal).
inline VarModel make_stable_model(int k, int m, std::uint64_t seed, double radius = 0.6,
                                  bool diagonal_noise = false) {
  GaussianSampler normal(mix_seed(0xABCD1234u, seed));

  VarModel model;
  for (int c = 1; c <= k; ++c) model.channel_names.push_back("x" + std::to_string(c));
  const Eigen::MatrixXd b = random_matrix(k, k, normal);
  model.noise_cov = b * b.transpose() / static_cast<double>(k) +
                    0.1 * Eigen::MatrixXd::Identity(k, k);
  if (diagonal_noise)
    model.noise_cov = model.noise_cov.diagonal().asDiagonal().toDenseMatrix();

  model.coeffs.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    model.coeffs.push_back(random_matrix(k, k, normal) * 0.5);
  if (m > 0) {
    const double rho = companion_spectral_radius(model);
    assert(rho > 0.0);
    const double lambda = radius / rho;
    double factor = 1.0;
    for (int j = 0; j < m; ++j) {
      factor *= lambda;
      model.coeffs[static_cast<std::size_t>(j)] *= factor;
    }
  }
  return model;
}

/// Scenario whose assembled covariance equals an arbitrary PSD matrix:
/// the diagonal becomes the base variances and every off-diagonal entry is
/// an activated pair.
inline NoiseScenario scenario_from_covariance(const Eigen::MatrixXd& cov,
                                              std::string label = "") {
  const int k = static_cast<int>(cov.rows());
  std::vector<NoisePair> pairs;
  for (int l = 2; l <= k; ++l)
    for (int m = 1; m < l; ++m)
      if (cov(l - 1, m - 1) != 0.0) pairs.push_back({l, m, cov(l - 1, m - 1)});
  return NoiseScenario(k, cov.diagonal(), std::move(pairs), std::move(label));
}

/// Simulates `length` samples of the model under its own noise covariance.
inline MultivariateSeries simulate_model(const VarModel& model, Eigen::Index length,
                                         std::uint64_t seed) {
  return simulate(model, scenario_from_covariance(model.noise_cov), length, seed);
}

}  // namespace varspect::testing

#endif  // VARSPECT_TESTS_SUPPORT_TEST_MODELS_HPP
