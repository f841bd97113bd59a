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

#ifndef VARSPECT_VAR_MODEL_HPP
#define VARSPECT_VAR_MODEL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "varspect/series.hpp"

namespace varspect {

/// Vector autoregression y_n = sum_j A_j y_{n-j} + v_n with v_n ~ N(0, V).
/// coeffs holds A_1..A_m in lag order; noise_cov is the symmetric PSD V.
struct VarModel {
  std::vector<std::string> channel_names;
  std::vector<Eigen::MatrixXd> coeffs;  // m matrices, each k x k
  Eigen::MatrixXd noise_cov;            // k x k
  double sampling_interval = 1.0;

  int channels() const { return static_cast<int>(noise_cov.rows()); }
  int order() const { return static_cast<int>(coeffs.size()); }
};

/// Throws ValidationError unless dimensions are consistent, names are unique,
/// noise_cov is symmetric within 1e-12 relative and numerically PSD
/// (min eigenvalue >= -1e-10 * trace).
void validate(const VarModel& model);

/// One-step prediction errors e_n = y_n - sum_j A_j y_{n-j}.
/// Row r of values corresponds to time index start_index + r (1-based);
/// start_index is m + 1.
struct ResidualSeries {
  Eigen::MatrixXd values;  // (N - m) x k
  Eigen::Index start_index = 1;
};

/// Lagged sample autocovariances of a demeaned series:
/// C_h = (1/N) sum_{n=h+1..N} y_n y_{n-h}^T for h = 0..max_lag.
std::vector<Eigen::MatrixXd> sample_autocovariance(const MultivariateSeries& series,
                                                   int max_lag);

/// Least-squares fit of a VAR(order) model. Coefficients minimize the sum of
/// squared one-step prediction errors over rows order+1..N; the noise
/// covariance is the residual covariance with divisor N - order, symmetrized.
/// Requires N >= k*order + k + 1. Throws NumericalError naming the collinear
/// regressor columns when the design matrix is rank deficient.
VarModel fit_least_squares(const MultivariateSeries& series, int order);

/// Fit via the multivariate Yule-Walker equations from autocovariances
/// C_0..C_m (as produced by sample_autocovariance). V = C_0 - sum_j A_j C_j^T,
/// symmetrized. channel_names defaults to x1..xk when empty.
VarModel fit_yule_walker(const std::vector<Eigen::MatrixXd>& autocov, int order,
                         std::vector<std::string> channel_names = {},
                         double sampling_interval = 1.0);

struct OrderSelection {
  int best_order = 0;
  std::vector<double> aic;  // aic[m] for m = 0..max_order
};

/// Order selection by AIC. Every candidate order is fitted by least squares
/// on the common sample rows max_order+1..N so the values are comparable:
///   AIC(m) = (N - max_order) * log det V_m + 2 * (k^2 m + k(k+1)/2).
/// Ties break toward the smaller order.
OrderSelection select_order_aic(const MultivariateSeries& series, int max_order);

/// e_n = y_n - sum_j A_j y_{n-j} for n = m+1..N.
ResidualSeries residuals(const VarModel& model, const MultivariateSeries& series);

struct NoiseCorrelation {
  Eigen::MatrixXd matrix;   // unit diagonal, R_ij = tau_ij / sqrt(tau_ii tau_jj)
  double threshold = 0.0;   // 1/sqrt(N+2); |R_ij| above it is flagged
};

/// Noise correlation matrix of the model with the rule-of-thumb significance
/// threshold 1/sqrt(sample_size + 2) attached. Requires strictly positive
/// noise variances.
NoiseCorrelation noise_correlation(const VarModel& model, Eigen::Index sample_size);

/// Spectral radius of the companion matrix; < 1 means the model is stable.
/// Zero for order-0 models.
double companion_spectral_radius(const VarModel& model);

inline bool is_stable(const VarModel& model) {
  return companion_spectral_radius(model) < 1.0;
}

namespace detail {
/// Index of the smallest element; earlier index wins ties.
std::size_t argmin_first(const std::vector<double>& values);
}  // namespace detail

}  // namespace varspect

#endif  // VARSPECT_VAR_MODEL_HPP
