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

#include "varspect/var_model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "varspect/errors.hpp"

namespace varspect {

namespace {

std::vector<std::string> default_names(int k) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(k));
  for (int c = 1; c <= k; ++c) names.push_back("x" + std::to_string(c));
  return names;
}

// Least-squares VAR fit on rows first_row..N (1-based, first_row > order).
// Noise covariance divisor is the number of regression rows.
VarModel fit_ls_rows(const MultivariateSeries& series, int order, Eigen::Index first_row) {
  const Eigen::Index n = series.length();
  const Eigen::Index k = series.channels();
  const Eigen::Index rows = n - first_row + 1;
  const Eigen::Index p = static_cast<Eigen::Index>(order) * k;

  VarModel model;
  model.channel_names = series.names;
  model.sampling_interval = series.sampling_interval;
  model.coeffs.resize(static_cast<std::size_t>(order));

  if (order == 0) {
    const auto y = series.values.bottomRows(rows);
    model.noise_cov = (y.transpose() * y) / static_cast<double>(rows);
    model.noise_cov = ((model.noise_cov + model.noise_cov.transpose()) / 2.0).eval();
    return model;
  }

  // Design matrix: row n holds [y_{n-1}, y_{n-2}, ..., y_{n-order}].
  Eigen::MatrixXd design(rows, p);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index t = first_row - 1 + r;  // 0-based row being predicted
    for (int j = 1; j <= order; ++j)
      design.block(r, static_cast<Eigen::Index>(j - 1) * k, 1, k) = series.values.row(t - j);
  }
  const Eigen::MatrixXd response = series.values.bottomRows(rows);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    std::ostringstream msg;
    msg << "rank-deficient regression (rank " << qr.rank() << " of " << p
        << "); collinear regressor columns:";
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index i = qr.rank(); i < p; ++i) {
      const Eigen::Index col = perm(i);
      msg << " (channel " << (col % k) + 1 << ", lag " << (col / k) + 1 << ")";
    }
    throw NumericalError(msg.str());
  }

  const Eigen::MatrixXd theta = qr.solve(response);  // p x k
  for (int j = 0; j < order; ++j)
    model.coeffs[static_cast<std::size_t>(j)] =
        theta.middleRows(static_cast<Eigen::Index>(j) * k, k).transpose();

  const Eigen::MatrixXd resid = response - design * theta;
  model.noise_cov = (resid.transpose() * resid) / static_cast<double>(rows);
  model.noise_cov = ((model.noise_cov + model.noise_cov.transpose()) / 2.0).eval();
  return model;
}

}  // namespace

void validate(const VarModel& model) {
  const Eigen::Index k = model.noise_cov.rows();
  if (k < 1 || model.noise_cov.cols() != k)
    throw ValidationError("noise covariance must be a square k x k matrix, k >= 1");
  if (!model.noise_cov.allFinite())
    throw ValidationError("noise covariance contains non-finite values");
  for (const auto& a : model.coeffs) {
    if (a.rows() != k || a.cols() != k)
      throw ValidationError("coefficient matrix dimensions do not match channel count");
    if (!a.allFinite()) throw ValidationError("coefficients contain non-finite values");
  }
  if (static_cast<Eigen::Index>(model.channel_names.size()) != k)
    throw ValidationError("channel name count does not match channel count");
  std::unordered_set<std::string> seen;
  for (const auto& name : model.channel_names) {
    if (name.empty()) throw ValidationError("channel names must be non-empty");
    if (!seen.insert(name).second)
      throw ValidationError("duplicate channel name '" + name + "'");
  }
  if (!(model.sampling_interval > 0.0))
    throw ValidationError("sampling interval must be positive");

  const double scale = model.noise_cov.cwiseAbs().maxCoeff();
  const double asym = (model.noise_cov - model.noise_cov.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0.0 && asym > 1e-12 * scale)
    throw ValidationError("noise covariance is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.noise_cov,
                                                     Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10 * std::abs(model.noise_cov.trace()))
    throw ValidationError("noise covariance is not positive semidefinite");
}

std::vector<Eigen::MatrixXd> sample_autocovariance(const MultivariateSeries& series,
                                                   int max_lag) {
  validate(series);
  if (max_lag < 0) throw ValidationError("max_lag must be nonnegative");
  const Eigen::Index n = series.length();
  if (static_cast<Eigen::Index>(max_lag) >= n)
    throw ValidationError("max_lag must be smaller than the series length");

  std::vector<Eigen::MatrixXd> cov(static_cast<std::size_t>(max_lag) + 1);
  for (int h = 0; h <= max_lag; ++h) {
    const Eigen::Index rows = n - h;
    const auto lead = series.values.bottomRows(rows);   // y_{h+1}..y_N
    const auto lag = series.values.topRows(rows);       // y_1..y_{N-h}
    Eigen::MatrixXd c = (lead.transpose() * lag) / static_cast<double>(n);
    if (h == 0) c = ((c + c.transpose()) / 2.0).eval();
    cov[static_cast<std::size_t>(h)] = std::move(c);
  }
  return cov;
}

VarModel fit_least_squares(const MultivariateSeries& series, int order) {
  validate(series);
  if (order < 0) throw ValidationError("order must be nonnegative");
  const Eigen::Index n = series.length();
  const Eigen::Index k = series.channels();
  if (order > 0 && n < static_cast<Eigen::Index>(order) * k + k + 1)
    throw ValidationError("insufficient data: need at least k*order + k + 1 rows");
  if (order > 0 && n - order < static_cast<Eigen::Index>(order) * k + 1)
    throw ValidationError("insufficient data: fewer regression rows than parameters");
  return fit_ls_rows(series, order, static_cast<Eigen::Index>(order) + 1);
}

VarModel fit_yule_walker(const std::vector<Eigen::MatrixXd>& autocov, int order,
                         std::vector<std::string> channel_names,
                         double sampling_interval) {
  if (order < 0) throw ValidationError("order must be nonnegative");
  if (autocov.size() < static_cast<std::size_t>(order) + 1)
    throw ValidationError("need autocovariances up to the requested order");
  const Eigen::Index k = autocov[0].rows();
  if (k < 1 || autocov[0].cols() != k)
    throw ValidationError("autocovariance matrices must be square");
  for (const auto& c : autocov)
    if (c.rows() != k || c.cols() != k)
      throw ValidationError("autocovariance matrices must share dimensions");

  VarModel model;
  model.channel_names = channel_names.empty() ? default_names(static_cast<int>(k))
                                              : std::move(channel_names);
  model.sampling_interval = sampling_interval;
  model.coeffs.resize(static_cast<std::size_t>(order));

  auto cov_at = [&](int h) -> Eigen::MatrixXd {
    // C_{-h} = C_h^T
    if (h >= 0) return autocov[static_cast<std::size_t>(h)];
    return autocov[static_cast<std::size_t>(-h)].transpose();
  };

  if (order == 0) {
    model.noise_cov = ((autocov[0] + autocov[0].transpose()) / 2.0).eval();
    validate(model);
    return model;
  }

  // Normal equations C_i = sum_j A_j C_{i-j}, i = 1..m, as one block system:
  // [A_1 ... A_m] * G = [C_1 ... C_m] with G_{ji} = C_{i-j}.
  const Eigen::Index p = static_cast<Eigen::Index>(order) * k;
  Eigen::MatrixXd gram(p, p);
  Eigen::MatrixXd rhs(k, p);
  for (int i = 1; i <= order; ++i) {
    rhs.middleCols(static_cast<Eigen::Index>(i - 1) * k, k) = cov_at(i);
    for (int j = 1; j <= order; ++j)
      gram.block(static_cast<Eigen::Index>(j - 1) * k,
                 static_cast<Eigen::Index>(i - 1) * k, k, k) = cov_at(i - j);
  }

  // Solve G^T X = rhs^T, so X^T = [A_1 ... A_m].
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram.transpose());
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw NumericalError("singular block-Toeplitz system in Yule-Walker equations");
  const Eigen::MatrixXd coeff_row = lu.solve(rhs.transpose()).transpose();  // k x p

  Eigen::MatrixXd v = autocov[0];
  for (int j = 1; j <= order; ++j) {
    const Eigen::MatrixXd a = coeff_row.middleCols(static_cast<Eigen::Index>(j - 1) * k, k);
    model.coeffs[static_cast<std::size_t>(j - 1)] = a;
    v -= a * cov_at(j).transpose();
  }
  model.noise_cov = ((v + v.transpose()) / 2.0).eval();
  validate(model);
  return model;
}

namespace detail {
std::size_t argmin_first(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best]) best = i;
  return best;
}
}  // namespace detail

OrderSelection select_order_aic(const MultivariateSeries& series, int max_order) {
  validate(series);
  if (max_order < 0) throw ValidationError("max_order must be nonnegative");
  const Eigen::Index n = series.length();
  const Eigen::Index k = series.channels();
  const Eigen::Index n_eff = n - max_order;
  if (max_order > 0 && n_eff < static_cast<Eigen::Index>(max_order) * k + 1)
    throw ValidationError("insufficient data to fit the maximum candidate order");
  if (n_eff < 1) throw ValidationError("insufficient data for order selection");

  OrderSelection sel;
  sel.aic.reserve(static_cast<std::size_t>(max_order) + 1);
  for (int m = 0; m <= max_order; ++m) {
    const VarModel candidate =
        fit_ls_rows(series, m, static_cast<Eigen::Index>(max_order) + 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(candidate.noise_cov,
                                                       Eigen::EigenvaluesOnly);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double lambda = eig.eigenvalues()(i);
      if (lambda <= 0.0) {
        log_det = -std::numeric_limits<double>::infinity();
        break;
      }
      log_det += std::log(lambda);
    }
    const double params = static_cast<double>(k) * k * m +
                          static_cast<double>(k) * (k + 1) / 2.0;
    sel.aic.push_back(static_cast<double>(n_eff) * log_det + 2.0 * params);
  }
  sel.best_order = static_cast<int>(detail::argmin_first(sel.aic));
  return sel;
}

ResidualSeries residuals(const VarModel& model, const MultivariateSeries& series) {
  validate(model);
  validate(series);
  const int m = model.order();
  const Eigen::Index n = series.length();
  const Eigen::Index k = series.channels();
  if (k != model.channels())
    throw ValidationError("series channel count does not match model");
  if (n <= m) throw ValidationError("series shorter than model order");

  ResidualSeries res;
  res.start_index = m + 1;
  res.values.resize(n - m, k);
  for (Eigen::Index t = m; t < n; ++t) {
    Eigen::RowVectorXd e = series.values.row(t);
    for (int j = 1; j <= m; ++j)
      e -= series.values.row(t - j) * model.coeffs[static_cast<std::size_t>(j - 1)].transpose();
    res.values.row(t - m) = e;
  }
  return res;
}

NoiseCorrelation noise_correlation(const VarModel& model, Eigen::Index sample_size) {
  validate(model);
  if (sample_size < 0) throw ValidationError("sample size must be nonnegative");
  const Eigen::Index k = model.noise_cov.rows();
  for (Eigen::Index i = 0; i < k; ++i)
    if (!(model.noise_cov(i, i) > 0.0))
      throw NumericalError("noise variance of channel " + std::to_string(i + 1) +
                           " is not strictly positive");

  NoiseCorrelation result;
  result.matrix.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      result.matrix(i, j) =
          i == j ? 1.0
                 : model.noise_cov(i, j) /
                       std::sqrt(model.noise_cov(i, i) * model.noise_cov(j, j));
  result.threshold = 1.0 / std::sqrt(static_cast<double>(sample_size) + 2.0);
  return result;
}

double companion_spectral_radius(const VarModel& model) {
  validate(model);
  const int m = model.order();
  if (m == 0) return 0.0;
  const Eigen::Index k = model.noise_cov.rows();
  const Eigen::Index dim = static_cast<Eigen::Index>(m) * k;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j < m; ++j)
    companion.block(0, static_cast<Eigen::Index>(j) * k, k, k) =
        model.coeffs[static_cast<std::size_t>(j)];
  if (m > 1)
    companion.block(k, 0, dim - k, dim - k) =
        Eigen::MatrixXd::Identity(dim - k, dim - k);
  Eigen::EigenSolver<Eigen::MatrixXd> eig(companion, /*computeEigenvectors=*/false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace varspect
