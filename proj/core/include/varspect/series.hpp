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

#ifndef VARSPECT_SERIES_HPP
#define VARSPECT_SERIES_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace varspect {

/// A k-channel time series. Rows are time steps, columns are channels.
/// Invariants (see validate): N >= 1, k >= 1, all values finite, channel
/// names unique with one name per column, sampling interval positive.
struct MultivariateSeries {
  std::vector<std::string> names;
  Eigen::MatrixXd values;          // N x k
  double sampling_interval = 1.0;  // time units per sample

  Eigen::Index length() const { return values.rows(); }
  Eigen::Index channels() const { return values.cols(); }
};

/// Throws ValidationError if any series invariant is violated.
void validate(const MultivariateSeries& series);

/// Returns a copy with zero-mean columns. Mean removal is iterated until the
/// columns are an exact fixed point, so demean(demean(s)) == demean(s)
/// bit for bit.
MultivariateSeries demean(const MultivariateSeries& series);

/// Ascending frequencies in cycles per sample, all within [0, 1/2].
/// Only the nonnegative half axis is materialized; the spectrum is
/// conjugate-symmetric in f.
struct FrequencyGrid {
  std::vector<double> points;

  std::size_t size() const { return points.size(); }
  double operator[](std::size_t i) const { return points[i]; }
};

/// Throws ValidationError unless points are strictly increasing and inside
/// [0, 1/2].
void validate(const FrequencyGrid& grid);

/// Uniform grid of n_points frequencies from 0 to f_max inclusive.
/// Requires n_points >= 2 and f_max in (0, 1/2].
FrequencyGrid make_grid(int n_points, double f_max);

inline constexpr int kDefaultGridPoints = 201;
inline constexpr double kDefaultFMax = 0.5;

}  // namespace varspect

#endif  // VARSPECT_SERIES_HPP
