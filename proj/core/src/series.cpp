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

#include "varspect/series.hpp"

#include <cmath>
#include <unordered_set>

#include "varspect/errors.hpp"

namespace varspect {

void validate(const MultivariateSeries& series) {
  if (series.values.rows() < 1) throw ValidationError("series has no rows");
  if (series.values.cols() < 1) throw ValidationError("series has no channels");
  if (!series.values.allFinite()) throw ValidationError("series contains non-finite values");
  if (!(series.sampling_interval > 0.0))
    throw ValidationError("sampling interval must be positive");
  if (static_cast<Eigen::Index>(series.names.size()) != series.values.cols())
    throw ValidationError("channel name count does not match column count");
  std::unordered_set<std::string> seen;
  for (const auto& name : series.names) {
    if (name.empty()) throw ValidationError("channel names must be non-empty");
    if (!seen.insert(name).second)
      throw ValidationError("duplicate channel name '" + name + "'");
  }
}

MultivariateSeries demean(const MultivariateSeries& series) {
  validate(series);
  MultivariateSeries out = series;
  const Eigen::Index n = out.values.rows();
  for (Eigen::Index c = 0; c < out.values.cols(); ++c) {
    // Work on an owned vector so every sum is evaluated with the same
    // alignment; reductions over differently aligned views can differ in the
    // last bit, which would unsettle the termination test below.
    Eigen::VectorXd work = out.values.col(c);
    // Subtract the mean while |column sum| strictly decreases. The stopping
    // predicate sees the same state on a second call and stops before
    // touching anything, so the result is a bit-exact fixed point of demean.
    while (true) {
      const double sum = work.sum();
      if (sum == 0.0) break;
      Eigen::VectorXd shifted = work.array() - sum / static_cast<double>(n);
      if (!(std::abs(shifted.sum()) < std::abs(sum))) break;
      work.swap(shifted);
    }
    out.values.col(c) = work;
  }
  return out;
}

void validate(const FrequencyGrid& grid) {
  if (grid.points.empty()) throw ValidationError("frequency grid is empty");
  double prev = -1.0;
  for (double f : grid.points) {
    if (!std::isfinite(f) || f < 0.0 || f > 0.5)
      throw ValidationError("grid frequency outside [0, 0.5]");
    if (f <= prev) throw ValidationError("grid frequencies must be strictly increasing");
    prev = f;
  }
}

FrequencyGrid make_grid(int n_points, double f_max) {
  if (n_points < 2) throw ValidationError("grid needs at least 2 points");
  if (!(f_max > 0.0) || f_max > 0.5)
    throw ValidationError("f_max must lie in (0, 0.5]");
  FrequencyGrid grid;
  grid.points.resize(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i)
    grid.points[static_cast<std::size_t>(i)] =
        f_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
  return grid;
}

}  // namespace varspect
