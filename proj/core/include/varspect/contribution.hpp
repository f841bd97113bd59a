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

#ifndef VARSPECT_CONTRIBUTION_HPP
#define VARSPECT_CONTRIBUTION_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "varspect/series.hpp"
#include "varspect/var_model.hpp"

namespace varspect {

/// Term index of the covariance pair (l, m), 1 <= m < l <= k. Pair terms
/// occupy indices k+1 .. k(k+1)/2, following the recursion
/// j_2 = k, j_l = j_{l-1} + l - 2, index = j_l + m.
int pair_index(int l, int m, int k);

/// Bijection between pair terms and channel pairs for a fixed k.
class PairIndexMap {
public:
  explicit PairIndexMap(int k);

  int channels() const { return k_; }
  int term_count() const { return k_ * (k_ + 1) / 2; }

  /// Term index for pair (l, m), 1 <= m < l <= k.
  int index_of(int l, int m) const;
  /// Pair (l, m) for a term index in k+1 .. k(k+1)/2.
  std::pair<int, int> pair_of(int term) const;

private:
  int k_;
  std::vector<std::pair<int, int>> pairs_;  // keyed by term - (k+1)
};

enum class ContributionMode { classical, extended };

/// Per-frequency decomposition of each channel's power spectrum into noise
/// contributions. Classical mode has k terms per target (independent noise
/// sources, diagonal V); extended mode has k(k+1)/2 terms, where the trailing
/// k(k-1)/2 signed pair terms carry the correlated-noise cross products.
///
/// For every target i and frequency f the absolute terms sum to total(f, i),
/// the power spectrum diagonal p_ii(f). Relative terms divide by the total
/// and sum to 1; extended relative entries can be negative or exceed 1.
struct ContributionDecomposition {
  FrequencyGrid grid;
  int k = 0;
  ContributionMode mode = ContributionMode::classical;
  std::vector<std::string> channel_names;
  std::vector<std::string> term_labels;    // "name" or "nameM+nameL" per term
  std::vector<Eigen::MatrixXd> absolute;   // per target: n_freq x n_terms
  std::vector<Eigen::MatrixXd> relative;   // per target: n_freq x n_terms
  Eigen::MatrixXd total;                   // n_freq x k

  bool has_relative() const { return !relative.empty(); }
  int term_count() const { return static_cast<int>(term_labels.size()); }
};

/// Classical absolute power contributions s_jl(f) = |b_jl(f)|^2 tau_ll.
/// Off-diagonal noise covariances are ignored (diagonal-V assumption);
/// the total is the diagonal-V spectrum, the sum of the k terms.
ContributionDecomposition akaike_absolute(const VarModel& model, const FrequencyGrid& grid);

/// Classical decomposition with relative shares r_jl = s_jl / p_jj filled in.
/// Throws NumericalError naming the frequency when some total power is zero.
ContributionDecomposition akaike_relative(const VarModel& model, const FrequencyGrid& grid);

/// Extended absolute power contributions using the full noise covariance.
/// Terms 1..k are |b_ij(f)|^2 tau_jj; the pair term for (l, m) is
/// 2 (alpha_il alpha_im + beta_il beta_im) tau_lm with b = alpha + i beta.
/// The factor 2 absorbs both (l,m) and (m,l) cross products, so the terms
/// sum exactly to the spectrum diagonal p_ii(f).
ContributionDecomposition extended_absolute(const VarModel& model, const FrequencyGrid& grid);

/// Extended decomposition with relative shares r_ij = s_ij / p_ii filled in.
ContributionDecomposition extended_relative(const VarModel& model, const FrequencyGrid& grid);

/// Running prefix sums of the absolute (or relative) terms of one target, in
/// term order, for stacked-area plots. Row = frequency, column t = sum of the
/// first t+1 terms; the last column equals the total (or 1).
Eigen::MatrixXd cumulative_stack(const ContributionDecomposition& dec, int target,
                                 bool use_relative = false);

}  // namespace varspect

#endif  // VARSPECT_CONTRIBUTION_HPP
