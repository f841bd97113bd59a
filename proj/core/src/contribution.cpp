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

#include "varspect/contribution.hpp"

#include <sstream>

#include "varspect/errors.hpp"
#include "varspect/spectral.hpp"

namespace varspect {

int pair_index(int l, int m, int k) {
  if (k < 2) throw ValidationError("pair terms require k >= 2");
  if (m < 1 || l <= m || l > k)
    throw ValidationError("pair index requires 1 <= m < l <= k");
  int jl = k;  // j_2
  for (int i = 3; i <= l; ++i) jl += i - 2;
  return jl + m;
}

PairIndexMap::PairIndexMap(int k) : k_(k) {
  if (k < 1) throw ValidationError("channel count must be positive");
  pairs_.resize(static_cast<std::size_t>(k * (k - 1) / 2));
  for (int l = 2; l <= k; ++l)
    for (int m = 1; m < l; ++m)
      pairs_[static_cast<std::size_t>(pair_index(l, m, k) - k - 1)] = {l, m};
}

int PairIndexMap::index_of(int l, int m) const { return pair_index(l, m, k_); }

std::pair<int, int> PairIndexMap::pair_of(int term) const {
  if (term <= k_ || term > term_count())
    throw ValidationError("term index outside pair range k+1 .. k(k+1)/2");
  return pairs_[static_cast<std::size_t>(term - k_ - 1)];
}

namespace {

std::vector<std::string> make_labels(const std::vector<std::string>& names,
                                     ContributionMode mode) {
  const int k = static_cast<int>(names.size());
  std::vector<std::string> labels = names;
  if (mode == ContributionMode::extended && k >= 2) {
    PairIndexMap map(k);
    for (int term = k + 1; term <= map.term_count(); ++term) {
      const auto [l, m] = map.pair_of(term);
      // Smaller channel first, "GDP+PC" style.
      labels.push_back(names[static_cast<std::size_t>(m - 1)] + "+" +
                       names[static_cast<std::size_t>(l - 1)]);
    }
  }
  return labels;
}

ContributionDecomposition decompose_absolute(const VarModel& model,
                                             const FrequencyGrid& grid,
                                             ContributionMode mode) {
  validate(model);
  validate(grid);
  const int k = model.channels();
  const Eigen::Index n_freq = static_cast<Eigen::Index>(grid.size());
  const int n_terms = mode == ContributionMode::classical ? k : k * (k + 1) / 2;

  ContributionDecomposition dec;
  dec.grid = grid;
  dec.k = k;
  dec.mode = mode;
  dec.channel_names = model.channel_names;
  dec.term_labels = make_labels(model.channel_names, mode);
  dec.total.resize(n_freq, k);
  dec.absolute.assign(static_cast<std::size_t>(k), Eigen::MatrixXd(n_freq, n_terms));

  const Eigen::MatrixXd& v = model.noise_cov;
  for (Eigen::Index fi = 0; fi < n_freq; ++fi) {
    const TransferMatrix tm = transfer_matrix(model, grid.points[static_cast<std::size_t>(fi)]);
    const Eigen::MatrixXcd& b = tm.b_of_f;
    for (int i = 0; i < k; ++i) {
      auto terms = dec.absolute[static_cast<std::size_t>(i)].row(fi);
      double total = 0.0;
      for (int j = 0; j < k; ++j) {
        const double s = std::norm(b(i, j)) * v(j, j);
        terms(j) = s;
        total += s;
      }
      if (mode == ContributionMode::extended) {
        for (int l = 2; l <= k; ++l) {
          for (int m = 1; m < l; ++m) {
            const std::complex<double> bl = b(i, l - 1);
            const std::complex<double> bm = b(i, m - 1);
            // + 0.0 turns the -0.0 arising from tau_lm == 0 into a plain 0.
            const double s = 2.0 * (bl.real() * bm.real() + bl.imag() * bm.imag()) *
                                 v(l - 1, m - 1) +
                             0.0;
            terms(pair_index(l, m, k) - 1) = s;
            total += s;
          }
        }
      }
      dec.total(fi, i) = total;
    }
  }
  return dec;
}

void fill_relative(ContributionDecomposition& dec) {
  const int k = dec.k;
  dec.relative.assign(static_cast<std::size_t>(k),
                      Eigen::MatrixXd(dec.total.rows(), dec.term_count()));
  for (int i = 0; i < k; ++i) {
    for (Eigen::Index fi = 0; fi < dec.total.rows(); ++fi) {
      const double total = dec.total(fi, i);
      if (!(total > 0.0)) {
        std::ostringstream msg;
        msg << "zero total power for channel " << i + 1 << " at f = "
            << dec.grid.points[static_cast<std::size_t>(fi)];
        throw NumericalError(msg.str());
      }
      dec.relative[static_cast<std::size_t>(i)].row(fi) =
          dec.absolute[static_cast<std::size_t>(i)].row(fi) / total;
    }
  }
}

}  // namespace

ContributionDecomposition akaike_absolute(const VarModel& model, const FrequencyGrid& grid) {
  return decompose_absolute(model, grid, ContributionMode::classical);
}

ContributionDecomposition akaike_relative(const VarModel& model, const FrequencyGrid& grid) {
  ContributionDecomposition dec = decompose_absolute(model, grid, ContributionMode::classical);
  fill_relative(dec);
  return dec;
}

ContributionDecomposition extended_absolute(const VarModel& model, const FrequencyGrid& grid) {
  return decompose_absolute(model, grid, ContributionMode::extended);
}

ContributionDecomposition extended_relative(const VarModel& model, const FrequencyGrid& grid) {
  ContributionDecomposition dec = decompose_absolute(model, grid, ContributionMode::extended);
  fill_relative(dec);
  return dec;
}

Eigen::MatrixXd cumulative_stack(const ContributionDecomposition& dec, int target,
                                 bool use_relative) {
  if (target < 1 || target > dec.k) throw ValidationError("target channel out of range");
  if (use_relative && !dec.has_relative())
    throw ValidationError("decomposition has no relative shares");
  const Eigen::MatrixXd& terms = use_relative
                                     ? dec.relative[static_cast<std::size_t>(target - 1)]
                                     : dec.absolute[static_cast<std::size_t>(target - 1)];
  Eigen::MatrixXd stack(terms.rows(), terms.cols());
  for (Eigen::Index r = 0; r < terms.rows(); ++r) {
    double running = 0.0;
    for (Eigen::Index c = 0; c < terms.cols(); ++c) {
      running += terms(r, c);
      stack(r, c) = running;
    }
  }
  return stack;
}

}  // namespace varspect
