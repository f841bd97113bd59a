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

#ifndef VARSPECT_SPECTRAL_HPP
#define VARSPECT_SPECTRAL_HPP

#include <Eigen/Dense>
#include <vector>

#include "varspect/series.hpp"
#include "varspect/var_model.hpp"

namespace varspect {

/// Frequency response A(f) = I - sum_j A_j e^{-2 pi i j f} and its inverse
/// B(f), evaluated at a single frequency (cycles/sample).
struct TransferMatrix {
  double frequency = 0.0;
  Eigen::MatrixXcd a_of_f;
  Eigen::MatrixXcd b_of_f;
};

/// Evaluates A(f) by a Horner recurrence in e^{-2 pi i f}.
Eigen::MatrixXcd ar_fourier(const VarModel& model, double frequency);

/// Evaluates A(f) and B(f) = A(f)^{-1}. Throws NumericalError
/// ("spectrum singular at f") when |det A(f)| falls below
/// 1e-12 * (max |A(f)_ij|)^k, or when the inverse fails its residual check.
TransferMatrix transfer_matrix(const VarModel& model, double frequency);

/// Cross-spectrum matrices P(f) = B(f) V B(f)^* on a frequency grid.
/// Each matrix is Hermitian by construction (symmetrized once after the
/// product) and PSD whenever V is.
struct CrossSpectrum {
  FrequencyGrid grid;
  std::vector<Eigen::MatrixXcd> matrices;
};

CrossSpectrum cross_spectrum(const VarModel& model, const FrequencyGrid& grid);

/// Real diagonal p_cc(f) across the grid for a 1-based channel index.
Eigen::VectorXd spectrum_diagonal(const CrossSpectrum& spectrum, int channel);

}  // namespace varspect

#endif  // VARSPECT_SPECTRAL_HPP
