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

#include "varspect/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "varspect/errors.hpp"

namespace varspect {

Eigen::MatrixXcd ar_fourier(const VarModel& model, double frequency) {
  validate(model);
  const Eigen::Index k = model.noise_cov.rows();
  const int m = model.order();
  const std::complex<double> z =
      std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * frequency));

  // Horner in z: sum_j A_j z^j = z (A_1 + z (A_2 + ... + z A_m)).
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(k, k);
  for (int j = m; j >= 1; --j) {
    sum *= z;
    sum += model.coeffs[static_cast<std::size_t>(j - 1)].cast<std::complex<double>>();
  }
  sum *= z;
  return Eigen::MatrixXcd::Identity(k, k) - sum;
}

TransferMatrix transfer_matrix(const VarModel& model, double frequency) {
  TransferMatrix tm;
  tm.frequency = frequency;
  tm.a_of_f = ar_fourier(model, frequency);
  const Eigen::Index k = tm.a_of_f.rows();

  const double scale = tm.a_of_f.cwiseAbs().maxCoeff();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(tm.a_of_f);
  const double abs_det = std::abs(lu.determinant());
  if (abs_det <= 1e-12 * std::pow(scale, static_cast<double>(k))) {
    std::ostringstream msg;
    msg << "spectrum singular at f = " << frequency;
    throw NumericalError(msg.str());
  }
  tm.b_of_f = lu.solve(Eigen::MatrixXcd::Identity(k, k));

  const double residual =
      (tm.a_of_f * tm.b_of_f - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
  const double b_scale = tm.b_of_f.cwiseAbs().maxCoeff();
  if (residual > 1e-8 * std::max(1.0, b_scale)) {
    std::ostringstream msg;
    msg << "spectrum singular at f = " << frequency << " (inverse residual " << residual
        << ")";
    throw NumericalError(msg.str());
  }
  return tm;
}

CrossSpectrum cross_spectrum(const VarModel& model, const FrequencyGrid& grid) {
  validate(grid);
  CrossSpectrum result;
  result.grid = grid;
  result.matrices.reserve(grid.size());
  const Eigen::MatrixXcd v = model.noise_cov.cast<std::complex<double>>();
  for (double f : grid.points) {
    const TransferMatrix tm = transfer_matrix(model, f);
    Eigen::MatrixXcd p = tm.b_of_f * v * tm.b_of_f.adjoint();
    p = ((p + p.adjoint()) / 2.0).eval();
    result.matrices.push_back(std::move(p));
  }
  return result;
}

Eigen::VectorXd spectrum_diagonal(const CrossSpectrum& spectrum, int channel) {
  if (spectrum.matrices.empty()) throw ValidationError("cross spectrum is empty");
  const Eigen::Index k = spectrum.matrices.front().rows();
  if (channel < 1 || channel > k)
    throw ValidationError("channel index out of range 1..k");
  Eigen::VectorXd diag(static_cast<Eigen::Index>(spectrum.matrices.size()));
  for (std::size_t i = 0; i < spectrum.matrices.size(); ++i)
    diag(static_cast<Eigen::Index>(i)) = spectrum.matrices[i](channel - 1, channel - 1).real();
  return diag;
}

}  // namespace varspect
