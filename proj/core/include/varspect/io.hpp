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

#ifndef VARSPECT_IO_HPP
#define VARSPECT_IO_HPP

#include <string>
#include <vector>

#include "varspect/contribution.hpp"
#include "varspect/series.hpp"
#include "varspect/simulation.hpp"
#include "varspect/spectral.hpp"
#include "varspect/var_model.hpp"

namespace varspect {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Parses a comma-separated series: one row per time step, one column per
/// channel, plain decimal literals, optional single header line with channel
/// names. Without a header, channels are named x1..xk. Errors name the
/// offending data row and column (1-based).
MultivariateSeries load_csv(const std::string& path, bool has_header,
                            double sampling_interval);

/// All numeric CSV output uses %.17g, so values round-trip exactly.
std::string series_to_csv(const MultivariateSeries& series);
void write_csv(const MultivariateSeries& series, const std::string& path);

/// Columns f, then Re/Im of every (i, j) entry in row-major order, with
/// headers p_<i><j>_re / p_<i><j>_im.
std::string spectrum_to_csv(const CrossSpectrum& spectrum);

/// Columns f, total, then one column per term labeled by term_labels.
/// With relative = true, emits the relative shares instead of absolute power.
std::string decomposition_to_csv(const ContributionDecomposition& dec, int target,
                                 bool relative);

/// Columns f, then running prefix sums of the target's terms (stacked-area
/// data); the last column equals the total (or 1 in relative mode).
std::string stack_to_csv(const ContributionDecomposition& dec, int target, bool relative);

/// Columns scenario, channel, mean_var, sd_var, replicates, length, seed,
/// ratio_vs_baseline. Ratios divide by the first baseline summary's mean.
std::string summaries_to_csv(const std::vector<SimulationSummary>& summaries,
                             const std::vector<std::string>& channel_names);

/// Model serialization: a JSON document {k, order, channel_names,
/// sampling_interval, coeffs (row-major per lag), noise_cov (row-major)}.
/// Numbers are encoded with 17 significant digits and round-trip
/// bit-identically.
std::string model_to_json(const VarModel& model);
void save_model_json(const VarModel& model, const std::string& path);
VarModel model_from_json(const std::string& text);
VarModel load_model_json(const std::string& path);

/// Scenario file: JSON list of {label, base_variances, pairs: [{l, m, cov}]}.
std::vector<NoiseScenario> scenarios_from_json(const std::string& text, int expected_k);
std::vector<NoiseScenario> load_scenarios_json(const std::string& path, int expected_k);

/// JSON mirror of the decomposition export: mode, k, term labels, grid and
/// per-target totals plus absolute/relative term values.
std::string decomposition_to_json(const ContributionDecomposition& dec);

namespace detail {
/// Shortest %.17g rendering of a double (exact round-trip).
std::string format_double(double value);
}  // namespace detail

}  // namespace varspect

#endif  // VARSPECT_IO_HPP
