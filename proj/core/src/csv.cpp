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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "varspect/errors.hpp"
#include "varspect/io.hpp"

namespace varspect {

namespace detail {

std::string format_double(double value) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace detail

namespace {

using detail::format_double;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string token = line.substr(start, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - start);
    // Trim surrounding whitespace.
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!token.empty() && is_space(token.front())) token.erase(token.begin());
    while (!token.empty() && is_space(token.back())) token.pop_back();
    fields.push_back(std::move(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  // A trailing newline produces one empty tail entry; drop it.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double parse_cell(const std::string& token, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "invalid numeric value '" << token << "' at row " << row << ", column " << col;
    throw ValidationError(msg.str());
  }
  return value;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ValidationError("error reading file: " + path);
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw ValidationError("error writing file: " + path);
}

MultivariateSeries load_csv(const std::string& path, bool has_header,
                            double sampling_interval) {
  if (!(sampling_interval > 0.0))
    throw ValidationError("sampling interval must be positive");
  const std::vector<std::string> lines = split_lines(read_text_file(path));

  MultivariateSeries series;
  series.sampling_interval = sampling_interval;

  std::size_t first_data = 0;
  if (has_header) {
    if (lines.empty()) throw ValidationError(path + ": no data rows");
    series.names = split_fields(lines[0]);
    first_data = 1;
  }
  if (lines.size() <= first_data) throw ValidationError(path + ": no data rows");

  const std::size_t n = lines.size() - first_data;
  const std::size_t k = split_fields(lines[first_data]).size();
  if (k == 0) throw ValidationError(path + ": no columns");
  if (has_header && series.names.size() != k)
    throw ValidationError(path + ": header has " + std::to_string(series.names.size()) +
                          " names but rows have " + std::to_string(k) + " columns");
  if (!has_header)
    for (std::size_t c = 1; c <= k; ++c) series.names.push_back("x" + std::to_string(c));

  series.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t r = 0; r < n; ++r) {
    const std::vector<std::string> fields = split_fields(lines[first_data + r]);
    if (fields.size() != k) {
      std::ostringstream msg;
      msg << path << ": row " << r + 1 << " has " << fields.size()
          << " fields, expected " << k;
      throw ValidationError(msg.str());
    }
    for (std::size_t c = 0; c < k; ++c)
      series.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_cell(fields[c], r + 1, c + 1);
  }
  validate(series);
  return series;
}

std::string series_to_csv(const MultivariateSeries& series) {
  std::ostringstream out;
  for (std::size_t c = 0; c < series.names.size(); ++c)
    out << (c ? "," : "") << series.names[c];
  out << '\n';
  for (Eigen::Index r = 0; r < series.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < series.values.cols(); ++c)
      out << (c ? "," : "") << format_double(series.values(r, c));
    out << '\n';
  }
  return out.str();
}

void write_csv(const MultivariateSeries& series, const std::string& path) {
  write_text_file(path, series_to_csv(series));
}

std::string spectrum_to_csv(const CrossSpectrum& spectrum) {
  if (spectrum.matrices.empty()) throw ValidationError("cross spectrum is empty");
  const Eigen::Index k = spectrum.matrices.front().rows();
  std::ostringstream out;
  out << "f";
  for (Eigen::Index i = 1; i <= k; ++i)
    for (Eigen::Index j = 1; j <= k; ++j)
      out << ",p_" << i << j << "_re,p_" << i << j << "_im";
  out << '\n';
  for (std::size_t fi = 0; fi < spectrum.grid.size(); ++fi) {
    out << format_double(spectrum.grid.points[fi]);
    const Eigen::MatrixXcd& p = spectrum.matrices[fi];
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j)
        out << ',' << format_double(p(i, j).real()) << ',' << format_double(p(i, j).imag());
    out << '\n';
  }
  return out.str();
}

namespace {

const Eigen::MatrixXd& select_terms(const ContributionDecomposition& dec, int target,
                                    bool relative) {
  if (target < 1 || target > dec.k) throw ValidationError("target channel out of range");
  if (relative && !dec.has_relative())
    throw ValidationError("decomposition has no relative shares");
  return relative ? dec.relative[static_cast<std::size_t>(target - 1)]
                  : dec.absolute[static_cast<std::size_t>(target - 1)];
}

}  // namespace

std::string decomposition_to_csv(const ContributionDecomposition& dec, int target,
                                 bool relative) {
  const Eigen::MatrixXd& terms = select_terms(dec, target, relative);
  std::ostringstream out;
  out << "f,total";
  for (const auto& label : dec.term_labels) out << ',' << label;
  out << '\n';
  for (Eigen::Index r = 0; r < terms.rows(); ++r) {
    out << format_double(dec.grid.points[static_cast<std::size_t>(r)]) << ','
        << format_double(dec.total(r, target - 1));
    for (Eigen::Index c = 0; c < terms.cols(); ++c)
      out << ',' << format_double(terms(r, c));
    out << '\n';
  }
  return out.str();
}

std::string stack_to_csv(const ContributionDecomposition& dec, int target, bool relative) {
  select_terms(dec, target, relative);  // validates
  const Eigen::MatrixXd stack = cumulative_stack(dec, target, relative);
  std::ostringstream out;
  out << "f";
  for (const auto& label : dec.term_labels) out << ',' << label;
  out << '\n';
  for (Eigen::Index r = 0; r < stack.rows(); ++r) {
    out << format_double(dec.grid.points[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < stack.cols(); ++c)
      out << ',' << format_double(stack(r, c));
    out << '\n';
  }
  return out.str();
}

std::string summaries_to_csv(const std::vector<SimulationSummary>& summaries,
                             const std::vector<std::string>& channel_names) {
  if (summaries.empty()) throw ValidationError("no simulation summaries");
  const Eigen::Index k = summaries.front().mean_variance.size();
  if (static_cast<Eigen::Index>(channel_names.size()) != k)
    throw ValidationError("channel name count does not match summaries");

  const SimulationSummary* baseline = nullptr;
  for (const auto& s : summaries)
    if (s.baseline) {
      baseline = &s;
      break;
    }

  std::ostringstream out;
  out << "scenario,channel,mean_var,sd_var,replicates,length,seed,ratio_vs_baseline\n";
  for (const auto& s : summaries) {
    for (Eigen::Index c = 0; c < k; ++c) {
      out << s.label << ',' << channel_names[static_cast<std::size_t>(c)] << ','
          << format_double(s.mean_variance(c)) << ',' << format_double(s.sd_variance(c))
          << ',' << s.replicates << ',' << s.length << ',' << s.seed << ',';
      if (baseline != nullptr && baseline->mean_variance(c) != 0.0)
        out << format_double(s.mean_variance(c) / baseline->mean_variance(c));
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace varspect
