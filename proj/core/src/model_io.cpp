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

#include <sstream>

#include <json.hpp>

#include "varspect/errors.hpp"
#include "varspect/io.hpp"

namespace varspect {

namespace {

using detail::format_double;
using nlohmann::json;

void append_escaped(std::ostringstream& out, const std::string& text) {
  out << '"';
  for (char c : text) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out << buf;
        } else {
          out << c;
        }
    }
  }
  out << '"';
}

void append_matrix_row_major(std::ostringstream& out, const Eigen::MatrixXd& m) {
  out << '[';
  bool first = true;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (!first) out << ", ";
      out << format_double(m(r, c));
      first = false;
    }
  out << ']';
}

Eigen::MatrixXd matrix_from_flat(const json& values, Eigen::Index k,
                                 const std::string& what) {
  if (!values.is_array() || values.size() != static_cast<std::size_t>(k * k))
    throw ValidationError(what + " must be a flat row-major array of k*k numbers");
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) {
      const json& cell = values[static_cast<std::size_t>(r * k + c)];
      if (!cell.is_number()) throw ValidationError(what + " must contain only numbers");
      m(r, c) = cell.get<double>();
    }
  return m;
}

json parse_or_throw(const std::string& text, const std::string& what) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ValidationError("malformed JSON in " + what);
  return doc;
}

}  // namespace

std::string model_to_json(const VarModel& model) {
  validate(model);
  std::ostringstream out;
  out << "{\n";
  out << "  \"k\": " << model.channels() << ",\n";
  out << "  \"order\": " << model.order() << ",\n";
  out << "  \"channel_names\": [";
  for (std::size_t i = 0; i < model.channel_names.size(); ++i) {
    if (i) out << ", ";
    append_escaped(out, model.channel_names[i]);
  }
  out << "],\n";
  out << "  \"sampling_interval\": " << format_double(model.sampling_interval) << ",\n";
  out << "  \"coeffs\": [";
  for (std::size_t j = 0; j < model.coeffs.size(); ++j) {
    if (j) out << ", ";
    out << "\n    ";
    append_matrix_row_major(out, model.coeffs[j]);
  }
  out << (model.coeffs.empty() ? "],\n" : "\n  ],\n");
  out << "  \"noise_cov\": ";
  append_matrix_row_major(out, model.noise_cov);
  out << "\n}\n";
  return out.str();
}

void save_model_json(const VarModel& model, const std::string& path) {
  write_text_file(path, model_to_json(model));
}

VarModel model_from_json(const std::string& text) {
  const json doc = parse_or_throw(text, "model");
  if (!doc.is_object()) throw ValidationError("model JSON must be an object");
  for (const char* field : {"k", "order", "channel_names", "sampling_interval",
                            "coeffs", "noise_cov"})
    if (!doc.contains(field))
      throw ValidationError(std::string("model JSON missing field '") + field + "'");

  if (!doc["k"].is_number_integer() || !doc["order"].is_number_integer())
    throw ValidationError("model k and order must be integers");
  const Eigen::Index k = doc["k"].get<Eigen::Index>();
  const int order = doc["order"].get<int>();
  if (k < 1) throw ValidationError("model k must be at least 1");
  if (order < 0) throw ValidationError("model order must be nonnegative");

  VarModel model;
  if (!doc["channel_names"].is_array() ||
      doc["channel_names"].size() != static_cast<std::size_t>(k))
    throw ValidationError("channel_names must be an array of k strings");
  for (const auto& name : doc["channel_names"]) {
    if (!name.is_string()) throw ValidationError("channel_names must contain strings");
    model.channel_names.push_back(name.get<std::string>());
  }
  if (!doc["sampling_interval"].is_number())
    throw ValidationError("sampling_interval must be a number");
  model.sampling_interval = doc["sampling_interval"].get<double>();

  if (!doc["coeffs"].is_array() || doc["coeffs"].size() != static_cast<std::size_t>(order))
    throw ValidationError("coeffs must be an array with one entry per lag");
  model.coeffs.reserve(static_cast<std::size_t>(order));
  for (int j = 0; j < order; ++j)
    model.coeffs.push_back(matrix_from_flat(doc["coeffs"][static_cast<std::size_t>(j)], k,
                                            "coeffs[" + std::to_string(j) + "]"));
  model.noise_cov = matrix_from_flat(doc["noise_cov"], k, "noise_cov");
  validate(model);
  return model;
}

VarModel load_model_json(const std::string& path) {
  try {
    return model_from_json(read_text_file(path));
  } catch (const ValidationError& err) {
    throw ValidationError(path + ": " + err.what());
  }
}

std::vector<NoiseScenario> scenarios_from_json(const std::string& text, int expected_k) {
  const json doc = parse_or_throw(text, "scenario file");
  if (!doc.is_array() || doc.empty())
    throw ValidationError("scenario file must be a non-empty JSON list");

  std::vector<NoiseScenario> scenarios;
  scenarios.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& entry = doc[i];
    const std::string where = "scenario " + std::to_string(i + 1);
    if (!entry.is_object()) throw ValidationError(where + " must be an object");
    if (!entry.contains("base_variances") || !entry["base_variances"].is_array())
      throw ValidationError(where + " needs a base_variances array");
    const std::size_t k = entry["base_variances"].size();
    if (expected_k > 0 && k != static_cast<std::size_t>(expected_k))
      throw ValidationError(where + " has " + std::to_string(k) +
                            " base variances, expected " + std::to_string(expected_k));
    Eigen::VectorXd base(static_cast<Eigen::Index>(k));
    for (std::size_t c = 0; c < k; ++c) {
      if (!entry["base_variances"][c].is_number())
        throw ValidationError(where + ": base_variances must contain numbers");
      base(static_cast<Eigen::Index>(c)) = entry["base_variances"][c].get<double>();
    }

    std::vector<NoisePair> pairs;
    if (entry.contains("pairs")) {
      if (!entry["pairs"].is_array())
        throw ValidationError(where + ": pairs must be a list");
      for (const auto& p : entry["pairs"]) {
        if (!p.is_object() || !p.contains("l") || !p.contains("m") || !p.contains("cov") ||
            !p["l"].is_number_integer() || !p["m"].is_number_integer() ||
            !p["cov"].is_number())
          throw ValidationError(where + ": each pair needs integer l, m and numeric cov");
        NoisePair pair;
        pair.l = p["l"].get<int>();
        pair.m = p["m"].get<int>();
        pair.cov = p["cov"].get<double>();
        if (pair.l < pair.m) std::swap(pair.l, pair.m);
        pairs.push_back(pair);
      }
    }

    std::string label;
    if (entry.contains("label")) {
      if (!entry["label"].is_string())
        throw ValidationError(where + ": label must be a string");
      label = entry["label"].get<std::string>();
    }

    try {
      scenarios.emplace_back(static_cast<int>(k), std::move(base), std::move(pairs),
                             std::move(label));
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    }
  }
  return scenarios;
}

std::vector<NoiseScenario> load_scenarios_json(const std::string& path, int expected_k) {
  try {
    return scenarios_from_json(read_text_file(path), expected_k);
  } catch (const ValidationError& err) {
    throw ValidationError(path + ": " + err.what());
  }
}

std::string decomposition_to_json(const ContributionDecomposition& dec) {
  json doc;
  doc["mode"] = dec.mode == ContributionMode::classical ? "classical" : "extended";
  doc["k"] = dec.k;
  doc["term_count"] = dec.term_count();
  doc["channel_names"] = dec.channel_names;
  doc["term_labels"] = dec.term_labels;
  doc["frequencies"] = dec.grid.points;

  json targets = json::array();
  for (int i = 1; i <= dec.k; ++i) {
    json target;
    target["channel"] = i;
    target["name"] = dec.channel_names[static_cast<std::size_t>(i - 1)];
    json total = json::array();
    for (Eigen::Index r = 0; r < dec.total.rows(); ++r) total.push_back(dec.total(r, i - 1));
    target["total"] = std::move(total);

    const auto matrix_to_rows = [](const Eigen::MatrixXd& m) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
      }
      return rows;
    };
    target["absolute"] = matrix_to_rows(dec.absolute[static_cast<std::size_t>(i - 1)]);
    if (dec.has_relative())
      target["relative"] = matrix_to_rows(dec.relative[static_cast<std::size_t>(i - 1)]);
    targets.push_back(std::move(target));
  }
  doc["targets"] = std::move(targets);
  return doc.dump(2) + "\n";
}

}  // namespace varspect
