// Copyright 2026 The FairDiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/mwu.hpp"
#include "fairdiv/point_set.hpp"

namespace fairdiv {

struct Dataset {
  PointSet points;
  std::vector<std::string> color_labels;   // color id -> label
  std::vector<std::string> feature_names;  // one per coordinate
};

namespace detail {

// Splits one CSV record. Double quotes group fields and "" escapes a quote.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::string where(std::size_t line, const std::string& column) {
  return "row " + std::to_string(line) + ", column '" + column + "'";
}

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// Reads a header-led CSV. Every column except `color_column` is a feature.
// Rows are numbered from 1 at the header line in diagnostics.
inline Dataset parse_csv(std::istream& in, const std::string& color_column) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) fail(Errc::kEmptyFile, "input has no header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  for (auto& f : detail::split_csv_line(line)) header.emplace_back(detail::trim(f));

  const auto color_it = std::find(header.begin(), header.end(), color_column);
  if (color_it == header.end()) {
    fail(Errc::kMissingColumn, "no column named '" + color_column + "' in the header");
  }
  const std::size_t color_at = static_cast<std::size_t>(color_it - header.begin());

  Dataset data;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != color_at) data.feature_names.push_back(header[c]);
  }
  if (data.feature_names.empty()) fail(Errc::kMissingColumn, "no feature columns");

  std::unordered_map<std::string, int> color_ids;
  std::vector<double> coords;
  std::vector<double> all_coords;
  std::vector<int> colors;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size()) {
      const std::string col =
          fields.size() < header.size() ? header[fields.size()] : "#" + std::to_string(fields.size());
      fail(Errc::kInconsistentDimension,
           detail::where(line_no, col) + ": expected " + std::to_string(header.size()) +
               " fields, found " + std::to_string(fields.size()));
    }
    coords.clear();
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto text = detail::trim(fields[c]);
      if (c == color_at) {
        auto [it, inserted] = color_ids.emplace(std::string(text), static_cast<int>(color_ids.size()));
        if (inserted) data.color_labels.emplace_back(text);
        colors.push_back(it->second);
        continue;
      }
      double v = 0.0;
      std::string_view num = text;
      if (!num.empty() && num.front() == '+') num.remove_prefix(1);
      const auto res = std::from_chars(num.data(), num.data() + num.size(), v);
      if (text.empty() || res.ec != std::errc() || res.ptr != num.data() + num.size()) {
        fail(Errc::kUnparsableNumber,
             detail::where(line_no, header[c]) + ": cannot parse '" + std::string(text) + "'");
      }
      if (!std::isfinite(v)) {
        fail(Errc::kInvalidCoordinate,
             detail::where(line_no, header[c]) + ": non-finite value '" + std::string(text) + "'");
      }
      coords.push_back(v);
    }
    all_coords.insert(all_coords.end(), coords.begin(), coords.end());
  }
  if (colors.empty()) fail(Errc::kEmptyDataset, "header present but no data rows");

  const std::size_t d = data.feature_names.size();
  data.points = PointSet(d, static_cast<int>(data.color_labels.size()));
  data.points.reserve(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    data.points.push_back(std::span<const double>(all_coords.data() + i * d, d), colors[i], i);
  }
  return data;
}

inline Dataset load_csv(const std::string& path, const std::string& color_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kIo, "cannot open '" + path + "'");
  return parse_csv(in, color_column);
}

// Writes features first, then the color label column.
inline void write_csv(std::ostream& out, const Dataset& data, const std::string& color_column) {
  for (const auto& name : data.feature_names) out << name << ',';
  out << color_column << '\n';
  const auto& pts = data.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (double c : pts.point(i)) out << detail::format_double(c) << ',';
    out << data.color_labels[static_cast<std::size_t>(pts.color(i))] << '\n';
  }
}

inline void write_csv(const std::string& path, const Dataset& data, const std::string& color_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::kIo, "cannot write '" + path + "'");
  write_csv(out, data, color_column);
  if (!out) fail(Errc::kIo, "write to '" + path + "' failed");
}

enum class SpecMode { kEqual, kProportional, kExplicit };

namespace detail {

// Splits `total` in proportion to `weights`: floors first, then one extra unit
// to each of the largest remainders, ties to the lower index.
inline std::vector<std::size_t> largest_remainder(std::span<const std::size_t> weights,
                                                  std::size_t total) {
  std::uint64_t sum = 0;
  for (auto w : weights) sum += w;
  std::vector<std::size_t> out(weights.size(), 0);
  if (sum == 0) return out;
  std::vector<std::uint64_t> rem(weights.size());
  std::size_t given = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const auto scaled = static_cast<unsigned __int128>(total) * weights[j];
    out[j] = static_cast<std::size_t>(scaled / sum);
    rem[j] = static_cast<std::uint64_t>(scaled % sum);
    given += out[j];
  }
  std::vector<std::size_t> order(weights.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t t = 0; given < total; ++t, ++given) ++out[order[t]];
  return out;
}

}  // namespace detail

// Per-color lower bounds summing to k. Equal: floor(k/m) each with the
// remainder going to the lowest color ids. Proportional: k |P(c_j)| / n by
// largest remainder.
inline FairnessSpec make_spec(std::span<const std::size_t> counts, SpecMode mode, long long k) {
  if (k <= 0) fail(Errc::kInvalidArgument, "k must be positive, got " + std::to_string(k));
  if (counts.empty()) fail(Errc::kInvalidArgument, "no colors");
  const auto total = static_cast<std::size_t>(k);
  FairnessSpec spec;
  if (mode == SpecMode::kEqual) {
    const std::size_t m = counts.size();
    spec.per_color.assign(m, total / m);
    for (std::size_t j = 0; j < total % m; ++j) ++spec.per_color[j];
  } else if (mode == SpecMode::kProportional) {
    spec.per_color = detail::largest_remainder(counts, total);
    if (spec.total() != total) fail(Errc::kEmptyDataset, "all colors are empty");
  } else {
    fail(Errc::kInvalidArgument, "explicit specs come from parse_spec_list");
  }
  return spec;
}

// "3,2,5" -> k = (3,2,5).
inline FairnessSpec parse_spec_list(std::string_view text) {
  FairnessSpec spec;
  for (const auto& field : detail::split_csv_line(text)) {
    const auto t = detail::trim(field);
    std::size_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      fail(Errc::kInvalidArgument, "bad entry '" + std::string(t) + "' in spec list");
    }
    spec.per_color.push_back(v);
  }
  if (spec.total() == 0) fail(Errc::kInvalidArgument, "spec list requests no points");
  return spec;
}

struct SyntheticSpec {
  std::size_t n = 1000;
  std::size_t dim = 2;
  int num_colors = 2;
  std::size_t clusters_per_color = 3;
  std::vector<double> proportions;  // empty: equal shares
  double spread = 1.0;              // per-axis standard deviation
  double extent = 100.0;            // cluster centers lie in [0, extent]^d
};

// Seeded Gaussian mixture. Color j gets exactly its largest-remainder share of
// n; its points are dealt round-robin over its clusters, then all rows are
// shuffled.
inline Dataset generate_synthetic(std::uint64_t seed, const SyntheticSpec& spec) {
  if (spec.n == 0) fail(Errc::kInvalidArgument, "n must be positive");
  if (spec.dim == 0) fail(Errc::kInvalidArgument, "dimension must be positive");
  if (spec.num_colors < 1) fail(Errc::kInvalidArgument, "need at least one color");
  if (spec.clusters_per_color == 0) fail(Errc::kInvalidArgument, "need at least one cluster");
  const auto m = static_cast<std::size_t>(spec.num_colors);

  std::vector<std::size_t> weights(m, 1);
  if (!spec.proportions.empty()) {
    if (spec.proportions.size() != m) fail(Errc::kInvalidArgument, "one proportion per color");
    for (std::size_t j = 0; j < m; ++j) {
      if (!(spec.proportions[j] >= 0.0)) fail(Errc::kInvalidArgument, "negative proportion");
      weights[j] = static_cast<std::size_t>(std::llround(spec.proportions[j] * 1e9));
    }
  }
  const auto counts = detail::largest_remainder(weights, spec.n);
  if (std::accumulate(counts.begin(), counts.end(), std::size_t{0}) != spec.n) {
    fail(Errc::kInvalidArgument, "proportions sum to zero");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> place(0.0, spec.extent);
  std::normal_distribution<double> noise(0.0, spec.spread);

  std::vector<double> coords;
  coords.reserve(spec.n * spec.dim);
  std::vector<int> colors;
  colors.reserve(spec.n);
  std::vector<double> centers(spec.clusters_per_color * spec.dim);
  for (std::size_t j = 0; j < m; ++j) {
    for (auto& c : centers) c = place(rng);
    for (std::size_t t = 0; t < counts[j]; ++t) {
      const double* center = centers.data() + (t % spec.clusters_per_color) * spec.dim;
      for (std::size_t a = 0; a < spec.dim; ++a) coords.push_back(center[a] + noise(rng));
      colors.push_back(static_cast<int>(j));
    }
  }
  std::vector<std::size_t> order(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) order[i] = i;
  for (std::size_t i = spec.n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }

  Dataset data;
  data.points = PointSet(spec.dim, spec.num_colors);
  data.points.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const std::size_t src = order[i];
    data.points.push_back(std::span<const double>(coords.data() + src * spec.dim, spec.dim),
                          colors[src], i);
  }
  for (std::size_t j = 0; j < m; ++j) data.color_labels.push_back("c" + std::to_string(j));
  for (std::size_t a = 0; a < spec.dim; ++a) data.feature_names.push_back("x" + std::to_string(a));
  return data;
}

}  // namespace fairdiv
