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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/error.hpp"

namespace fairdiv {

using PointId = std::size_t;

// A point in R^d with a color label. `index` is the stable id of the point in
// its source dataset.
struct ColoredPoint {
  PointId index = 0;
  std::vector<double> coords;
  int color = 0;
};

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double diff = a[t] - b[t];
    acc += diff * diff;
  }
  return acc;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

// Flat, column-contiguous storage for a colored point set. Local positions
// are dense in [0, size()); `source_id(i)` maps back to the id the point had
// in the dataset it came from (the identity for freshly loaded data, the
// original id for coresets and stream synopses).
class PointSet {
 public:
  PointSet() = default;

  PointSet(std::size_t dim, int num_colors) : dim_(dim), num_colors_(num_colors) {
    if (dim == 0) fail(Errc::kInvalidArgument, "dimension must be >= 1");
    if (num_colors < 1) fail(Errc::kInvalidArgument, "need at least one color");
  }

  // Builds a set from value points; positions follow the input order and
  // source ids are the points' `index` fields.
  static PointSet from_points(std::span<const ColoredPoint> points,
                              int num_colors = -1) {
    if (points.empty()) fail(Errc::kEmptyDataset, "no points");
    int max_color = 0;
    for (const auto& p : points) max_color = std::max(max_color, p.color);
    if (num_colors < 0) num_colors = max_color + 1;
    PointSet set(points.front().coords.size(), num_colors);
    set.reserve(points.size());
    for (const auto& p : points) set.push_back(p.coords, p.color, p.index);
    return set;
  }

  void reserve(std::size_t n) {
    coords_.reserve(n * dim_);
    colors_.reserve(n);
    source_ids_.reserve(n);
  }

  void push_back(std::span<const double> coords, int color, PointId source_id) {
    if (coords.size() != dim_) {
      fail(Errc::kInconsistentDimension,
           "point has " + std::to_string(coords.size()) + " coordinates, expected " +
               std::to_string(dim_));
    }
    for (double c : coords) {
      if (!std::isfinite(c)) {
        fail(Errc::kInvalidCoordinate,
             "non-finite coordinate in point " + std::to_string(source_id));
      }
    }
    if (color < 0 || color >= num_colors_) {
      fail(Errc::kUnknownColor, "color " + std::to_string(color) + " outside [0, " +
                                    std::to_string(num_colors_) + ")");
    }
    coords_.insert(coords_.end(), coords.begin(), coords.end());
    colors_.push_back(color);
    source_ids_.push_back(source_id);
  }

  void push_back(std::span<const double> coords, int color) {
    push_back(coords, color, size());
  }

  std::size_t size() const { return colors_.size(); }
  bool empty() const { return colors_.empty(); }
  std::size_t dim() const { return dim_; }
  int num_colors() const { return num_colors_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  int color(std::size_t i) const { return colors_[i]; }
  PointId source_id(std::size_t i) const { return source_ids_[i]; }

  std::span<const int> colors() const { return colors_; }
  std::span<const double> raw_coords() const { return coords_; }

  double distance(std::size_t i, std::size_t j) const {
    return fairdiv::distance(point(i), point(j));
  }

  ColoredPoint at(std::size_t i) const {
    auto p = point(i);
    return {source_ids_[i], {p.begin(), p.end()}, colors_[i]};
  }

  std::vector<std::size_t> color_counts() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(num_colors_), 0);
    for (int c : colors_) ++counts[static_cast<std::size_t>(c)];
    return counts;
  }

  // Positions of every point of each color, ascending.
  std::vector<std::vector<std::size_t>> members_by_color() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(num_colors_));
    for (std::size_t i = 0; i < size(); ++i) {
      out[static_cast<std::size_t>(colors_[i])].push_back(i);
    }
    return out;
  }

  // The sub-collection at `positions`, keeping source ids.
  PointSet subset(std::span<const std::size_t> positions) const {
    PointSet out(dim_, num_colors_);
    out.reserve(positions.size());
    for (std::size_t i : positions) out.push_back(point(i), colors_[i], source_ids_[i]);
    return out;
  }

 private:
  std::size_t dim_ = 0;
  int num_colors_ = 0;
  std::vector<double> coords_;
  std::vector<int> colors_;
  std::vector<PointId> source_ids_;
};

// Minimum pairwise distance of the selected positions; +inf for fewer than
// two points.
inline double diversity(const PointSet& points, std::span<const std::size_t> selected) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < selected.size(); ++a) {
    for (std::size_t b = a + 1; b < selected.size(); ++b) {
      best = std::min(best, squared_distance(points.point(selected[a]),
                                             points.point(selected[b])));
    }
  }
  return std::isinf(best) ? best : std::sqrt(best);
}

}  // namespace fairdiv
