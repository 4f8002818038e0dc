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
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/mfd.hpp"
#include "fairdiv/mwu.hpp"
#include "fairdiv/point_set.hpp"

namespace fairdiv {

// Doubling-algorithm state for one color.
struct ColorCenters {
  std::vector<ColoredPoint> centers;
  double r = 0.0;
  std::size_t capacity = 0;
};

class StreamState {
 public:
  StreamState(int num_colors, std::size_t k_prime) : k_prime_(k_prime) {
    if (num_colors < 1) fail(Errc::kInvalidArgument, "need at least one color");
    if (k_prime < 1) fail(Errc::kInvalidArgument, "k' must be >= 1");
    per_color_.resize(static_cast<std::size_t>(num_colors));
    for (auto& cc : per_color_) cc.capacity = k_prime;
    seen_.assign(per_color_.size(), 0);
  }

  void insert(const ColoredPoint& p) {
    if (p.color < 0 || static_cast<std::size_t>(p.color) >= per_color_.size()) {
      fail(Errc::kUnknownColor, "color " + std::to_string(p.color) + " outside [0, " +
                                    std::to_string(per_color_.size()) + ")");
    }
    if (dim_ == 0) {
      if (p.coords.empty()) fail(Errc::kInconsistentDimension, "point has no coordinates");
      dim_ = p.coords.size();
    } else if (p.coords.size() != dim_) {
      fail(Errc::kInconsistentDimension, "point " + std::to_string(p.index) + " has " +
                                             std::to_string(p.coords.size()) +
                                             " coordinates, expected " + std::to_string(dim_));
    }
    for (double c : p.coords) {
      if (!std::isfinite(c)) {
        fail(Errc::kInvalidCoordinate, "non-finite coordinate in point " + std::to_string(p.index));
      }
    }
    ++seen_[static_cast<std::size_t>(p.color)];
    auto& cc = per_color_[static_cast<std::size_t>(p.color)];

    if (cc.r == 0.0) {
      for (const auto& c : cc.centers) {
        if (c.coords == p.coords) return;
      }
      cc.centers.push_back(p);
      if (cc.centers.size() <= cc.capacity) return;
      cc.r = min_pairwise(cc.centers) / 2.0;
      merge(cc);
    } else {
      const double threshold = 2.0 * cc.r;
      for (const auto& c : cc.centers) {
        if (distance(c.coords, p.coords) <= threshold) return;
      }
      cc.centers.push_back(p);
    }
    while (cc.centers.size() > cc.capacity) {
      cc.r *= 2.0;
      merge(cc);
    }
  }

  int num_colors() const { return static_cast<int>(per_color_.size()); }
  std::size_t dim() const { return dim_; }
  std::size_t k_prime() const { return k_prime_; }
  const ColorCenters& color_state(int color) const {
    return per_color_.at(static_cast<std::size_t>(color));
  }
  const std::vector<std::size_t>& seen_counts() const { return seen_; }

  std::size_t stored() const {
    std::size_t total = 0;
    for (const auto& cc : per_color_) total += cc.centers.size();
    return total;
  }

  // All kept centers, ordered by stream id.
  PointSet synopsis() const {
    std::vector<ColoredPoint> all;
    for (const auto& cc : per_color_) all.insert(all.end(), cc.centers.begin(), cc.centers.end());
    std::sort(all.begin(), all.end(),
              [](const ColoredPoint& a, const ColoredPoint& b) { return a.index < b.index; });
    if (all.empty()) fail(Errc::kEmptyDataset, "stream is empty");
    return PointSet::from_points(all, num_colors());
  }

 private:
  static double min_pairwise(const std::vector<ColoredPoint>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        best = std::min(best, distance(pts[a].coords, pts[b].coords));
      }
    }
    return best;
  }

  // Keeps, in stored order, each center farther than 2r from every kept one.
  static void merge(ColorCenters& cc) {
    const double threshold = 2.0 * cc.r;
    std::vector<ColoredPoint> kept;
    for (auto& c : cc.centers) {
      bool far = true;
      for (const auto& k : kept) {
        if (distance(k.coords, c.coords) <= threshold) {
          far = false;
          break;
        }
      }
      if (far) kept.push_back(std::move(c));
    }
    cc.centers = std::move(kept);
  }

  std::size_t k_prime_;
  std::size_t dim_ = 0;
  std::vector<ColorCenters> per_color_;
  std::vector<std::size_t> seen_;
};

inline void stream_insert(StreamState& state, const ColoredPoint& p) { state.insert(p); }

// Runs mfd on a snapshot of the synopsis. `selected` and `selected_ids` both
// hold stream ids; `fractional` is indexed by synopsis position.
template <class Urbg>
Solution stream_query(const StreamState& state, const FairnessSpec& spec, const MwuParams& params,
                      SearchOptions options, Urbg& rng) {
  if (spec.per_color.size() != static_cast<std::size_t>(state.num_colors())) {
    fail(Errc::kInvalidArgument, "spec has " + std::to_string(spec.per_color.size()) +
                                     " colors, stream has " + std::to_string(state.num_colors()));
  }
  for (int j = 0; j < state.num_colors(); ++j) {
    const std::size_t have = state.color_state(j).centers.size();
    if (have < spec.per_color[static_cast<std::size_t>(j)]) {
      fail(Errc::kSpecUnsatisfiableOnSynopsis,
           "color " + std::to_string(j) + " keeps " + std::to_string(have) + " centers, needs " +
               std::to_string(spec.per_color[static_cast<std::size_t>(j)]));
    }
  }
  const PointSet synopsis = state.synopsis();
  options.search = SearchMode::kDecay;
  Solution sol = mfd(synopsis, spec, params, options, rng);
  sol.selected = sol.selected_ids;
  return sol;
}

}  // namespace fairdiv
