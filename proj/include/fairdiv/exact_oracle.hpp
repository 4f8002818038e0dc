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
#include <span>
#include <string>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/mwu.hpp"
#include "fairdiv/point_set.hpp"
#include "fairdiv/spatial_index.hpp"

// Exhaustive references. Slow on purpose; only for small inputs.
namespace fairdiv {

inline constexpr std::size_t kFairDivOracleLimit = 18;
inline constexpr std::size_t kKCenterOracleLimit = 12;

struct BruteForceResult {
  double gamma_star = 0.0;
  std::vector<std::size_t> witness;  // positions, ascending
  std::vector<PointId> witness_ids;
};

// Best fair subset. Only sets with exactly k_j points of color j are searched,
// since extra points never raise the minimum distance.
inline BruteForceResult brute_force_fairdiv(const PointSet& points, const FairnessSpec& spec) {
  const std::size_t n = points.size();
  if (n > kFairDivOracleLimit) {
    fail(Errc::kOracleTooLarge, std::to_string(n) + " points exceed the oracle limit of " +
                                    std::to_string(kFairDivOracleLimit));
  }
  if (spec.per_color.size() != static_cast<std::size_t>(points.num_colors())) {
    fail(Errc::kInvalidArgument, "spec and dataset disagree on the number of colors");
  }
  const auto counts = points.color_counts();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (spec.per_color[j] > counts[j]) {
      fail(Errc::kSpecUnsatisfiable, "color " + std::to_string(j) + " has too few points");
    }
  }
  if (spec.total() == 0) fail(Errc::kSpecUnsatisfiable, "spec requests no points");

  const std::size_t m = counts.size();
  // remaining[i][j]: points of color j at positions >= i
  std::vector<std::vector<std::size_t>> remaining(n + 1, std::vector<std::size_t>(m, 0));
  for (std::size_t i = n; i-- > 0;) {
    remaining[i] = remaining[i + 1];
    ++remaining[i][static_cast<std::size_t>(points.color(i))];
  }

  BruteForceResult best;
  best.gamma_star = -1.0;
  std::vector<std::size_t> need = spec.per_color;
  std::vector<std::size_t> chosen;
  std::size_t left = spec.total();

  auto dfs = [&](auto&& self, std::size_t i, double current) -> void {
    if (left == 0) {
      if (current > best.gamma_star) {
        best.gamma_star = current;
        best.witness = chosen;
      }
      return;
    }
    if (i == n || current <= best.gamma_star) return;
    for (std::size_t j = 0; j < m; ++j) {
      if (remaining[i][j] < need[j]) return;
    }
    const auto c = static_cast<std::size_t>(points.color(i));
    if (need[c] > 0) {
      double next = current;
      for (std::size_t q : chosen) next = std::min(next, points.distance(q, i));
      if (next > best.gamma_star) {
        chosen.push_back(i);
        --need[c];
        --left;
        self(self, i + 1, next);
        ++left;
        ++need[c];
        chosen.pop_back();
      }
    }
    self(self, i + 1, current);
  };
  dfs(dfs, 0, std::numeric_limits<double>::infinity());
  for (std::size_t i : best.witness) best.witness_ids.push_back(points.source_id(i));
  return best;
}

// Largest distance from a position in `members` to its nearest center.
inline double covering_radius(const PointSet& points, std::span<const std::size_t> members,
                              std::span<const std::size_t> centers) {
  double worst = 0.0;
  for (std::size_t i : members) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t c : centers) nearest = std::min(nearest, points.distance(i, c));
    worst = std::max(worst, nearest);
  }
  return worst;
}

// Optimal discrete k-center radius of the points at `positions`.
inline double brute_force_kcenter(const PointSet& points, std::span<const std::size_t> positions,
                                  std::size_t k) {
  const std::size_t n = positions.size();
  if (n > kKCenterOracleLimit) {
    fail(Errc::kOracleTooLarge, std::to_string(n) + " points exceed the k-center oracle limit of " +
                                    std::to_string(kKCenterOracleLimit));
  }
  if (n == 0) fail(Errc::kEmptyDataset, "no points");
  if (k == 0) fail(Errc::kInvalidArgument, "k must be >= 1");
  if (k >= n) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  std::vector<std::size_t> centers;
  do {
    centers.clear();
    for (std::size_t t = 0; t < n; ++t) {
      if (pick[t]) centers.push_back(positions[t]);
    }
    best = std::min(best, covering_radius(points, positions, centers));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

inline double brute_force_kcenter(const PointSet& points, std::size_t k) {
  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return brute_force_kcenter(points, all, k);
}

// Materialized covers: covers[l] lists the positions in cover(p_l).
inline std::vector<std::vector<std::size_t>> reference_covers(const PointSet& points, double gamma,
                                                              double epsilon) {
  SpatialIndex index(points, epsilon);
  const double radius = cover_radius(gamma, epsilon);
  std::vector<std::vector<std::size_t>> covers(points.size());
  for (std::size_t l = 0; l < points.size(); ++l) {
    covers[l] = index.covered_points(points.point(l), radius);
  }
  return covers;
}

// w_i = sum over l of h_l [i in covers[l]].
inline std::vector<double> reference_weights_from_covers(
    const std::vector<std::vector<std::size_t>>& covers, std::span<const double> h) {
  std::vector<double> w(h.size(), 0.0);
  for (std::size_t l = 0; l < covers.size(); ++l) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (std::binary_search(covers[l].begin(), covers[l].end(), i)) w[i] += h[l];
    }
  }
  return w;
}

inline std::vector<double> reference_cover_weights(const PointSet& points, std::span<const double> h,
                                                   double gamma, double epsilon) {
  if (h.size() != points.size()) fail(Errc::kInvalidArgument, "h has the wrong length");
  return reference_weights_from_covers(reference_covers(points, gamma, epsilon), h);
}

struct VerificationReport {
  std::vector<double> fairness_slack;  // mass_j - k_j
  std::vector<double> per_color_mass;
  std::vector<double> cover_sums;      // one per point
  double max_cover_sum = 0.0;
  double max_cover_violation = 0.0;    // max(0, max_cover_sum - (1+eps))
  double max_box_violation = 0.0;
  bool pass = false;
};

inline constexpr double kFairnessTolerance = 1e-6;
inline constexpr double kCoverTolerance = 1e-6;
inline constexpr double kBoxTolerance = 1e-9;

// Evaluates every row of the relaxed program on x directly.
inline VerificationReport verify_fractional(const PointSet& points, std::span<const double> x,
                                            const FairnessSpec& spec, double gamma,
                                            double epsilon) {
  if (x.size() != points.size()) fail(Errc::kInvalidArgument, "x has the wrong length");
  VerificationReport rep;
  const std::size_t m = static_cast<std::size_t>(points.num_colors());
  rep.per_color_mass.assign(m, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    rep.per_color_mass[static_cast<std::size_t>(points.color(i))] += x[i];
    rep.max_box_violation = std::max({rep.max_box_violation, -x[i], x[i] - 1.0});
  }
  bool fair = spec.per_color.size() == m;
  for (std::size_t j = 0; j < m && fair; ++j) {
    rep.fairness_slack.push_back(rep.per_color_mass[j] - static_cast<double>(spec.per_color[j]));
    if (rep.fairness_slack.back() < -kFairnessTolerance) fair = false;
  }
  const auto covers = reference_covers(points, gamma, epsilon);
  rep.cover_sums.assign(points.size(), 0.0);
  for (std::size_t l = 0; l < covers.size(); ++l) {
    for (std::size_t i : covers[l]) rep.cover_sums[l] += x[i];
    rep.max_cover_sum = std::max(rep.max_cover_sum, rep.cover_sums[l]);
  }
  rep.max_cover_violation = std::max(0.0, rep.max_cover_sum - (1.0 + epsilon));
  rep.pass = fair && rep.max_cover_violation <= kCoverTolerance &&
             rep.max_box_violation <= kBoxTolerance;
  return rep;
}

}  // namespace fairdiv
