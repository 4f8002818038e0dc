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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/log.hpp"
#include "fairdiv/mwu.hpp"
#include "fairdiv/point_set.hpp"
#include "fairdiv/spatial_index.hpp"

namespace fairdiv {

// Inserts points in the given order, keeping a point iff no earlier point of
// the order lies under a canonical node of its ball of radius `radius`.
// Returns the kept ids, ascending.
template <class NextId>
std::vector<std::size_t> round_with_source(SpatialIndex& index, double radius, NextId&& next) {
  std::vector<std::size_t> kept;
  while (auto id = next()) {
    const std::size_t i = *id;
    if (index.region_free(index.point(i), radius)) kept.push_back(i);
    index.deactivate_path(i);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

inline std::vector<std::size_t> round_in_order(SpatialIndex& index,
                                               std::span<const std::size_t> order,
                                               double radius) {
  index.init_sampling(std::vector<double>(index.size(), 0.0));
  std::size_t at = 0;
  return round_with_source(index, radius, [&]() -> std::optional<std::size_t> {
    if (at == order.size()) return std::nullopt;
    return order[at++];
  });
}

// Randomized rounding of a fractional solution: sample points without
// replacement proportionally to x, keep each one whose ball (at `radius`)
// holds no previously sampled point. Stops once the remaining mass is at most
// kMassTolerance.
template <class Urbg>
std::vector<std::size_t> round_at_radius(SpatialIndex& index, std::span<const double> x,
                                         double radius, Urbg& rng) {
  index.init_sampling(x);
  return round_with_source(index, radius, [&]() -> std::optional<std::size_t> {
    if (!(index.remaining_mass() > kMassTolerance)) return std::nullopt;
    return index.sample_remove(rng);
  });
}

// Selected points are pairwise at least gamma / (2(1+eps)) apart.
template <class Urbg>
std::vector<std::size_t> round_solution(SpatialIndex& index, std::span<const double> x,
                                        double gamma, Urbg& rng) {
  return round_at_radius(index, x, cover_radius(gamma, index.epsilon()), rng);
}

inline double sparsify_radius(double gamma, double epsilon) {
  return gamma / (3.0 * (1.0 + epsilon) * (1.0 + epsilon));
}

inline double high_prob_round_radius(double gamma, double epsilon) {
  return gamma / (6.0 * std::pow(1.0 + epsilon, 3));
}

// Moves fractional mass onto well-separated representatives, per color.
//
// Each color gets its own index carrying the x masses. Points are visited in
// ascending id; a point with positive mass and no consumed ancestor collects
// the mass of every live canonical node of its ball of radius
// gamma / (3(1+eps)^2), and those nodes are consumed. Per-color mass is
// preserved and positive same-color entries end up at least that radius
// apart.
inline std::vector<double> sparsify_high_prob(const PointSet& points, std::span<const double> x,
                                              double gamma, double epsilon) {
  if (x.size() != points.size()) fail(Errc::kInvalidArgument, "x length does not match points");
  std::vector<double> y(points.size(), 0.0);
  const double radius = sparsify_radius(gamma, epsilon);
  const auto members = points.members_by_color();
  std::vector<NodeId> consumed;
  for (const auto& ids : members) {
    if (ids.empty()) continue;
    const PointSet sub = points.subset(ids);
    SpatialIndex tree(sub, epsilon);
    std::vector<double> mass(ids.size());
    for (std::size_t t = 0; t < ids.size(); ++t) mass[t] = x[ids[t]];
    tree.init_sampling(mass);

    auto spent = [&](NodeId u) { return !tree.active(u) || !(tree.subtree_mass(u) > 0.0); };
    for (std::size_t t = 0; t < ids.size(); ++t) {
      if (!(mass[t] > 0.0)) continue;
      bool live = true;
      for (NodeId u = tree.leaf_of(t); u != kNoNode && live; u = tree.parent(u)) {
        live = tree.active(u);
      }
      if (!live) continue;
      consumed.clear();
      double collected = 0.0;
      tree.for_each_canonical(
          sub.point(t), radius,
          [&](NodeId u) {
            consumed.push_back(u);
            collected += tree.subtree_mass(u);
          },
          spent);
      for (NodeId u : consumed) {
        tree.consume_node(u);
        tree.set_active(u, false);
      }
      y[ids[t]] = collected;
    }
  }
  return y;
}

struct HighProbRound {
  std::vector<std::size_t> selected;
  std::size_t attempts = 0;
};

inline std::size_t high_prob_repeats(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) fail(Errc::kInvalidArgument, "delta must lie in (0, 1)");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(1.0 / delta) - 1e-12)));
}

// Smallest k_j for which the per-color Chernoff bound holds.
inline double high_prob_min_k(double epsilon, int num_colors) {
  return 3.0 * (1.0 + epsilon) / (epsilon * epsilon) * std::log(2.0 * num_colors);
}

// Rounds y at radius gamma / (6(1+eps)^3) up to ceil(log2(1/delta)) times and
// keeps the first draw with at least (1-eps) k_j / (1+eps) points of every
// color.
template <class Urbg>
HighProbRound round_high_prob(SpatialIndex& index, const PointSet& points,
                              std::span<const double> y, double gamma, double delta,
                              const FairnessSpec& spec, Urbg& rng) {
  const double eps = index.epsilon();
  const double min_k = high_prob_min_k(eps, spec.num_colors());
  for (std::size_t j = 0; j < spec.per_color.size(); ++j) {
    if (static_cast<double>(spec.per_color[j]) < min_k) {
      log(LogLevel::kWarn, "k_" + std::to_string(j) + " = " + std::to_string(spec.per_color[j]) +
                               " is below " + std::to_string(min_k) +
                               "; the high-probability guarantee does not apply");
      break;
    }
  }
  const std::size_t repeats = high_prob_repeats(delta);
  const double radius = high_prob_round_radius(gamma, eps);
  for (std::size_t attempt = 1; attempt <= repeats; ++attempt) {
    auto selected = round_at_radius(index, y, radius, rng);
    std::vector<std::size_t> counts(spec.per_color.size(), 0);
    for (std::size_t i : selected) ++counts[static_cast<std::size_t>(points.color(i))];
    bool ok = true;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      const double need = (1.0 - eps) * static_cast<double>(spec.per_color[j]) / (1.0 + eps);
      ok = ok && static_cast<double>(counts[j]) >= need;
    }
    if (ok) return {std::move(selected), attempt};
  }
  fail(Errc::kFailedAfterRepeats,
       "no rounding met the per-color thresholds in " + std::to_string(repeats) + " attempts");
}

}  // namespace fairdiv
