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
#include <utility>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/gonzalez.hpp"
#include "fairdiv/point_set.hpp"
#include "fairdiv/spatial_index.hpp"

namespace fairdiv {

enum class CandidateMode { kExact, kWspd, kDecay };

// Strictly increasing positive diversity values the solver may certify.
struct CandidateSet {
  std::vector<double> values;
  CandidateMode mode = CandidateMode::kExact;
};

inline constexpr std::size_t kExactCandidateLimit = 4096;

namespace detail {

inline void sort_unique_positive(std::vector<double>& v) {
  std::erase_if(v, [](double x) { return !(x > 0.0); });
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

// Every distinct nonzero pairwise distance, ascending.
inline CandidateSet exact_candidates(const PointSet& points) {
  const std::size_t n = points.size();
  if (n < 2) fail(Errc::kTooFewPoints, "need at least two points for pairwise distances");
  CandidateSet out;
  out.mode = CandidateMode::kExact;
  out.values.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.values.push_back(points.distance(i, j));
  }
  detail::sort_unique_positive(out.values);
  if (out.values.empty()) fail(Errc::kEmptyCandidates, "all pairwise distances are zero");
  return out;
}

// Distances from a well-separated pair decomposition with separation 4/eps:
// for every pair p != q some value lies in [(1-eps)|pq|, (1+eps)|pq|]. Point
// sets of at most `exact_limit` points use exact_candidates instead.
inline CandidateSet wspd_candidates(const PointSet& points, double epsilon,
                                    std::size_t exact_limit = kExactCandidateLimit) {
  if (points.size() < 2) fail(Errc::kTooFewPoints, "need at least two points for pairwise distances");
  if (points.size() <= exact_limit) return exact_candidates(points);

  const SpatialIndex tree(points, epsilon);
  const double separation = 4.0 / epsilon;
  const std::size_t d = points.dim();

  const std::size_t nodes = tree.node_count();
  std::vector<double> center(nodes * d);
  std::vector<double> radius(nodes);
  for (NodeId u = 0; u < nodes; ++u) {
    auto lo = tree.box_lo(u);
    auto hi = tree.box_hi(u);
    double diag2 = 0.0;
    for (std::size_t t = 0; t < d; ++t) {
      center[u * d + t] = 0.5 * (lo[t] + hi[t]);
      diag2 += (hi[t] - lo[t]) * (hi[t] - lo[t]);
    }
    radius[u] = 0.5 * std::sqrt(diag2);
  }
  auto rep = [&](NodeId u) { return tree.node_points(u).front(); };
  auto separated = [&](NodeId a, NodeId b) {
    const double rho = std::max(radius[a], radius[b]);
    const double gap =
        distance({center.data() + a * d, d}, {center.data() + b * d, d}) - 2.0 * rho;
    return gap >= separation * rho;
  };

  CandidateSet out;
  out.mode = CandidateMode::kWspd;
  std::vector<std::pair<NodeId, NodeId>> work;
  for (NodeId u = 0; u < nodes; ++u) {
    if (!tree.is_leaf(u)) work.emplace_back(tree.left(u), tree.right(u));
  }
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (separated(a, b)) {
      out.values.push_back(points.distance(rep(a), rep(b)));
      continue;
    }
    if (radius[a] < radius[b]) std::swap(a, b);
    // a has positive radius here, so it is internal.
    work.emplace_back(tree.left(a), b);
    work.emplace_back(tree.right(a), b);
  }
  detail::sort_unique_positive(out.values);
  if (out.values.empty()) fail(Errc::kEmptyCandidates, "all pairwise distances are zero");
  return out;
}

// Minimum pairwise distance of k color-blind farthest-point picks from point
// 0. This is the decay search's starting gamma. It is at least half of any
// fair optimum with k points in total, and can be below it.
inline double gonzalez_upper_bound(const PointSet& points, std::size_t k) {
  if (k < 2) fail(Errc::kInvalidArgument, "upper bound needs k >= 2");
  if (k > points.size()) fail(Errc::kNotEnoughPoints, "k exceeds the number of points");
  const auto centers = gonzalez_kcenter(points, k);
  return diversity(points, centers.center_ids);
}

// gamma_max * factor^t for t = 0, 1, ..., max_steps - 1.
inline std::vector<double> decay_schedule(double gamma_max, double factor = 0.85,
                                          std::size_t max_steps = 200) {
  if (!(gamma_max > 0.0)) fail(Errc::kInvalidArgument, "gamma_max must be positive");
  if (!(factor > 0.0 && factor < 1.0)) fail(Errc::kInvalidArgument, "factor must lie in (0, 1)");
  std::vector<double> out;
  out.reserve(max_steps);
  double g = gamma_max;
  for (std::size_t t = 0; t < max_steps; ++t) {
    out.push_back(g);
    g *= factor;
  }
  return out;
}

}  // namespace fairdiv
