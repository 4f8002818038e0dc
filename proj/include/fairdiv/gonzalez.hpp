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
#include <span>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/point_set.hpp"

namespace fairdiv {

struct KCenterResult {
  std::vector<std::size_t> center_ids;  // positions in the point set
  double radius = 0.0;                  // max distance to the nearest center
};

// Farthest-point traversal (Gonzalez) over `positions`, seeded with
// positions[0]. Runs min(k_prime, |positions|) rounds, fewer once every point
// sits on a center; ties on the farthest distance go to the earliest
// position. 2-approximate for discrete k-center.
inline KCenterResult gonzalez_kcenter(const PointSet& points,
                                      std::span<const std::size_t> positions,
                                      std::size_t k_prime) {
  if (positions.empty()) fail(Errc::kEmptyDataset, "k-center on an empty set");
  if (k_prime == 0) fail(Errc::kInvalidArgument, "k' must be >= 1");
  const std::size_t n = positions.size();
  const std::size_t rounds = std::min(k_prime, n);

  KCenterResult out;
  out.center_ids.reserve(rounds);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  for (std::size_t round = 0; round < rounds; ++round) {
    const auto c = points.point(positions[next]);
    out.center_ids.push_back(positions[next]);
    double far = -1.0;
    std::size_t far_at = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d2 = squared_distance(points.point(positions[i]), c);
      if (d2 < nearest[i]) nearest[i] = d2;
      if (nearest[i] > far) {
        far = nearest[i];
        far_at = i;
      }
    }
    out.radius = std::sqrt(far);
    if (far <= 0.0) break;  // every point coincides with a center
    next = far_at;
  }
  return out;
}

inline KCenterResult gonzalez_kcenter(const PointSet& points, std::size_t k_prime) {
  std::vector<std::size_t> all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return gonzalez_kcenter(points, all, k_prime);
}

}  // namespace fairdiv
