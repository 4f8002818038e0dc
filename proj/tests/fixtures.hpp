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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "fairdiv/point_set.hpp"

namespace fairdiv::testing {

inline PointSet make_points(const std::vector<std::vector<double>>& coords,
                            const std::vector<int>& colors, int num_colors = -1) {
  int m = num_colors;
  if (m < 0) {
    m = 1;
    for (int c : colors) m = std::max(m, c + 1);
  }
  PointSet out(coords.front().size(), m);
  for (std::size_t i = 0; i < coords.size(); ++i) out.push_back(coords[i], colors[i]);
  return out;
}

// 1-D points 0, 1, 5, 6 colored blue, blue, red, red.
inline PointSet fix_a() { return make_points({{0}, {1}, {5}, {6}}, {0, 0, 1, 1}); }

// Six points in the plane, two blue then four red. With eps = 1 and gamma = 5
// the covers are
//   p1 {1,2,3}  p2 {1,2,3,6}  p3 {1,2,3,5,6}  p4 {4}  p5 {3,5}  p6 {2,3,6}
// (1-based).
inline PointSet six_point_layout() {
  return make_points({{-2.0, 0.0}, {-1.0, 1.5}, {0.0, 0.0}, {-4.5, -1.5}, {2.0, -1.0}, {0.8, 2.0}},
                     {0, 0, 1, 1, 1, 1});
}
inline constexpr double kSixGamma = 5.0;
inline constexpr double kSixEpsilon = 1.0;

// Same covers except that p4 also covers p1.
inline std::vector<std::vector<std::size_t>> six_point_drawn_covers() {
  return {{0, 1, 2}, {0, 1, 2, 5}, {0, 1, 2, 4, 5}, {0, 3}, {2, 4}, {1, 2, 5}};
}

// n points uniform in [0, scale]^d; color i % m.
inline PointSet random_points(std::uint64_t seed, std::size_t n, std::size_t d, int m,
                              double scale = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, scale);
  PointSet out(d, m);
  std::vector<double> c(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : c) v = u(rng);
    out.push_back(c, static_cast<int>(i % static_cast<std::size_t>(m)));
  }
  return out;
}

}  // namespace fairdiv::testing
