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
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fairdiv/coreset.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/exact_oracle.hpp"
#include "fairdiv/streaming.hpp"
#include "fixtures.hpp"

namespace fairdiv {
namespace {

using testing::random_points;

std::vector<double> center_coords(const ColorCenters& cc) {
  std::vector<double> out;
  for (const auto& c : cc.centers) out.push_back(c.coords[0]);
  return out;
}

void feed(StreamState& s, const PointSet& p) {
  for (std::size_t i = 0; i < p.size(); ++i) stream_insert(s, p.at(i));
}

double coverage(const std::vector<ColoredPoint>& seen, const ColorCenters& cc) {
  double worst = 0.0;
  for (const auto& q : seen) {
    double best = INFINITY;
    for (const auto& c : cc.centers) best = std::min(best, distance(q.coords, c.coords));
    worst = std::max(worst, best);
  }
  return worst;
}

TEST(Streaming, BootstrapKeepsFirstDistinctPoints) {
  StreamState s(1, 3);
  stream_insert(s, {0, {2.0}, 0});
  stream_insert(s, {1, {7.0}, 0});
  stream_insert(s, {2, {-1.0}, 0});
  EXPECT_EQ(center_coords(s.color_state(0)), (std::vector<double>{2.0, 7.0, -1.0}));
  EXPECT_EQ(s.color_state(0).r, 0.0);
}

TEST(Streaming, DoublingTrace) {
  StreamState s(1, 2);
  stream_insert(s, {0, {0.0}, 0});
  stream_insert(s, {1, {1.0}, 0});
  stream_insert(s, {2, {5.0}, 0});
  EXPECT_DOUBLE_EQ(s.color_state(0).r, 0.5);
  EXPECT_EQ(center_coords(s.color_state(0)), (std::vector<double>{0.0, 5.0}));
  stream_insert(s, {3, {6.0}, 0});
  EXPECT_EQ(center_coords(s.color_state(0)), (std::vector<double>{0.0, 5.0}));
  EXPECT_LE(1.0, 4 * s.color_state(0).r);
}

TEST(Streaming, DuplicatesLeaveStateUnchanged) {
  StreamState s(1, 2);
  stream_insert(s, {0, {3.0, 3.0}, 0});
  stream_insert(s, {1, {3.0, 3.0}, 0});
  stream_insert(s, {2, {3.0, 3.0}, 0});
  EXPECT_EQ(s.color_state(0).centers.size(), 1u);
  EXPECT_EQ(s.color_state(0).r, 0.0);
  EXPECT_EQ(s.seen_counts()[0], 3u);
}

TEST(Streaming, RejectsBadPoints) {
  StreamState s(2, 2);
  try {
    stream_insert(s, {0, {1.0}, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnknownColor);
  }
  stream_insert(s, {0, {1.0}, 0});
  EXPECT_THROW(stream_insert(s, {1, {1.0, 2.0}, 1}), Error);
  EXPECT_THROW(stream_insert(s, {1, {NAN}, 1}), Error);
}

TEST(Streaming, InvariantsAlongRandomStreams) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_points(seed, 400, 2, 2);
    const std::size_t k_prime = 3 + seed % 5;
    StreamState s(2, k_prime);
    std::vector<std::vector<ColoredPoint>> seen(2);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto q = p.at(i);
      stream_insert(s, q);
      seen[static_cast<std::size_t>(q.color)].push_back(q);
      const auto& cc = s.color_state(q.color);
      ASSERT_LE(cc.centers.size(), k_prime);
      if (cc.r > 0) {
        for (std::size_t a = 0; a < cc.centers.size(); ++a) {
          for (std::size_t b = a + 1; b < cc.centers.size(); ++b) {
            ASSERT_GT(distance(cc.centers[a].coords, cc.centers[b].coords), 2 * cc.r);
          }
        }
      }
      if (i % 37 == 0) {
        EXPECT_LE(coverage(seen[static_cast<std::size_t>(q.color)], cc), 4 * cc.r + 1e-12);
      }
    }
    EXPECT_LE(s.stored(), 2 * k_prime);
  }
}

TEST(Streaming, WithinEightTimesOptimalKCenter) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = random_points(300 + seed, 12, 2, 1);
    const std::size_t k_prime = 2 + seed % 3;
    StreamState s(1, k_prime);
    std::vector<ColoredPoint> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
      seen.push_back(p.at(i));
      stream_insert(s, seen.back());
    }
    const double opt = brute_force_kcenter(p, k_prime);
    EXPECT_LE(coverage(seen, s.color_state(0)), 8 * opt + 1e-12) << seed;
  }
}

TEST(Streaming, Deterministic) {
  const auto p = random_points(11, 300, 3, 3);
  StreamState a(3, 4), b(3, 4);
  feed(a, p);
  feed(b, p);
  for (int j = 0; j < 3; ++j) {
    ASSERT_EQ(a.color_state(j).centers.size(), b.color_state(j).centers.size());
    EXPECT_EQ(a.color_state(j).r, b.color_state(j).r);
    for (std::size_t t = 0; t < a.color_state(j).centers.size(); ++t) {
      EXPECT_EQ(a.color_state(j).centers[t].index, b.color_state(j).centers[t].index);
    }
  }
}

TEST(StreamQuery, MatchesCoresetSolveWhenNothingIsDropped) {
  std::vector<ColoredPoint> pts;
  for (std::size_t i = 0; i < 12; ++i) {
    pts.push_back({i, {10.0 * static_cast<double>(i), 3.0 * static_cast<double>(i % 4)},
                   static_cast<int>(i % 3)});
  }
  const auto p = PointSet::from_points(pts, 3);
  const FairnessSpec spec{{2, 1, 2}};
  StreamState s(3, 4);
  feed(s, p);
  ASSERT_EQ(s.stored(), 12u);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 a(seed), b(seed);
    const auto q = stream_query(s, spec, MwuParams{}, SearchOptions{}, a);
    const auto c = mfd_with_coreset(p, spec, MwuParams{}, SearchOptions{}, b, 4);
    EXPECT_EQ(q.gamma, c.gamma);
    EXPECT_EQ(q.selected_ids, c.selected_ids);
    EXPECT_EQ(q.selected, c.selected_ids);
  }
}

TEST(StreamQuery, BruteForceableGuarantee) {
  const double eps = 0.5;
  MwuParams params;
  params.epsilon = eps;
  params.early_stop = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_points(1500 + seed, 12, 2, 2);
    const FairnessSpec spec{{2, 2}};
    const double gamma_star = brute_force_fairdiv(p, spec).gamma_star;
    StreamState s(2, 6);
    feed(s, p);
    std::mt19937_64 rng(seed);
    const auto sol = stream_query(s, spec, params, SearchOptions{}, rng);
    std::vector<std::size_t> pos(sol.selected.begin(), sol.selected.end());
    EXPECT_GE(diversity(p, pos), gamma_star / (2 * (1 + eps) * (1 + eps))) << seed;
  }
}

TEST(StreamQuery, InterleavedWithInserts) {
  const auto p = random_points(21, 200, 2, 2);
  const FairnessSpec spec{{2, 2}};
  StreamState s(2, 5);
  std::mt19937_64 rng(1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    stream_insert(s, p.at(i));
    if (i == 50 || i == 199) {
      const auto sol = stream_query(s, spec, MwuParams{}, SearchOptions{}, rng);
      EXPECT_GE(sol.selected.size(), 4u);
      for (auto id : sol.selected) EXPECT_LE(id, i);
    }
  }
}

TEST(StreamQuery, ShortSynopsisIsReported) {
  StreamState s(2, 3);
  stream_insert(s, {0, {0.0}, 0});
  stream_insert(s, {1, {1.0}, 1});
  std::mt19937_64 rng(0);
  try {
    stream_query(s, FairnessSpec{{2, 1}}, MwuParams{}, SearchOptions{}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSpecUnsatisfiableOnSynopsis);
  }
}

}  // namespace
}  // namespace fairdiv
