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
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fairdiv/error.hpp"
#include "fairdiv/exact_oracle.hpp"
#include "fairdiv/spatial_index.hpp"
#include "fixtures.hpp"

namespace fairdiv {
namespace {

using testing::fix_a;
using testing::make_points;
using testing::random_points;

std::vector<std::size_t> brute_ball(const PointSet& p, std::span<const double> c, double r) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (distance(p.point(i), c) <= r) out.push_back(i);
  }
  return out;
}

TEST(SpatialIndex, SinglePointIsALeaf) {
  const auto p = make_points({{3.0, 4.0}}, {0});
  SpatialIndex index(p, 0.5);
  EXPECT_EQ(index.node_count(), 1u);
  EXPECT_EQ(index.height(), 0u);
  EXPECT_TRUE(index.is_leaf(index.root()));
}

TEST(SpatialIndex, RootSplitSeparatesPairsOnALine) {
  SpatialIndex index(fix_a(), 0.5);
  EXPECT_EQ(index.height(), 2u);
  auto l = index.node_points(index.left(index.root()));
  auto r = index.node_points(index.right(index.root()));
  std::vector<std::size_t> lv(l.begin(), l.end()), rv(r.begin(), r.end());
  std::sort(lv.begin(), lv.end());
  std::sort(rv.begin(), rv.end());
  EXPECT_EQ(lv, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(rv, (std::vector<std::size_t>{2, 3}));
}

TEST(SpatialIndex, StructuralInvariants) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto p = random_points(40 + d, 256, d, 2);
    SpatialIndex index(p, 0.5);
    EXPECT_LE(index.height(), 9u);
    for (NodeId u = 0; u < index.node_count(); ++u) {
      for (std::size_t t = 0; t < d; ++t) EXPECT_LE(index.box_lo(u)[t], index.box_hi(u)[t]);
      if (index.is_leaf(u)) {
        ASSERT_EQ(index.node_points(u).size(), 1u);
        const auto id = index.node_points(u)[0];
        EXPECT_EQ(index.leaf_of(id), u);
        for (std::size_t t = 0; t < d; ++t) {
          EXPECT_LE(index.box_lo(u)[t], p.point(id)[t]);
          EXPECT_GE(index.box_hi(u)[t], p.point(id)[t]);
        }
        continue;
      }
      for (NodeId c : {index.left(u), index.right(u)}) {
        EXPECT_EQ(index.parent(c), u);
        for (std::size_t t = 0; t < d; ++t) {
          EXPECT_LE(index.box_lo(u)[t], index.box_lo(c)[t]);
          EXPECT_GE(index.box_hi(u)[t], index.box_hi(c)[t]);
        }
      }
    }
  }
}

TEST(SpatialIndex, BuildErrors) {
  PointSet empty(2, 1);
  try {
    SpatialIndex index(empty, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kEmptyDataset);
  }
  EXPECT_THROW(SpatialIndex(fix_a(), 0.0), Error);
  EXPECT_THROW(SpatialIndex(fix_a(), 1.5), Error);
}

TEST(SpatialIndex, DuplicatesLandInDistinctLeaves) {
  const auto p = make_points({{1.0}, {1.0}, {1.0}}, {0, 0, 0});
  SpatialIndex index(p, 0.5);
  std::vector<NodeId> leaves{index.leaf_of(0), index.leaf_of(1), index.leaf_of(2)};
  std::sort(leaves.begin(), leaves.end());
  EXPECT_EQ(std::unique(leaves.begin(), leaves.end()), leaves.end());
  const std::vector<double> c{1.0};
  EXPECT_EQ(index.covered_points(c, 0.0), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(CanonicalNodes, InflatedRadiusExcludesFarPoint) {
  const auto p = make_points({{0}, {1}, {5}}, {0, 0, 0});
  SpatialIndex index(p, 0.5);
  const std::vector<double> c{0.0};
  EXPECT_EQ(index.covered_points(c, 1.2), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(index.covered_points(c, 0.0), (std::vector<std::size_t>{0}));
}

TEST(CanonicalNodes, NegativeOrNonFiniteRadiusIsRejected) {
  SpatialIndex index(fix_a(), 0.5);
  const std::vector<double> c{0.0};
  try {
    index.canonical_nodes(c, -1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidRadius);
  }
  EXPECT_THROW(index.canonical_nodes(c, std::numeric_limits<double>::infinity()), Error);
  const std::vector<double> c2{0.0, 0.0};
  EXPECT_THROW(index.canonical_nodes(c2, 1.0), Error);
}

TEST(CanonicalNodes, SandwichAndDisjointness) {
  std::mt19937_64 rng(11);
  int violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const double eps = std::array<double, 3>{0.1, 0.5, 1.0}[trial % 3];
    const auto p = random_points(1000 + trial, 20 + trial % 200, d, 1);
    SpatialIndex index(p, eps);
    std::uniform_real_distribution<double> u(-2.0, 12.0), rr(0.0, 6.0);
    std::vector<double> c(d);
    for (auto& v : c) v = u(rng);
    const double r = rr(rng);
    const auto nodes = index.canonical_nodes(c, r);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (std::size_t b = 0; b < nodes.size(); ++b) {
        if (a != b && (index.is_ancestor(nodes[a], nodes[b]) || nodes[a] == nodes[b])) ++violations;
      }
    }
    const auto covered = index.covered_points(c, r);
    const auto inner = brute_ball(p, c, r);
    const auto outer = brute_ball(p, c, (1.0 + eps) * r);
    if (!std::includes(covered.begin(), covered.end(), inner.begin(), inner.end())) ++violations;
    if (!std::includes(outer.begin(), outer.end(), covered.begin(), covered.end())) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(CanonicalNodes, SixPointLayoutCovers) {
  const auto p = testing::six_point_layout();
  SpatialIndex index(p, testing::kSixEpsilon);
  const double r = testing::kSixGamma / (2.0 * (1.0 + testing::kSixEpsilon));
  const std::vector<std::vector<std::size_t>> expected{{0, 1, 2}, {0, 1, 2, 5}, {0, 1, 2, 4, 5},
                                                       {3},       {2, 4},       {1, 2, 5}};
  for (std::size_t l = 0; l < p.size(); ++l) {
    EXPECT_EQ(index.covered_points(p.point(l), r), expected[l]) << "point " << l;
  }
}

TEST(Annotations, ClearResetsEverything) {
  SpatialIndex index(fix_a(), 0.5);
  const std::vector<double> c{0.0};
  index.add_to_canonical(c, 2.0, 1.0);
  index.add_along_path(2, 3.0);
  index.init_sampling(std::vector<double>{1, 1, 1, 1});
  index.deactivate_path(1);
  index.clear_annotations();
  index.clear_annotations();
  for (NodeId u = 0; u < index.node_count(); ++u) {
    EXPECT_EQ(index.agg_sum(u), 0.0);
    EXPECT_EQ(index.flow_sum(u), 0.0);
    EXPECT_TRUE(index.active(u));
    EXPECT_EQ(index.subtree_mass(u), 0.0);
  }
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(index.path_sum(i), 0.0);
}

TEST(Annotations, FixAAggregation) {
  const auto p = fix_a();
  SpatialIndex index(p, 0.5);
  for (std::size_t l = 0; l < 4; ++l) index.add_to_canonical(p.point(l), 2.0, 0.25);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(index.path_sum(i), 0.5, 1e-12);
  std::vector<double> all(4);
  index.all_path_sums(all);
  for (double w : all) EXPECT_NEAR(w, 0.5, 1e-12);
}

TEST(Annotations, AggregationIsLinearAndZeroIsInert) {
  const auto p = random_points(5, 60, 2, 1);
  SpatialIndex a(p, 0.5), b(p, 0.5);
  const std::vector<double> c{5.0, 5.0};
  a.add_to_canonical(c, 3.0, 0.3);
  a.add_to_canonical(c, 3.0, 0.4);
  a.add_to_canonical(c, 3.0, 0.0);
  b.add_to_canonical(c, 3.0, 0.7);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(a.path_sum(i), b.path_sum(i), 1e-12);
}

TEST(Annotations, PathSumMatchesReference) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = random_points(seed, 80, 1 + seed % 3, 2);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> h(p.size());
    for (auto& v : h) v = u(rng);
    const double gamma = 3.0, eps = 0.5;
    SpatialIndex index(p, eps);
    for (std::size_t l = 0; l < p.size(); ++l) {
      index.add_to_canonical(p.point(l), gamma / (2 * (1 + eps)), h[l]);
    }
    const auto ref = reference_cover_weights(p, h, gamma, eps);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(index.path_sum(i), ref[i], 1e-9);
  }
}

TEST(Annotations, UnknownPoint) {
  SpatialIndex index(fix_a(), 0.5);
  try {
    index.path_sum(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kUnknownPoint);
  }
  EXPECT_THROW(index.add_along_path(9, 1.0), Error);
}

TEST(Flow, FixAUnitRows) {
  const auto p = fix_a();
  SpatialIndex index(p, 0.5);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(index.canonical_flow_sum(p.point(i), 2.0), 0.0);
  const std::vector<double> x{1, 0, 1, 0};
  for (std::size_t i = 0; i < 4; ++i) index.add_along_path(i, x[i]);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(index.canonical_flow_sum(p.point(i), 2.0), 1.0);
}

TEST(Flow, IsolatedPoint) {
  const auto p = make_points({{0.0, 0.0}, {100.0, 0.0}, {101.0, 0.0}}, {0, 0, 0});
  SpatialIndex index(p, 0.5);
  index.add_along_path(0, 1.0);
  EXPECT_EQ(index.canonical_flow_sum(p.point(0), 1.0), 1.0);
  EXPECT_EQ(index.canonical_flow_sum(p.point(1), 1.0), 0.0);
}

TEST(Sampling, ZeroMassIsExhausted) {
  SpatialIndex index(fix_a(), 0.5);
  index.init_sampling(std::vector<double>(4, 0.0));
  std::mt19937_64 rng(1);
  try {
    index.sample_remove(rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kExhaustedMass);
  }
}

TEST(Sampling, SinglePoint) {
  const auto p = make_points({{2.0}}, {0});
  SpatialIndex index(p, 0.5);
  index.init_sampling(std::vector<double>{1.0});
  std::mt19937_64 rng(3);
  EXPECT_EQ(index.sample_remove(rng), 0u);
  EXPECT_LE(index.remaining_mass(), kMassTolerance);
}

TEST(Sampling, FixAFirstDrawIsFair) {
  SpatialIndex index(fix_a(), 0.5);
  std::mt19937_64 rng(2024);
  int zero = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    index.init_sampling(std::vector<double>{1, 0, 1, 0});
    const auto id = index.sample_remove(rng);
    ASSERT_TRUE(id == 0 || id == 2);
    zero += id == 0;
  }
  EXPECT_NEAR(static_cast<double>(zero) / trials, 0.5, 0.02);
}

TEST(Sampling, MassStaysConsistent) {
  const auto p = random_points(8, 50, 2, 1);
  SpatialIndex index(p, 0.5);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(p.size());
  for (auto& v : w) v = u(rng);
  index.init_sampling(w);
  std::vector<bool> seen(p.size(), false);
  while (index.remaining_mass() > kMassTolerance) {
    const auto id = index.sample_remove(rng);
    ASSERT_FALSE(seen[id]);
    seen[id] = true;
    for (NodeId v = 0; v < index.node_count(); ++v) {
      ASSERT_GE(index.subtree_mass(v), 0.0);
      if (!index.is_leaf(v)) {
        ASSERT_NEAR(index.subtree_mass(v),
                    index.subtree_mass(index.left(v)) + index.subtree_mass(index.right(v)), 1e-9);
      }
    }
  }
}

// Sequences of two draws without replacement on five points, against the
// exact law, by chi-square.
TEST(Sampling, WithoutReplacementLaw) {
  const auto p = make_points({{0.0}, {1.0}, {2.0}, {3.0}, {4.0}}, {0, 0, 0, 0, 0});
  const std::vector<double> w{1, 2, 3, 4, 5};
  SpatialIndex index(p, 0.5);
  std::mt19937_64 rng(99);
  const int trials = 20000;
  std::vector<int> counts(25, 0);
  for (int t = 0; t < trials; ++t) {
    index.init_sampling(w);
    const auto a = index.sample_remove(rng);
    const auto b = index.sample_remove(rng);
    ++counts[a * 5 + b];
  }
  double chi2 = 0.0;
  int cells = 0;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = 0; b < 5; ++b) {
      if (a == b) {
        EXPECT_EQ(counts[a * 5 + b], 0);
        continue;
      }
      const double prob = w[a] / 15.0 * w[b] / (15.0 - w[a]);
      const double expected = prob * trials;
      chi2 += (counts[a * 5 + b] - expected) * (counts[a * 5 + b] - expected) / expected;
      ++cells;
    }
  }
  // 19 degrees of freedom; 43.8 is the 0.999 quantile.
  EXPECT_EQ(cells, 20);
  EXPECT_LT(chi2, 43.8);
}

TEST(Sampling, DeactivatedPointBlocksBalls) {
  const auto p = random_points(21, 120, 2, 1);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    SpatialIndex index(p, 0.5);
    const std::size_t q = static_cast<std::size_t>(trial) % p.size();
    index.deactivate_path(q);
    const std::vector<double> c{u(rng), u(rng)};
    const double r = u(rng) / 3.0;
    const auto covered = index.covered_points(c, r);
    if (std::binary_search(covered.begin(), covered.end(), q)) {
      EXPECT_FALSE(index.region_free(c, r));
    }
  }
}

}  // namespace
}  // namespace fairdiv
