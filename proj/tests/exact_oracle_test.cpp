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
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fairdiv/error.hpp"
#include "fairdiv/exact_oracle.hpp"
#include "fixtures.hpp"

namespace fairdiv {
namespace {

using testing::fix_a;
using testing::make_points;
using testing::random_points;

// Plain enumeration of every subset, no pruning.
double naive_fairdiv(const PointSet& p, const FairnessSpec& spec) {
  const std::size_t n = p.size();
  double best = -1.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> counts(spec.per_color.size(), 0);
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        ++counts[static_cast<std::size_t>(p.color(i))];
        s.push_back(i);
      }
    }
    bool ok = true;
    for (std::size_t j = 0; j < counts.size(); ++j) ok = ok && counts[j] >= spec.per_color[j];
    if (ok) best = std::max(best, diversity(p, s));
  }
  return best;
}

TEST(BruteForceFairDiv, FixA) {
  const auto one = brute_force_fairdiv(fix_a(), FairnessSpec{{1, 1}});
  EXPECT_DOUBLE_EQ(one.gamma_star, 6.0);
  EXPECT_EQ(one.witness, (std::vector<std::size_t>{0, 3}));
  EXPECT_DOUBLE_EQ(brute_force_fairdiv(fix_a(), FairnessSpec{{2, 2}}).gamma_star, 1.0);
}

TEST(BruteForceFairDiv, SinglePointIsUnbounded) {
  const auto p = make_points({{4.0, 4.0}}, {0});
  EXPECT_TRUE(std::isinf(brute_force_fairdiv(p, FairnessSpec{{1}}).gamma_star));
}

TEST(BruteForceFairDiv, AgreesWithNaiveEnumeration) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto p = random_points(seed, 6 + seed % 7, 1 + seed % 3, 2);
    const FairnessSpec spec{{1 + seed % 2, 1 + seed % 3}};
    const auto res = brute_force_fairdiv(p, spec);
    EXPECT_DOUBLE_EQ(res.gamma_star, naive_fairdiv(p, spec)) << seed;
    EXPECT_DOUBLE_EQ(diversity(p, res.witness), res.gamma_star);
  }
}

TEST(BruteForceFairDiv, PermutationInvariant) {
  const auto p = random_points(3, 12, 2, 3);
  const FairnessSpec spec{{2, 1, 2}};
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(3);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<ColoredPoint> shuffled;
  for (auto i : order) shuffled.push_back(p.at(i));
  const auto q = PointSet::from_points(shuffled, 3);
  const auto a = brute_force_fairdiv(p, spec);
  const auto b = brute_force_fairdiv(q, spec);
  EXPECT_EQ(a.gamma_star, b.gamma_star);
}

TEST(BruteForceFairDiv, Errors) {
  try {
    brute_force_fairdiv(random_points(1, 19, 2, 2), FairnessSpec{{1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kOracleTooLarge);
  }
  try {
    brute_force_fairdiv(fix_a(), FairnessSpec{{3, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSpecUnsatisfiable);
  }
}

TEST(BruteForceKCenter, SmallCases) {
  const auto line = make_points({{0}, {1}, {5}, {6}}, {0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(brute_force_kcenter(line, 2), 1.0);
  EXPECT_DOUBLE_EQ(brute_force_kcenter(line, 4), 0.0);
  const auto pair = make_points({{0}, {10}}, {0, 0});
  EXPECT_DOUBLE_EQ(brute_force_kcenter(pair, 1), 10.0);
  try {
    brute_force_kcenter(random_points(1, 13, 2, 1), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kOracleTooLarge);
  }
}

TEST(ReferenceWeights, UniformHOnFixA) {
  const std::vector<double> h(4, 0.25);
  const auto w = reference_cover_weights(fix_a(), h, 6.0, 0.5);
  for (double v : w) EXPECT_DOUBLE_EQ(v, 0.5);
  const std::vector<double> zero(4, 0.0);
  for (double v : reference_cover_weights(fix_a(), zero, 6.0, 0.5)) EXPECT_EQ(v, 0.0);
}

TEST(ReferenceWeights, DrawnSixPointCovers) {
  const std::vector<double> h{0.1, 0.1, 0.1, 0.1, 0.4, 0.2};
  const auto w = reference_weights_from_covers(testing::six_point_drawn_covers(), h);
  const std::vector<double> want{0.4, 0.5, 0.9, 0.1, 0.5, 0.4};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(w[i], want[i], 1e-12);
}

TEST(VerifyFractional, FeasiblePoint) {
  const std::vector<double> x{1, 0, 0, 1};
  const auto rep = verify_fractional(fix_a(), x, FairnessSpec{{1, 1}}, 6.0, 0.5);
  EXPECT_TRUE(rep.pass);
  EXPECT_DOUBLE_EQ(rep.max_cover_sum, 1.0);
}

TEST(VerifyFractional, AllOnesBreaksCovers) {
  const std::vector<double> x(4, 1.0);
  const auto rep = verify_fractional(fix_a(), x, FairnessSpec{{1, 1}}, 6.0, 0.5);
  EXPECT_FALSE(rep.pass);
  EXPECT_DOUBLE_EQ(rep.max_cover_sum, 2.0);
  EXPECT_DOUBLE_EQ(rep.max_cover_violation, 0.5);
}

TEST(VerifyFractional, ZeroFailsFairness) {
  const std::vector<double> x(4, 0.0);
  const auto rep = verify_fractional(fix_a(), x, FairnessSpec{{1, 1}}, 6.0, 0.5);
  EXPECT_FALSE(rep.pass);
  EXPECT_DOUBLE_EQ(rep.fairness_slack[0], -1.0);
  EXPECT_EQ(rep.max_cover_violation, 0.0);
}

TEST(VerifyFractional, BoxViolation) {
  const std::vector<double> x{1.2, 0, 0, 1};
  const auto rep = verify_fractional(fix_a(), x, FairnessSpec{{1, 1}}, 6.0, 0.5);
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.max_box_violation, 0.2, 1e-12);
}

}  // namespace
}  // namespace fairdiv
