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
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/point_set.hpp"
#include "fairdiv/spatial_index.hpp"

namespace fairdiv {

// Lower bounds k_j on the number of selected points of each color.
struct FairnessSpec {
  std::vector<std::size_t> per_color;

  std::size_t total() const {
    return std::accumulate(per_color.begin(), per_color.end(), std::size_t{0});
  }
  int num_colors() const { return static_cast<int>(per_color.size()); }
};

// Throws ColorDeficit when some color has fewer than k_j points.
inline void check_spec(const FairnessSpec& spec, const PointSet& points) {
  if (spec.num_colors() != points.num_colors()) {
    fail(Errc::kInvalidArgument, "fairness spec has " + std::to_string(spec.num_colors()) +
                                     " colors, dataset has " + std::to_string(points.num_colors()));
  }
  if (spec.total() < 1) fail(Errc::kInvalidArgument, "fairness spec must request k >= 1 points");
  const auto counts = points.color_counts();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (spec.per_color[j] > counts[j]) {
      fail(Errc::kColorDeficit, "color " + std::to_string(j) + " has " +
                                    std::to_string(counts[j]) + " points, " +
                                    std::to_string(spec.per_color[j]) + " required");
    }
  }
}

struct MwuParams {
  double epsilon = 0.25;
  // Fraction g of the theoretical iteration budget that is executed.
  double early_stop = 0.3;
  // Constant c in T = ceil(g * c * k / eps^2 * ln n).
  double iteration_constant = 8.0;
  double feasibility_tol = 1e-9;
  // When nonzero, replaces the computed budget.
  std::size_t fixed_iterations = 0;

  std::size_t iterations(std::size_t n, std::size_t k) const {
    if (fixed_iterations > 0) return fixed_iterations;
    const double budget = early_stop * (iteration_constant * static_cast<double>(k) /
                                        (epsilon * epsilon)) *
                          std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(budget)));
  }

  void validate() const {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) fail(Errc::kInvalidArgument, "epsilon must lie in (0, 1]");
    if (!(early_stop > 0.0 && early_stop <= 1.0)) fail(Errc::kInvalidArgument, "g must lie in (0, 1]");
    if (!(iteration_constant > 0.0)) fail(Errc::kInvalidArgument, "iteration constant must be positive");
  }
};

// Query radius whose covers stand in for the gamma/2 balls of the exact LP.
inline double cover_radius(double gamma, double epsilon) {
  return gamma / (2.0 * (1.0 + epsilon));
}

inline std::vector<double> uniform_probability(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

struct OracleResult {
  std::vector<double> x;              // 0/1 indicator
  std::vector<std::size_t> selected;  // ids with x = 1, grouped by color
  double value = 0.0;                 // sum of w_i over selected ids
  bool feasible = false;
};

// Picks, per color j, the k_j ids of that color with the smallest weight
// (ties to the smaller id). This minimizes sum w_i x_i over 0/1 vectors with
// exactly k_j ids per color.
inline OracleResult select_lightest(std::span<const double> weights,
                                    const std::vector<std::vector<std::size_t>>& members,
                                    const FairnessSpec& spec, double tol = 1e-9) {
  OracleResult out;
  out.x.assign(weights.size(), 0.0);
  out.selected.reserve(spec.total());
  std::vector<std::size_t> scratch;
  for (std::size_t j = 0; j < members.size(); ++j) {
    const std::size_t kj = spec.per_color[j];
    if (kj == 0) continue;
    if (kj > members[j].size()) {
      fail(Errc::kColorDeficit, "color " + std::to_string(j) + " cannot supply " +
                                    std::to_string(kj) + " points");
    }
    scratch = members[j];
    auto lighter = [&](std::size_t a, std::size_t b) {
      return weights[a] < weights[b] || (weights[a] == weights[b] && a < b);
    };
    if (kj < scratch.size()) {
      std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(kj - 1),
                       scratch.end(), lighter);
    }
    for (std::size_t t = 0; t < kj; ++t) {
      out.x[scratch[t]] = 1.0;
      out.selected.push_back(scratch[t]);
    }
  }
  std::sort(out.selected.begin(), out.selected.end());
  for (std::size_t i : out.selected) out.value += weights[i];
  out.feasible = out.value <= 1.0 + tol;
  return out;
}

// One value of gamma: the covers of every point, the per-color member lists
// and the scratch needed by the oracle and the update. Owns the index
// annotations (agg_sum, flow_sum) while alive.
class MwuStep {
 public:
  MwuStep(SpatialIndex& index, const PointSet& points, const FairnessSpec& spec, double gamma)
      : index_(index),
        spec_(spec),
        k_(spec.total()),
        covers_(index, cover_radius(gamma, index.epsilon())),
        members_(points.members_by_color()),
        weights_(points.size(), 0.0),
        rows_(points.size(), 0.0) {
    if (index.size() != points.size()) fail(Errc::kInvalidArgument, "index/point set size mismatch");
    check_spec(spec, points);
  }

  // Coefficients w_i of h^T A x, then the cheapest x in the trivial polytope.
  OracleResult oracle(std::span<const double> h, double tol) {
    auto agg = index_.agg_sums();
    std::fill(agg.begin(), agg.end(), 0.0);
    for (std::size_t l = 0; l < h.size(); ++l) {
      const double hl = h[l];
      for (NodeId u : covers_.of(l)) agg[u] += hl;
    }
    index_.all_path_sums(weights_);
    return select_lightest(weights_, members_, spec_, tol);
  }

  // Rows R_l = A_l x, then h[l] *= 1 + (eps/4)(R_l - 1)/k, renormalized.
  void update(std::span<const double> x, std::span<double> h) {
    auto flow = index_.flow_sums();
    std::fill(flow.begin(), flow.end(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > 0.0) index_.add_along_path(i, x[i]);
    }
    const double step = index_.epsilon() / 4.0;
    const double inv_k = 1.0 / static_cast<double>(k_);
    double total = 0.0;
    for (std::size_t l = 0; l < h.size(); ++l) {
      double r = 0.0;
      for (NodeId u : covers_.of(l)) r += flow[u];
      rows_[l] = r;
      h[l] *= 1.0 + step * (r - 1.0) * inv_k;
      total += h[l];
    }
    for (double& v : h) v /= total;
  }

  std::span<const double> weights() const { return weights_; }
  std::span<const double> rows() const { return rows_; }
  const CoverCache& covers() const { return covers_; }

 private:
  SpatialIndex& index_;
  FairnessSpec spec_;
  std::size_t k_;
  CoverCache covers_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<double> weights_;
  std::vector<double> rows_;
};

// Single oracle call with on-the-fly canonical queries. Returns the 0/1
// vector when sum w_i x_i <= 1 + tol, nothing otherwise.
inline std::optional<std::vector<double>> oracle(SpatialIndex& index, const PointSet& points,
                                                 std::span<const double> h, double gamma,
                                                 const FairnessSpec& spec, double tol = 1e-9) {
  if (!(gamma > 0.0)) fail(Errc::kInvalidArgument, "gamma must be positive");
  check_spec(spec, points);
  index.clear_annotations();
  const double r = cover_radius(gamma, index.epsilon());
  for (std::size_t l = 0; l < points.size(); ++l) index.add_to_canonical(points.point(l), r, h[l]);
  std::vector<double> w(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) w[i] = index.path_sum(i);
  auto res = select_lightest(w, points.members_by_color(), spec, tol);
  if (!res.feasible) return std::nullopt;
  return std::move(res.x);
}

// Multiplicative update of h from a feasible oracle output.
inline std::vector<double> update(SpatialIndex& index, const PointSet& points,
                                  std::span<const double> x, double gamma,
                                  std::span<const double> h, std::size_t k) {
  auto flow = index.flow_sums();
  std::fill(flow.begin(), flow.end(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) index.add_along_path(i, x[i]);
  }
  const double r = cover_radius(gamma, index.epsilon());
  const double step = index.epsilon() / 4.0;
  std::vector<double> out(h.begin(), h.end());
  double total = 0.0;
  for (std::size_t l = 0; l < points.size(); ++l) {
    const double row = index.canonical_flow_sum(points.point(l), r);
    out[l] *= 1.0 + step * (row - 1.0) / static_cast<double>(k);
    total += out[l];
  }
  for (double& v : out) v /= total;
  return out;
}

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> x;       // averaged oracle outputs when feasible
  std::size_t iterations = 0;  // oracle calls made

  explicit operator bool() const { return feasible; }
};

// MWU over the modified LP at one gamma: T rounds of oracle + update from a
// uniform h; the first infeasible oracle call aborts.
inline FeasibilityResult solve_feasibility(SpatialIndex& index, const PointSet& points,
                                           double gamma, const FairnessSpec& spec,
                                           const MwuParams& params) {
  params.validate();
  if (!(gamma > 0.0)) fail(Errc::kInvalidArgument, "gamma must be positive");
  if (std::abs(params.epsilon - index.epsilon()) > 0.0) {
    fail(Errc::kInvalidArgument, "index epsilon differs from solver epsilon");
  }
  MwuStep step(index, points, spec, gamma);
  const std::size_t n = points.size();
  const std::size_t rounds = params.iterations(n, spec.total());
  std::vector<double> h = uniform_probability(n);
  std::vector<std::uint32_t> counts(n, 0);

  FeasibilityResult out;
  for (std::size_t t = 0; t < rounds; ++t) {
    auto res = step.oracle(h, params.feasibility_tol);
    ++out.iterations;
    if (!res.feasible) return out;
    for (std::size_t i : res.selected) ++counts[i];
    if (t + 1 < rounds) step.update(res.x, h);
  }
  out.feasible = true;
  out.x.resize(n);
  const double inv = 1.0 / static_cast<double>(rounds);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = static_cast<double>(counts[i]) * inv;
  return out;
}

}  // namespace fairdiv
