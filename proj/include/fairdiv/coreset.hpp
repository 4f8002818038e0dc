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
#include <span>
#include <string>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/gonzalez.hpp"
#include "fairdiv/mfd.hpp"
#include "fairdiv/mwu.hpp"
#include "fairdiv/point_set.hpp"

namespace fairdiv {

// Any routine with this shape can build the coreset; it must be a constant
// factor approximation of discrete k'-center on the given positions.
struct GonzalezKCenter {
  KCenterResult operator()(const PointSet& points, std::span<const std::size_t> positions,
                           std::size_t k_prime) const {
    return gonzalez_kcenter(points, positions, k_prime);
  }
};

struct Coreset {
  PointSet points;                  // keeps source ids and colors
  std::vector<std::size_t> origin;  // coreset position -> input position
};

// Union over colors of k'-center solutions on each color class, in ascending
// input order.
template <class KCenterFn = GonzalezKCenter>
Coreset build_coreset(const PointSet& points, const FairnessSpec& spec, std::size_t k_prime,
                      KCenterFn&& kcenter = {}) {
  const std::size_t max_kj =
      spec.per_color.empty() ? 0 : *std::max_element(spec.per_color.begin(), spec.per_color.end());
  if (k_prime < max_kj || k_prime == 0) {
    fail(Errc::kSpecUnsatisfiableOnCoreset,
         "k' = " + std::to_string(k_prime) + " is below max k_j = " + std::to_string(max_kj));
  }
  Coreset out;
  const auto members = points.members_by_color();
  for (std::size_t j = 0; j < members.size(); ++j) {
    const auto& ids = members[j];
    if (ids.empty()) continue;
    auto centers = kcenter(points, std::span<const std::size_t>(ids), k_prime).center_ids;
    // Coincident points can leave a color short of k_j centers.
    const std::size_t kj = j < spec.per_color.size() ? spec.per_color[j] : 0;
    for (std::size_t t = 0; centers.size() < kj && t < ids.size(); ++t) {
      if (std::find(centers.begin(), centers.end(), ids[t]) == centers.end()) {
        centers.push_back(ids[t]);
      }
    }
    out.origin.insert(out.origin.end(), centers.begin(), centers.end());
  }
  std::sort(out.origin.begin(), out.origin.end());
  out.points = points.subset(out.origin);
  return out;
}

// k' = eps^(-2d) * k, the size that carries the (1+eps) preservation bound.
inline std::size_t theory_k_prime(double epsilon, std::size_t dim, std::size_t k) {
  const double factor = std::pow(1.0 / epsilon, 2.0 * static_cast<double>(dim));
  const double v = std::ceil(factor * static_cast<double>(k));
  return v > 1e15 ? static_cast<std::size_t>(1e15) : static_cast<std::size_t>(v);
}

namespace detail {

template <class Solve, class KCenterFn>
Solution solve_on_coreset(const PointSet& points, const FairnessSpec& spec, std::size_t k_prime,
                          KCenterFn&& kcenter, Solve&& solve) {
  check_spec(spec, points);
  if (k_prime == 0) k_prime = spec.total();
  const auto start = Clock::now();
  Coreset core = build_coreset(points, spec, k_prime, std::forward<KCenterFn>(kcenter));
  const double coreset_seconds = seconds_since(start);
  Solution sol = solve(core.points);
  for (auto& i : sol.selected) i = core.origin[i];
  std::vector<double> lifted(points.size(), 0.0);
  for (std::size_t t = 0; t < core.origin.size() && t < sol.fractional.size(); ++t) {
    lifted[core.origin[t]] = sol.fractional[t];
  }
  sol.fractional = std::move(lifted);
  sol.coreset_seconds = coreset_seconds;
  return sol;
}

}  // namespace detail

// Coreset with k' centers per color (k' = k when zero), then mfd on it.
// Selected positions and ids refer to the input point set.
template <class Urbg, class KCenterFn = GonzalezKCenter>
Solution mfd_with_coreset(const PointSet& points, const FairnessSpec& spec, const MwuParams& params,
                          const SearchOptions& options, Urbg& rng, std::size_t k_prime = 0,
                          KCenterFn&& kcenter = {}) {
  return detail::solve_on_coreset(points, spec, k_prime, std::forward<KCenterFn>(kcenter),
                                  [&](const PointSet& core) {
                                    return mfd(core, spec, params, options, rng);
                                  });
}

template <class Urbg, class KCenterFn = GonzalezKCenter>
Solution mfd_high_prob_with_coreset(const PointSet& points, const FairnessSpec& spec,
                                    const MwuParams& params, const SearchOptions& options,
                                    double delta, Urbg& rng, std::size_t k_prime = 0,
                                    KCenterFn&& kcenter = {}) {
  return detail::solve_on_coreset(points, spec, k_prime, std::forward<KCenterFn>(kcenter),
                                  [&](const PointSet& core) {
                                    return mfd_high_prob(core, spec, params, options, delta, rng);
                                  });
}

}  // namespace fairdiv
