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

#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fairdiv/candidates.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/log.hpp"
#include "fairdiv/mwu.hpp"
#include "fairdiv/point_set.hpp"
#include "fairdiv/rounding.hpp"
#include "fairdiv/spatial_index.hpp"

namespace fairdiv {

enum class SearchMode { kBinary, kDecay };

struct SearchOptions {
  SearchMode search = SearchMode::kDecay;
  double decay_factor = 0.85;
  std::size_t decay_steps = 200;
  // Binary search uses exact distances up to this many points, WSPD above.
  std::size_t exact_limit = kExactCandidateLimit;
};

struct Solution {
  std::vector<std::size_t> selected;  // positions in the solved point set
  std::vector<PointId> selected_ids;  // source ids of the same points
  double gamma = 0.0;                 // certified value
  double diversity = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> per_color_counts;
  std::vector<double> fractional;  // averaged MWU solution at gamma
  std::size_t iterations_used = 0;
  std::size_t gammas_tried = 0;
  std::size_t round_attempts = 1;
  double coreset_seconds = 0.0;
  double solve_seconds = 0.0;
  double round_seconds = 0.0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

inline void finish_solution(const PointSet& points, Solution& sol) {
  sol.selected_ids.clear();
  for (std::size_t i : sol.selected) sol.selected_ids.push_back(points.source_id(i));
  sol.per_color_counts.assign(static_cast<std::size_t>(points.num_colors()), 0);
  for (std::size_t i : sol.selected) ++sol.per_color_counts[static_cast<std::size_t>(points.color(i))];
  sol.diversity = diversity(points, sol.selected);
}

// k == 1: any single point of the requested color is optimal.
inline std::optional<Solution> trivial_solution(const PointSet& points, const FairnessSpec& spec) {
  if (spec.total() != 1) return std::nullopt;
  Solution sol;
  for (std::size_t j = 0; j < spec.per_color.size(); ++j) {
    if (spec.per_color[j] == 0) continue;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (static_cast<std::size_t>(points.color(i)) == j) {
        sol.selected.push_back(i);
        break;
      }
    }
  }
  sol.fractional.assign(points.size(), 0.0);
  for (std::size_t i : sol.selected) sol.fractional[i] = 1.0;
  finish_solution(points, sol);
  return sol;
}

}  // namespace detail

struct CertifiedGamma {
  double gamma = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
  std::size_t gammas_tried = 0;
};

// Finds the gamma to round at. Binary mode walks the candidate set as a
// binary search that keeps the largest feasible index; decay mode walks
// gamma_max, gamma_max * f, ... from the color-blind Gonzalez bound and stops
// at the first feasible value.
inline CertifiedGamma certify_gamma(SpatialIndex& index, const PointSet& points,
                                    const FairnessSpec& spec, const MwuParams& params,
                                    const SearchOptions& options) {
  CertifiedGamma out;
  auto attempt = [&](double gamma) {
    auto res = solve_feasibility(index, points, gamma, spec, params);
    out.iterations += res.iterations;
    ++out.gammas_tried;
    std::ostringstream msg;
    msg << "gamma " << gamma << (res.feasible ? " feasible" : " infeasible") << " after "
        << res.iterations << " oracle calls";
    log(LogLevel::kDebug, msg.str());
    return res;
  };

  if (options.search == SearchMode::kBinary) {
    const auto candidates = wspd_candidates(points, params.epsilon, options.exact_limit);
    const auto& values = candidates.values;
    std::size_t lo = 0;
    std::size_t hi = values.size() - 1;
    std::optional<std::vector<double>> lo_x;
    while (lo != hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      auto res = attempt(values[mid]);
      if (res.feasible) {
        lo = mid;
        lo_x = std::move(res.x);
      } else {
        hi = mid - 1;
      }
    }
    if (!lo_x) {
      auto res = attempt(values[lo]);
      if (!res.feasible) fail(Errc::kNoFeasibleGamma, "smallest candidate distance is infeasible");
      lo_x = std::move(res.x);
    }
    out.gamma = values[lo];
    out.x = std::move(*lo_x);
    return out;
  }

  const double upper = gonzalez_upper_bound(points, spec.total());
  double smallest_tried = std::numeric_limits<double>::infinity();
  for (double gamma : decay_schedule(upper, options.decay_factor, options.decay_steps)) {
    auto res = attempt(gamma);
    if (res.feasible) {
      out.gamma = gamma;
      out.x = std::move(res.x);
      return out;
    }
    smallest_tried = gamma;
  }
  fail(Errc::kNoFeasibleGamma, "no feasible gamma down to " + std::to_string(smallest_tried));
}

// Fair diversification through the MWU relaxation and randomized rounding.
// Selected points are pairwise at least gamma / (2(1+eps)) apart, and each
// color j receives at least k_j / (1+eps) points in expectation when g = 1.
template <class Urbg>
Solution mfd(const PointSet& points, const FairnessSpec& spec, const MwuParams& params,
             const SearchOptions& options, Urbg& rng) {
  params.validate();
  check_spec(spec, points);
  if (auto trivial = detail::trivial_solution(points, spec)) return *trivial;

  auto start = detail::Clock::now();
  SpatialIndex index(points, params.epsilon);
  auto cert = certify_gamma(index, points, spec, params, options);
  Solution sol;
  sol.solve_seconds = detail::seconds_since(start);
  sol.gamma = cert.gamma;
  sol.iterations_used = cert.iterations;
  sol.gammas_tried = cert.gammas_tried;

  start = detail::Clock::now();
  sol.selected = round_solution(index, cert.x, cert.gamma, rng);
  sol.round_seconds = detail::seconds_since(start);
  sol.fractional = std::move(cert.x);
  detail::finish_solution(points, sol);
  return sol;
}

// Same search, then sparsification and repeated rounding so that every color
// reaches (1-eps) k_j / (1+eps) with probability at least 1 - delta.
template <class Urbg>
Solution mfd_high_prob(const PointSet& points, const FairnessSpec& spec, const MwuParams& params,
                       const SearchOptions& options, double delta, Urbg& rng) {
  params.validate();
  check_spec(spec, points);
  if (auto trivial = detail::trivial_solution(points, spec)) return *trivial;

  auto start = detail::Clock::now();
  SpatialIndex index(points, params.epsilon);
  auto cert = certify_gamma(index, points, spec, params, options);
  auto y = sparsify_high_prob(points, cert.x, cert.gamma, params.epsilon);
  Solution sol;
  sol.solve_seconds = detail::seconds_since(start);
  sol.gamma = cert.gamma;
  sol.iterations_used = cert.iterations;
  sol.gammas_tried = cert.gammas_tried;

  start = detail::Clock::now();
  auto round = round_high_prob(index, points, y, cert.gamma, delta, spec, rng);
  sol.round_seconds = detail::seconds_since(start);
  sol.selected = std::move(round.selected);
  sol.round_attempts = round.attempts;
  sol.fractional = std::move(y);
  detail::finish_solution(points, sol);
  return sol;
}

}  // namespace fairdiv
