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
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/point_set.hpp"

namespace fairdiv {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Remaining sampling mass at or below this is treated as exhausted.
inline constexpr double kMassTolerance = 1e-12;

// Median-split binary space partition over a point set.
//
// Every leaf holds exactly one point. Each node stores the tight bounding box
// of the points below it, and the points of a subtree occupy a contiguous
// range of `order()`. Nodes are numbered in preorder, so a parent always has
// a smaller id than its children and the nodes of a subtree form the id range
// [u, u + subtree_size).
//
// Four annotation slots hang off every node:
//   agg_sum       sums pushed onto canonical nodes of a ball
//   flow_sum      sums pushed along root-to-leaf paths
//   active        cleared along the path of every sampled point
//   subtree_mass  remaining sampling weight below the node
//
// Mutating calls need exclusive access; const queries may run concurrently.
class SpatialIndex {
 public:
  SpatialIndex(const PointSet& points, double epsilon)
      : dim_(points.dim()), epsilon_(epsilon) {
    if (points.empty()) fail(Errc::kEmptyDataset, "cannot index an empty point set");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
      fail(Errc::kInvalidArgument, "epsilon must lie in (0, 1]");
    }
    const auto raw = points.raw_coords();
    for (double c : raw) {
      if (!std::isfinite(c)) fail(Errc::kInvalidCoordinate, "non-finite coordinate");
    }
    coords_.assign(raw.begin(), raw.end());
    const std::size_t n = points.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    leaf_of_.assign(n, kNoNode);
    nodes_.reserve(2 * n);
    boxes_.reserve(2 * n * 2 * dim_);
    build(0, n, kNoNode, 0);
    agg_.assign(nodes_.size(), 0.0);
    flow_.assign(nodes_.size(), 0.0);
    active_.assign(nodes_.size(), 1);
    mass_.assign(nodes_.size(), 0.0);
  }

  std::size_t size() const { return order_.size(); }
  std::size_t dim() const { return dim_; }
  double epsilon() const { return epsilon_; }
  std::size_t node_count() const { return nodes_.size(); }
  NodeId root() const { return 0; }
  // Edges on the longest root-to-leaf path.
  std::size_t height() const { return height_; }

  bool is_leaf(NodeId u) const { return nodes_[u].left == kNoNode; }
  NodeId left(NodeId u) const { return nodes_[u].left; }
  NodeId right(NodeId u) const { return nodes_[u].right; }
  NodeId parent(NodeId u) const { return nodes_[u].parent; }
  std::size_t depth(NodeId u) const { return nodes_[u].depth; }
  NodeId leaf_of(std::size_t point_id) const {
    check_point(point_id);
    return leaf_of_[point_id];
  }

  std::span<const double> box_lo(NodeId u) const {
    return {boxes_.data() + std::size_t{u} * 2 * dim_, dim_};
  }
  std::span<const double> box_hi(NodeId u) const {
    return {boxes_.data() + std::size_t{u} * 2 * dim_ + dim_, dim_};
  }

  // Point ids stored below `u`.
  std::span<const std::size_t> node_points(NodeId u) const {
    return {order_.data() + nodes_[u].begin, nodes_[u].end - nodes_[u].begin};
  }
  std::span<const std::size_t> order() const { return order_; }

  std::span<const double> point(std::size_t id) const {
    return {coords_.data() + id * dim_, dim_};
  }

  bool is_ancestor(NodeId a, NodeId b) const {
    return a != b && nodes_[a].begin <= nodes_[b].begin && nodes_[b].end <= nodes_[a].end;
  }

  // Visits the canonical nodes of the ball B(center, radius). Let R be
  // (1 + epsilon) * radius. A node whose box misses B(center, R) is skipped,
  // a node whose box lies inside B(center, R) is emitted, and a leaf is
  // emitted iff its point lies within R. `prune(u)` returning true drops the
  // subtree of u before any test is made.
  template <class Emit, class Prune>
  void for_each_canonical(std::span<const double> center, double radius, Emit&& emit,
                          Prune&& prune) const {
    check_ball(center, radius);
    const double reach = (1.0 + epsilon_) * radius;
    const double reach2 = reach * reach;
    NodeId stack[128];
    std::size_t top = 0;
    stack[top++] = root();
    while (top > 0) {
      const NodeId u = stack[--top];
      if (prune(u)) continue;
      if (min_dist2(u, center) > reach2) continue;
      if (max_dist2(u, center) <= reach2) {
        emit(u);
        continue;
      }
      if (is_leaf(u)) continue;  // its single point lies outside the reach
      stack[top++] = nodes_[u].right;
      stack[top++] = nodes_[u].left;
    }
  }

  template <class Emit>
  void for_each_canonical(std::span<const double> center, double radius, Emit&& emit) const {
    for_each_canonical(center, radius, std::forward<Emit>(emit),
                       [](NodeId) { return false; });
  }

  std::vector<NodeId> canonical_nodes(std::span<const double> center, double radius) const {
    std::vector<NodeId> out;
    for_each_canonical(center, radius, [&](NodeId u) { out.push_back(u); });
    return out;
  }

  // Union of the points below the canonical nodes, ascending.
  std::vector<std::size_t> covered_points(std::span<const double> center,
                                          double radius) const {
    std::vector<std::size_t> out;
    for_each_canonical(center, radius, [&](NodeId u) {
      auto pts = node_points(u);
      out.insert(out.end(), pts.begin(), pts.end());
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  // ---- annotations ----

  void clear_annotations() {
    std::fill(agg_.begin(), agg_.end(), 0.0);
    std::fill(flow_.begin(), flow_.end(), 0.0);
    std::fill(active_.begin(), active_.end(), 1);
    std::fill(mass_.begin(), mass_.end(), 0.0);
  }

  double agg_sum(NodeId u) const { return agg_[u]; }
  double flow_sum(NodeId u) const { return flow_[u]; }
  bool active(NodeId u) const { return active_[u] != 0; }
  double subtree_mass(NodeId u) const { return mass_[u]; }

  std::span<double> agg_sums() { return agg_; }
  std::span<double> flow_sums() { return flow_; }
  std::span<double> subtree_masses() { return mass_; }

  void add_to_canonical(std::span<const double> center, double radius, double value) {
    for_each_canonical(center, radius, [&](NodeId u) { agg_[u] += value; });
  }

  double path_sum(std::size_t point_id) const {
    double acc = 0.0;
    for (NodeId u = leaf_of(point_id); u != kNoNode; u = nodes_[u].parent) acc += agg_[u];
    return acc;
  }

  // path_sum for every point in one top-down sweep. Sums accumulate from the
  // root downward, so results can differ from path_sum in the last ulp.
  void all_path_sums(std::span<double> out) {
    prefix_.resize(nodes_.size());
    for (NodeId u = 0; u < nodes_.size(); ++u) {
      const NodeId p = nodes_[u].parent;
      prefix_[u] = (p == kNoNode ? 0.0 : prefix_[p]) + agg_[u];
      if (is_leaf(u)) out[order_[nodes_[u].begin]] = prefix_[u];
    }
  }

  void add_along_path(std::size_t point_id, double value) {
    for (NodeId u = leaf_of(point_id); u != kNoNode; u = nodes_[u].parent) flow_[u] += value;
  }

  double canonical_flow_sum(std::span<const double> center, double radius) const {
    double acc = 0.0;
    for_each_canonical(center, radius, [&](NodeId u) { acc += flow_[u]; });
    return acc;
  }

  // Loads sampling weights; also resets every node to active.
  void init_sampling(std::span<const double> weights) {
    if (weights.size() != size()) {
      fail(Errc::kInvalidArgument, "weight vector length does not match point count");
    }
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        fail(Errc::kInvalidArgument, "sampling weights must be finite and nonnegative");
      }
    }
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      const auto& nd = nodes_[i];
      mass_[i] = nd.left == kNoNode ? weights[order_[nd.begin]] : mass_[nd.left] + mass_[nd.right];
    }
    std::fill(active_.begin(), active_.end(), 1);
  }

  double remaining_mass() const { return mass_[root()]; }

  // Draws a live point with probability proportional to its weight and takes
  // it out of the sampling pool.
  template <class Urbg>
  std::size_t sample_remove(Urbg& rng) {
    if (!(mass_[root()] > kMassTolerance)) {
      fail(Errc::kExhaustedMass, "no sampling mass left");
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    NodeId u = root();
    while (!is_leaf(u)) {
      const double l = mass_[nodes_[u].left];
      const double r = mass_[nodes_[u].right];
      if (!(l > 0.0)) {
        u = nodes_[u].right;
      } else if (!(r > 0.0)) {
        u = nodes_[u].left;
      } else {
        u = unit(rng) * (l + r) < l ? nodes_[u].left : nodes_[u].right;
      }
    }
    const std::size_t id = order_[nodes_[u].begin];
    remove_mass(id);
    return id;
  }

  // Zeroes the sampling weight of one point, keeping every internal node's
  // mass equal to the sum of its children.
  void remove_mass(std::size_t point_id) {
    NodeId u = leaf_of(point_id);
    mass_[u] = 0.0;
    for (u = nodes_[u].parent; u != kNoNode; u = nodes_[u].parent) {
      mass_[u] = mass_[nodes_[u].left] + mass_[nodes_[u].right];
    }
  }

  bool region_free(std::span<const double> center, double radius) const {
    bool free = true;
    for_each_canonical(center, radius, [&](NodeId u) { free = free && active_[u] != 0; });
    return free;
  }

  void deactivate_path(std::size_t point_id) {
    for (NodeId u = leaf_of(point_id); u != kNoNode; u = nodes_[u].parent) active_[u] = 0;
  }

  void set_active(NodeId u, bool value) { active_[u] = value ? 1 : 0; }

  // Sets the mass of node u to zero and removes the same amount from every
  // ancestor. Descendants keep their values.
  void consume_node(NodeId u) {
    const double amount = mass_[u];
    mass_[u] = 0.0;
    for (NodeId v = nodes_[u].parent; v != kNoNode; v = nodes_[v].parent) mass_[v] -= amount;
  }

  void check_point(std::size_t point_id) const {
    if (point_id >= order_.size()) {
      fail(Errc::kUnknownPoint, "point id " + std::to_string(point_id) + " not in index");
    }
  }

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    NodeId left = kNoNode;
    NodeId right = kNoNode;
    NodeId parent = kNoNode;
    std::uint32_t depth = 0;
  };

  void check_ball(std::span<const double> center, double radius) const {
    if (center.size() != dim_) {
      fail(Errc::kInvalidArgument, "query center dimension does not match index");
    }
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
      fail(Errc::kInvalidRadius, "radius must be finite and >= 0");
    }
  }

  NodeId build(std::size_t begin, std::size_t end, NodeId parent, std::uint32_t depth) {
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({begin, end, kNoNode, kNoNode, parent, depth});
    height_ = std::max<std::size_t>(height_, depth);

    // Tight bounding box.
    boxes_.resize(boxes_.size() + 2 * dim_);
    double* lo = boxes_.data() + std::size_t{id} * 2 * dim_;
    double* hi = lo + dim_;
    for (std::size_t t = 0; t < dim_; ++t) {
      lo[t] = std::numeric_limits<double>::infinity();
      hi[t] = -std::numeric_limits<double>::infinity();
    }
    for (std::size_t k = begin; k < end; ++k) {
      const double* p = coords_.data() + order_[k] * dim_;
      for (std::size_t t = 0; t < dim_; ++t) {
        lo[t] = std::min(lo[t], p[t]);
        hi[t] = std::max(hi[t], p[t]);
      }
    }

    if (end - begin == 1) {
      leaf_of_[order_[begin]] = id;
      return id;
    }

    // Widest extent, lowest dimension on ties.
    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t t = 0; t < dim_; ++t) {
      const double extent = hi[t] - lo[t];
      if (extent > widest) {
        widest = extent;
        axis = t;
      }
    }
    // Lower median under the (coordinate, id) order.
    const std::size_t mid = begin + (end - begin + 1) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid - 1),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                       const double ca = coords_[a * dim_ + axis];
                       const double cb = coords_[b * dim_ + axis];
                       return ca < cb || (ca == cb && a < b);
                     });
    const NodeId l = build(begin, mid, id, depth + 1);
    const NodeId r = build(mid, end, id, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  double min_dist2(NodeId u, std::span<const double> c) const {
    const double* lo = boxes_.data() + std::size_t{u} * 2 * dim_;
    const double* hi = lo + dim_;
    double acc = 0.0;
    for (std::size_t t = 0; t < dim_; ++t) {
      double d = 0.0;
      if (c[t] < lo[t]) d = lo[t] - c[t];
      else if (c[t] > hi[t]) d = c[t] - hi[t];
      acc += d * d;
    }
    return acc;
  }

  double max_dist2(NodeId u, std::span<const double> c) const {
    const double* lo = boxes_.data() + std::size_t{u} * 2 * dim_;
    const double* hi = lo + dim_;
    double acc = 0.0;
    for (std::size_t t = 0; t < dim_; ++t) {
      const double d = std::max(std::abs(c[t] - lo[t]), std::abs(hi[t] - c[t]));
      acc += d * d;
    }
    return acc;
  }

  std::size_t dim_;
  double epsilon_;
  std::size_t height_ = 0;
  std::vector<double> coords_;
  std::vector<std::size_t> order_;
  std::vector<NodeId> leaf_of_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;

  std::vector<double> agg_;
  std::vector<double> flow_;
  std::vector<char> active_;
  std::vector<double> mass_;
  std::vector<double> prefix_;
};

// Canonical node lists of every point's ball at one radius, in CSR form.
// Lets the MWU loop reuse the decomposition across iterations.
class CoverCache {
 public:
  CoverCache(const SpatialIndex& index, double radius) {
    offsets_.reserve(index.size() + 1);
    offsets_.push_back(0);
    for (std::size_t i = 0; i < index.size(); ++i) {
      index.for_each_canonical(index.point(i), radius, [&](NodeId u) { nodes_.push_back(u); });
      offsets_.push_back(nodes_.size());
    }
  }

  std::span<const NodeId> of(std::size_t point_id) const {
    return {nodes_.data() + offsets_[point_id], offsets_[point_id + 1] - offsets_[point_id]};
  }
  std::size_t total_nodes() const { return nodes_.size(); }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> nodes_;
};

}  // namespace fairdiv
