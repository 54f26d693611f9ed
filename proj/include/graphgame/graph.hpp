/*
 * Copyright 2026 The graphgame Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GRAPHGAME_GRAPH_HPP_
#define GRAPHGAME_GRAPH_HPP_

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphgame/node_subset.hpp"

namespace graphgame {

// Undirected edge with u < v.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph on nodes 0..n-1.
class Graph {
 public:
  Graph() = default;

  // Normalizes every pair to (min, max) and drops duplicates. Throws
  // std::invalid_argument on self-loops or out-of-range endpoints.
  static Graph build(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    Graph g;
    g.n_ = n;
    g.edges_.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw std::invalid_argument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") has an endpoint out of range for n=" + std::to_string(n));
      }
      if (a == b) {
        throw std::invalid_argument("self-loop on node " + std::to_string(a));
      }
      g.edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
    g.index();
    return g;
  }

  static Graph build(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
    std::vector<std::pair<std::size_t, std::size_t>> v(pairs);
    return build(n, std::span<const std::pair<std::size_t, std::size_t>>(v));
  }

  static Graph path(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return build(n, std::span<const std::pair<std::size_t, std::size_t>>(e));
  }

  static Graph complete(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return build(n, std::span<const std::pair<std::size_t, std::size_t>>(e));
  }

  static Graph edgeless(std::size_t n) { return build(n, {}); }

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  const NodeSubset& neighbor_set(std::size_t v) const { return neighbor_sets_.at(v); }

  bool has_edge(std::size_t a, std::size_t b) const {
    return a < n_ && neighbor_sets_[a].contains(b);
  }

  // Adjacency as 64-bit masks; empty when n > 64.
  const std::vector<std::uint64_t>& adjacency_masks() const { return masks_; }

  Graph without_edge(std::size_t a, std::size_t b) const {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    const Edge drop{std::min(a, b), std::max(a, b)};
    for (const Edge& x : edges_) {
      if (x != drop) e.emplace_back(x.u, x.v);
    }
    return build(n_, std::span<const std::pair<std::size_t, std::size_t>>(e));
  }

  NodeSubset empty_subset() const { return NodeSubset(n_); }
  NodeSubset all_nodes() const { return NodeSubset::full(n_); }

 private:
  void index() {
    adjacency_.assign(n_, {});
    neighbor_sets_.assign(n_, NodeSubset(n_));
    for (const Edge& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
      neighbor_sets_[e.u].insert(e.v);
      neighbor_sets_[e.v].insert(e.u);
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
    masks_.clear();
    if (n_ <= 64) {
      masks_.resize(n_, 0);
      for (std::size_t v = 0; v < n_; ++v) masks_[v] = n_ == 0 ? 0 : neighbor_sets_[v].mask();
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<NodeSubset> neighbor_sets_;
  std::vector<std::uint64_t> masks_;
};

// The connected components of the subgraph induced by a node subset.
struct ComponentPartition {
  std::vector<NodeSubset> components;

  std::size_t size() const { return components.size(); }
  bool empty() const { return components.empty(); }
};

namespace detail {

inline void check_subset(const Graph& g, const NodeSubset& t) {
  if (t.universe() != g.node_count()) {
    throw std::invalid_argument("subset universe " + std::to_string(t.universe()) +
                                " does not match graph of " + std::to_string(g.node_count()) +
                                " nodes");
  }
}

// Calls fn(component_mask) for each component of the subgraph induced by
// `mask`, in order of smallest member.
template <class F>
void for_each_component_mask(std::span<const std::uint64_t> adj, std::uint64_t mask, F&& fn) {
  std::uint64_t remaining = mask;
  while (remaining != 0) {
    std::uint64_t comp = remaining & (~remaining + 1);
    std::uint64_t frontier = comp;
    while (frontier != 0) {
      const auto v = static_cast<std::size_t>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      const std::uint64_t fresh = adj[v] & mask & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    fn(comp);
    remaining &= ~comp;
  }
}

inline bool mask_connected(std::span<const std::uint64_t> adj, std::uint64_t mask) {
  if (mask == 0) return true;
  std::size_t count = 0;
  for_each_component_mask(adj, mask, [&](std::uint64_t) { ++count; });
  return count == 1;
}

}  // namespace detail

// Depth-first search over edges with both endpoints in t. Components are
// listed in order of their smallest member.
inline ComponentPartition connected_components(const Graph& g, const NodeSubset& t) {
  detail::check_subset(g, t);
  ComponentPartition out;
  NodeSubset seen(g.node_count());
  std::vector<std::size_t> stack;
  t.for_each([&](std::size_t root) {
    if (seen.contains(root)) return;
    NodeSubset comp(g.node_count());
    stack.assign(1, root);
    seen.insert(root);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      comp.insert(v);
      for (std::size_t w : g.neighbors(v)) {
        if (t.contains(w) && !seen.contains(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
      }
    }
    out.components.push_back(std::move(comp));
  });
  return out;
}

// The empty set counts as connected.
inline bool is_connected(const Graph& g, const NodeSubset& t) {
  detail::check_subset(g, t);
  if (g.node_count() <= 64) return detail::mask_connected(g.adjacency_masks(), t.mask());
  return connected_components(g, t).size() <= 1;
}

// R together with every node adjacent to R.
inline NodeSubset neighborhood(const Graph& g, const NodeSubset& r) {
  detail::check_subset(g, r);
  NodeSubset out = r;
  r.for_each([&](std::size_t v) { out |= g.neighbor_set(v); });
  return out;
}

// Visits every nonempty connected subset of size <= max_size exactly once.
// Each subset is grown from its smallest member through an extension set that
// only admits larger nodes not already adjacent to the current subset, so no
// subset is reached twice. Visit order is deterministic but not sorted.
template <class F>
void for_each_connected_subset(const Graph& g, std::size_t max_size, F&& fn) {
  const std::size_t n = g.node_count();
  if (max_size == 0) return;

  // closed: the current subset together with its neighborhood.
  auto extend = [&](auto& self, NodeSubset& current, std::size_t current_size,
                    NodeSubset extension, const NodeSubset& closed, std::size_t root) -> void {
    fn(static_cast<const NodeSubset&>(current));
    if (current_size == max_size) return;
    while (!extension.empty()) {
      const std::size_t w = extension.first();
      extension.erase(w);
      NodeSubset next_ext = extension;
      NodeSubset next_closed = closed;
      for (std::size_t u : g.neighbors(w)) {
        if (u > root && !closed.contains(u)) next_ext.insert(u);
        next_closed.insert(u);
      }
      current.insert(w);
      self(self, current, current_size + 1, std::move(next_ext), next_closed, root);
      current.erase(w);
    }
  };

  for (std::size_t root = 0; root < n; ++root) {
    NodeSubset current(n);
    current.insert(root);
    NodeSubset ext(n);
    NodeSubset closed = g.neighbor_set(root);
    closed.insert(root);
    for (std::size_t u : g.neighbors(root)) {
      if (u > root) ext.insert(u);
    }
    extend(extend, current, 1, std::move(ext), closed, root);
  }
}

// Every nonempty connected subset of size <= max_size, sorted by
// (size, lexicographic member list).
inline std::vector<NodeSubset> enumerate_connected_subsets(const Graph& g, std::size_t max_size) {
  if (max_size > g.node_count()) {
    throw std::invalid_argument("max_size exceeds node count");
  }
  std::vector<NodeSubset> out;
  for_each_connected_subset(g, max_size, [&](const NodeSubset& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace graphgame

#endif  // GRAPHGAME_GRAPH_HPP_
