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

// Allocation rules for games on graph nodes.
//
//   Shapley          phi_i      node attribution, structure-agnostic
//   Myerson          psi_i      Shapley value of the restricted game f|E
//   Shapley-Taylor   Phi^k_S    attribution to subsets of size <= k
//   Myerson-Taylor   Psi^k_S    Shapley-Taylor index of f|E
//
// For |S| < k an order-k Taylor index is the discrete derivative
// delta_S f(empty); for |S| = k it is
//
//   (k / n) * sum_{T subset of V \ S} delta_S f(T) / C(n - 1, |T|),
//
// the expectation of delta_S f over the predecessors of the first member of
// S in a uniformly random ordering. All computations run on the normalized
// game f - f(empty), so entries inside a connected component C of the graph
// sum to f(C) - f(empty).

#ifndef GRAPHGAME_INTERACTION_HPP_
#define GRAPHGAME_INTERACTION_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphgame/config.hpp"
#include "graphgame/graph.hpp"
#include "graphgame/node_subset.hpp"
#include "graphgame/value_function.hpp"

namespace graphgame {

enum class IndexKind { kShapley, kMyerson, kShapleyTaylor, kMyersonTaylor };

inline std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::kShapley: return "shapley";
    case IndexKind::kMyerson: return "myerson";
    case IndexKind::kShapleyTaylor: return "shapley_taylor";
    case IndexKind::kMyersonTaylor: return "myerson_taylor";
  }
  return "unknown";
}

// Accepts both "shapley_taylor" and "shapley-taylor" spellings.
inline IndexKind parse_index_kind(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  if (name == "shapley") return IndexKind::kShapley;
  if (name == "myerson") return IndexKind::kMyerson;
  if (name == "shapley_taylor") return IndexKind::kShapleyTaylor;
  if (name == "myerson_taylor") return IndexKind::kMyersonTaylor;
  throw std::invalid_argument("unknown index kind '" + name + "'");
}

inline bool is_restricted(IndexKind kind) {
  return kind == IndexKind::kMyerson || kind == IndexKind::kMyersonTaylor;
}

struct Exactness {
  bool exact = true;
  std::size_t permutations = 0;
  std::uint64_t seed = 0;
  // Sampled over every ordering rather than random ones.
  bool exhaustive = false;
};

// Attributions to node subsets of size 1..k.
class InteractionIndex {
 public:
  InteractionIndex() = default;
  InteractionIndex(std::size_t node_count, std::size_t order, IndexKind kind, Exactness exactness = {})
      : n_(node_count), k_(order), kind_(kind), exactness_(exactness) {
    if (order == 0) throw std::invalid_argument("interaction order must be at least 1");
    if ((kind == IndexKind::kShapley || kind == IndexKind::kMyerson) && order != 1) {
      throw std::invalid_argument(to_string(kind) + " is a first-order index");
    }
  }

  std::size_t node_count() const { return n_; }
  std::size_t order() const { return k_; }
  IndexKind kind() const { return kind_; }
  const Exactness& exactness() const { return exactness_; }
  const std::map<NodeSubset, double>& entries() const { return entries_; }

  void set(const NodeSubset& s, double value) {
    if (s.universe() != n_) throw std::invalid_argument("index key over the wrong universe");
    if (s.empty() || s.size() > k_) {
      throw std::invalid_argument("index key {" + s.key() + "} has size outside 1.." +
                                  std::to_string(k_));
    }
    entries_[s] = value;
  }

  // Missing entries read as zero.
  double operator[](const NodeSubset& s) const {
    auto it = entries_.find(s);
    return it == entries_.end() ? 0.0 : it->second;
  }

  double at(std::initializer_list<std::size_t> nodes) const { return (*this)[NodeSubset(n_, nodes)]; }

  // Per-node view of a first-order index.
  std::vector<double> node_values() const {
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) out[i] = at({i});
    return out;
  }

  std::vector<std::string> annotations;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 1;
  IndexKind kind_ = IndexKind::kShapley;
  Exactness exactness_;
  std::map<NodeSubset, double> entries_;
};

struct ExactOptions {
  std::size_t max_nodes = kDefaultExactNodeCap;
};

// Harsanyi dividends of a restricted game, keyed by connected subsets.
struct DividendTable {
  std::size_t node_count = 0;
  std::map<NodeSubset, double> entries;

  // Sum of the dividends of connected subsets of w.
  double reconstruct(const NodeSubset& w) const {
    CompensatedSum s;
    for (const auto& [t, d] : entries) {
      if (t.is_subset_of(w)) s += d;
    }
    return s.value();
  }
};

// Calls fn(indices) for every k-combination of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// delta_S f(T) = sum_{W subset of S} (-1)^{|S|-|W|} f(W u T). Works with any
// callable source: a ValueFunction, a RestrictedValueFunction or a lambda.
template <class Source>
double discrete_derivative(const Source& f, const NodeSubset& s, const NodeSubset& t) {
  if (s.empty()) throw std::invalid_argument("discrete derivative needs a nonempty S");
  if (s.intersects(t)) throw std::invalid_argument("S and T must be disjoint");
  const std::vector<std::size_t> members = s.members();
  if (members.size() > 30) throw std::invalid_argument("|S| too large for a discrete derivative");
  const std::size_t m = members.size();
  CompensatedSum sum;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << m); ++sub) {
    NodeSubset w = t;
    for (std::size_t b = 0; b < m; ++b) {
      if ((sub >> b) & 1U) w.insert(members[b]);
    }
    const bool negative = ((m - static_cast<std::size_t>(std::popcount(sub))) & 1U) != 0;
    const double v = f(w);
    sum += negative ? -v : v;
  }
  return sum.value();
}

namespace detail {

inline void check_exact_cap(std::size_t n, const ExactOptions& opts) {
  const std::size_t cap = std::min(opts.max_nodes, kHardExactNodeCap);
  if (n > cap) {
    throw CapExceededError("exact computation over " + std::to_string(n) +
                           " nodes exceeds the cap of " + std::to_string(cap) +
                           "; use permutation sampling instead");
  }
}

inline void check_order(std::size_t n, std::size_t k) {
  if (k == 0) throw std::invalid_argument("interaction order must be at least 1");
  if (k > n) {
    throw std::invalid_argument("interaction order " + std::to_string(k) + " exceeds node count " +
                                std::to_string(n));
  }
}

// Values of g over all 2^n subsets, indexed by bit mask.
inline std::vector<double> materialize(const ValueFunction& g) {
  const std::size_t n = g.node_count();
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = g.evaluate(NodeSubset::from_mask(n, mask));
  }
  return table;
}

// Values of g|E over all subsets; only connected subsets reach g.
inline std::vector<double> materialize_restricted(const Graph& graph, const ValueFunction& g) {
  const std::size_t n = graph.node_count();
  std::vector<double> table(std::size_t{1} << n);
  const auto& adj = graph.adjacency_masks();
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    CompensatedSum s;
    for_each_component_mask(adj, mask, [&](std::uint64_t c) {
      s += g.evaluate(NodeSubset::from_mask(n, c));
    });
    table[mask] = s.value();
  }
  return table;
}

inline double derivative_from_table(const std::vector<double>& table, std::uint64_t s,
                                    std::uint64_t t) {
  const int size = std::popcount(s);
  CompensatedSum sum;
  // Walk every submask of s, including s and 0.
  std::uint64_t w = s;
  for (;;) {
    const double v = table[w | t];
    sum += ((size - std::popcount(w)) & 1) != 0 ? -v : v;
    if (w == 0) break;
    w = (w - 1) & s;
  }
  return sum.value();
}

// Taylor index of order k for the game tabulated in `table`.
inline void taylor_from_table(const std::vector<double>& table, std::size_t n, std::size_t k,
                              InteractionIndex& out) {
  const auto binom = binomial_table(n);
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::size_t size = 1; size <= k; ++size) {
    for_each_combination(n, size, [&](const std::vector<std::size_t>& idx) {
      std::uint64_t s = 0;
      for (std::size_t v : idx) s |= std::uint64_t{1} << v;
      double value = 0.0;
      if (size < k) {
        value = derivative_from_table(table, s, 0);
      } else {
        const std::uint64_t rest = full & ~s;
        CompensatedSum sum;
        std::uint64_t t = rest;
        for (;;) {
          const auto tsize = static_cast<std::size_t>(std::popcount(t));
          sum += derivative_from_table(table, s, t) / binom[n - 1][tsize];
          if (t == 0) break;
          t = (t - 1) & rest;
        }
        value = static_cast<double>(k) / static_cast<double>(n) * sum.value();
      }
      out.set(NodeSubset::from_mask(n, s), value);
    });
  }
}

}  // namespace detail

// Exact Shapley value of every node.
inline InteractionIndex shapley_exact(const ValueFunction& v, const ExactOptions& opts = {}) {
  const std::size_t n = v.node_count();
  detail::check_exact_cap(n, opts);
  InteractionIndex out(n, 1, IndexKind::kShapley);
  if (n == 0) return out;
  detail::taylor_from_table(detail::materialize(normalize(v)), n, 1, out);
  return out;
}

// Exact Shapley value of the restricted game.
inline InteractionIndex myerson_exact(const Graph& g, const ValueFunction& v,
                                      const ExactOptions& opts = {}) {
  const std::size_t n = g.node_count();
  if (v.node_count() != n) throw std::invalid_argument("graph and value function sizes differ");
  detail::check_exact_cap(n, opts);
  InteractionIndex out(n, 1, IndexKind::kMyerson);
  if (n == 0) return out;
  detail::taylor_from_table(detail::materialize_restricted(g, normalize(v)), n, 1, out);
  return out;
}

inline InteractionIndex shapley_taylor_exact(const ValueFunction& v, std::size_t k,
                                             const ExactOptions& opts = {}) {
  const std::size_t n = v.node_count();
  detail::check_order(n, k);
  detail::check_exact_cap(n, opts);
  InteractionIndex out(n, k, IndexKind::kShapleyTaylor);
  detail::taylor_from_table(detail::materialize(normalize(v)), n, k, out);
  return out;
}

// Only connected subsets are sent to v, so v.query_count() afterwards counts
// the connected subsets of g (plus the empty set used for normalization).
inline InteractionIndex myerson_taylor_exact(const Graph& g, const ValueFunction& v, std::size_t k,
                                             const ExactOptions& opts = {}) {
  const std::size_t n = g.node_count();
  if (v.node_count() != n) throw std::invalid_argument("graph and value function sizes differ");
  detail::check_order(n, k);
  detail::check_exact_cap(n, opts);
  InteractionIndex out(n, k, IndexKind::kMyersonTaylor);
  detail::taylor_from_table(detail::materialize_restricted(g, normalize(v)), n, k, out);
  return out;
}

struct SamplingOptions {
  std::size_t order = 2;
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  // true: Myerson-Taylor (sample on f|E); false: Shapley-Taylor.
  bool restricted = true;
  // Enumerate all n! orderings instead of sampling.
  bool exhaustive = false;
  std::size_t threads = 1;
};

inline constexpr std::size_t kExhaustivePermutationNodeCap = 10;

// Permutation estimator of the Taylor index. Top-order entries average
// delta_S over the predecessors of the first member of S in each ordering;
// lower-order entries are exact discrete derivatives at the empty set.
//
// Orderings are drawn sequentially from one seeded stream and processed in
// fixed blocks whose partial sums are reduced in block order, so the result
// does not depend on `threads`.
inline InteractionIndex sample_index(const Graph& g, const ValueFunction& v,
                                     const SamplingOptions& opts) {
  const std::size_t n = g.node_count();
  const std::size_t k = opts.order;
  if (v.node_count() != n) throw std::invalid_argument("graph and value function sizes differ");
  detail::check_order(n, k);
  if (!opts.exhaustive && opts.permutations == 0) {
    throw std::invalid_argument("at least one permutation is required");
  }
  if (opts.exhaustive && n > kExhaustivePermutationNodeCap) {
    throw CapExceededError("exhaustive permutation mode is limited to " +
                           std::to_string(kExhaustivePermutationNodeCap) + " nodes");
  }

  const ValueFunction base = normalize(v);
  const ValueFunction source =
      opts.restricted ? RestrictedValueFunction(base, g).as_value_function() : base;

  // Orderings.
  std::vector<std::vector<std::size_t>> orderings;
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  if (opts.exhaustive) {
    std::vector<std::size_t> p = identity;
    do {
      orderings.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    std::mt19937_64 rng(opts.seed);
    orderings.reserve(opts.permutations);
    for (std::size_t t = 0; t < opts.permutations; ++t) {
      std::vector<std::size_t> p = identity;
      detail::seeded_shuffle(rng, p);
      orderings.push_back(std::move(p));
    }
  }

  std::vector<std::vector<std::size_t>> top;
  for_each_combination(n, k, [&](const std::vector<std::size_t>& idx) { top.push_back(idx); });

  constexpr std::size_t kBlock = 8;
  const std::size_t blocks = (orderings.size() + kBlock - 1) / kBlock;
  std::vector<std::vector<CompensatedSum>> partial(blocks, std::vector<CompensatedSum>(top.size()));

  auto run_block = [&](std::size_t b) {
    std::vector<std::size_t> position(n);
    std::vector<NodeSubset> prefix(n + 1, NodeSubset(n));
    auto& acc = partial[b];
    const std::size_t end = std::min(orderings.size(), (b + 1) * kBlock);
    for (std::size_t o = b * kBlock; o < end; ++o) {
      const auto& pi = orderings[o];
      for (std::size_t p = 0; p < n; ++p) {
        position[pi[p]] = p;
        prefix[p + 1] = prefix[p].with(pi[p]);
      }
      for (std::size_t e = 0; e < top.size(); ++e) {
        std::size_t first = n;
        NodeSubset s(n);
        for (std::size_t v_idx : top[e]) {
          first = std::min(first, position[v_idx]);
          s.insert(v_idx);
        }
        acc[e] += discrete_derivative(source, s, prefix[first]);
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(opts.threads, blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t b = next++; b < blocks; b = next++) run_block(b);
          } catch (...) {
            errors[w] = std::current_exception();
            next = blocks;
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const IndexKind kind = opts.restricted ? IndexKind::kMyersonTaylor : IndexKind::kShapleyTaylor;
  Exactness ex;
  ex.exact = false;
  ex.permutations = orderings.size();
  ex.seed = opts.seed;
  ex.exhaustive = opts.exhaustive;
  InteractionIndex out(n, k, kind, ex);

  const NodeSubset empty(n);
  for (std::size_t size = 1; size < k; ++size) {
    for_each_combination(n, size, [&](const std::vector<std::size_t>& idx) {
      const NodeSubset s = NodeSubset::from_range(n, idx);
      out.set(s, discrete_derivative(source, s, empty));
    });
  }
  const auto count = static_cast<double>(orderings.size());
  for (std::size_t e = 0; e < top.size(); ++e) {
    CompensatedSum total;
    for (std::size_t b = 0; b < blocks; ++b) total += partial[b][e].value();
    out.set(NodeSubset::from_range(n, top[e]), total.value() / count);
  }
  return out;
}

// Dividends of f|E on connected subsets:
//   Delta(T) = sum over connected R with R <= T <= N(R) of (-1)^{|T|-|R|} f(R),
// where N(R) is R together with its neighbors. Every such T is connected.
inline DividendTable mobius_dividends(const Graph& g, const ValueFunction& v,
                                      const ExactOptions& opts = {}) {
  const std::size_t n = g.node_count();
  if (v.node_count() != n) throw std::invalid_argument("graph and value function sizes differ");
  detail::check_exact_cap(n, opts);
  const ValueFunction f = normalize(v);
  const auto& adj = g.adjacency_masks();

  std::unordered_map<std::uint64_t, CompensatedSum> acc;
  for_each_connected_subset(g, n, [&](const NodeSubset& r) {
    const std::uint64_t rmask = r.mask();
    std::uint64_t closed = rmask;
    r.for_each([&](std::size_t i) { closed |= adj[i]; });
    const std::uint64_t boundary = closed & ~rmask;
    const double fr = f.evaluate(r);
    std::uint64_t x = boundary;
    for (;;) {
      acc[rmask | x] += (std::popcount(x) & 1) != 0 ? -fr : fr;
      if (x == 0) break;
      x = (x - 1) & boundary;
    }
  });

  DividendTable out;
  out.node_count = n;
  for (const auto& [mask, sum] : acc) out.entries.emplace(NodeSubset::from_mask(n, mask), sum.value());
  return out;
}

// Expands an index by linearity over the unanimity basis: u_T allocates 1 to
// S = T when |T| < k, and 1/C(|T|, k) to each k-subset of T otherwise.
inline InteractionIndex index_from_dividends(const DividendTable& d, const Graph& g, std::size_t k) {
  const std::size_t n = g.node_count();
  if (d.node_count != n) throw std::invalid_argument("dividend table and graph sizes differ");
  detail::check_order(n, k);
  std::map<NodeSubset, CompensatedSum> acc;
  for (std::size_t size = 1; size <= k; ++size) {
    for_each_combination(n, size, [&](const std::vector<std::size_t>& idx) {
      acc[NodeSubset::from_range(n, idx)];
    });
  }
  for (const auto& [t, delta] : d.entries) {
    const std::size_t size = t.size();
    if (size < k) {
      acc[t] += delta;
      continue;
    }
    const double share = delta / binomial(size, k);
    const std::vector<std::size_t> members = t.members();
    for_each_combination(size, k, [&](const std::vector<std::size_t>& idx) {
      NodeSubset s(n);
      for (std::size_t j : idx) s.insert(members[j]);
      acc[s] += share;
    });
  }
  InteractionIndex out(n, k, IndexKind::kMyersonTaylor);
  for (const auto& [s, sum] : acc) out.set(s, sum.value());
  return out;
}

// Collapses a Taylor index to node values: v_i = sum_{S containing i} I_S / |S|.
// On a sampled index the identity only holds in expectation, which is noted
// in the result's annotations.
inline InteractionIndex reduce_to_value(const InteractionIndex& idx) {
  IndexKind kind = IndexKind::kShapley;
  switch (idx.kind()) {
    case IndexKind::kShapley:
    case IndexKind::kShapleyTaylor: kind = IndexKind::kShapley; break;
    case IndexKind::kMyerson:
    case IndexKind::kMyersonTaylor: kind = IndexKind::kMyerson; break;
  }
  const std::size_t n = idx.node_count();
  InteractionIndex out(n, 1, kind, idx.exactness());
  out.annotations = idx.annotations;
  if (!idx.exactness().exact) {
    out.annotations.push_back(
        "reduced from a sampled index: node values match the exact ones only in expectation");
  }
  std::vector<CompensatedSum> acc(n);
  for (const auto& [s, value] : idx.entries()) {
    const double share = value / static_cast<double>(s.size());
    s.for_each([&](std::size_t i) { acc[i] += share; });
  }
  for (std::size_t i = 0; i < n; ++i) out.set(NodeSubset(n, {i}), acc[i].value());
  return out;
}

}  // namespace graphgame

#endif  // GRAPHGAME_INTERACTION_HPP_
