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

// Multi-motif explanation search.
//
// Given a symmetric pairwise interaction matrix B (diagonal = singleton
// attributions), the group attribution of a node set S is
//
//   GrAttr(S) = sum_{i <= j in S} tau * max(0, B_ij) + (1 - tau) * min(0, B_ij)
//
// and an (m, M)-explanation is a list of at most m pairwise disjoint,
// connected motifs with at most M nodes in total. The search maximizes
// sum_l |GrAttr(S_l)|.

#ifndef GRAPHGAME_MOTIF_SEARCH_HPP_
#define GRAPHGAME_MOTIF_SEARCH_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphgame/config.hpp"
#include "graphgame/graph.hpp"
#include "graphgame/interaction.hpp"
#include "graphgame/node_subset.hpp"

namespace graphgame {

class InteractionMatrix {
 public:
  InteractionMatrix() = default;
  explicit InteractionMatrix(std::size_t n) : n_(n), b_(n * n, 0.0) {}

  // Row-major dense values; must be symmetric.
  static InteractionMatrix from_dense(std::size_t n, std::vector<double> values) {
    if (values.size() != n * n) throw std::invalid_argument("matrix needs n*n values");
    InteractionMatrix m(n);
    m.b_ = std::move(values);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (m.b_[i * n + j] != m.b_[j * n + i]) {
          throw std::invalid_argument("interaction matrix must be symmetric");
        }
      }
    }
    return m;
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return b_[i * n_ + j]; }
  double plus(std::size_t i, std::size_t j) const { return std::max(0.0, (*this)(i, j)); }
  double minus(std::size_t i, std::size_t j) const { return std::min(0.0, (*this)(i, j)); }

  // tau * B+ + (1 - tau) * B-
  double weighted(std::size_t i, std::size_t j, double tau) const {
    return tau * plus(i, j) + (1.0 - tau) * minus(i, j);
  }

  void set(std::size_t i, std::size_t j, double value) {
    b_[i * n_ + j] = value;
    b_[j * n_ + i] = value;
  }

  // sum_{i <= j} |B_ij|; bounds |GrAttr| of any set for any tau.
  double absolute_mass() const {
    CompensatedSum s;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) s += std::abs((*this)(i, j));
    return s.value();
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> b_;
};

// B_ij = Psi^2_{ij}, B_ii = Psi^2_{i}; missing entries are zero.
inline InteractionMatrix build_matrix(const InteractionIndex& idx) {
  if (idx.order() != 2) {
    throw std::invalid_argument("interaction matrix needs a second-order index, got order " +
                                std::to_string(idx.order()));
  }
  InteractionMatrix mat(idx.node_count());
  for (const auto& [s, value] : idx.entries()) {
    const auto m = s.members();
    if (m.size() == 1) {
      mat.set(m[0], m[0], value);
    } else {
      mat.set(m[0], m[1], value);
    }
  }
  return mat;
}

inline void check_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
}

inline double group_attr(const InteractionMatrix& mat, const NodeSubset& s, double tau) {
  check_tau(tau);
  const auto members = s.members();
  CompensatedSum sum;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a; b < members.size(); ++b) sum += mat.weighted(members[a], members[b], tau);
  }
  return sum.value();
}

struct Explanation {
  std::vector<NodeSubset> motifs;
  std::vector<double> scores;
  double objective = 0.0;
  bool optimal = false;
  double tau = kDefaultTau;
  std::size_t m = 0;
  std::size_t M = 0;
  // Search-tree nodes visited (zero for the oracle).
  std::size_t nodes_explored = 0;

  std::size_t node_total() const {
    std::size_t c = 0;
    for (const auto& s : motifs) c += s.size();
    return c;
  }
};

// Empty string when `exp` is a valid (m, M)-explanation of g, otherwise the
// first violated constraint.
inline std::string explanation_violation(const Graph& g, const Explanation& exp) {
  if (exp.motifs.size() > exp.m) return "more than m motifs";
  if (exp.scores.size() != exp.motifs.size()) return "score count differs from motif count";
  NodeSubset seen(g.node_count());
  for (const auto& s : exp.motifs) {
    if (s.universe() != g.node_count()) return "motif over the wrong universe";
    if (s.intersects(seen)) return "motifs overlap";
    if (!is_connected(g, s)) return "motif {" + s.key() + "} is disconnected";
    seen |= s;
  }
  if (seen.size() > exp.M) return "more than M nodes selected";
  CompensatedSum total;
  for (double sc : exp.scores) total += std::abs(sc);
  if (std::abs(total.value() - exp.objective) > 1e-9 * std::max(1.0, std::abs(exp.objective))) {
    return "objective is not the sum of absolute scores";
  }
  return {};
}

namespace detail {

// Motifs sorted by smallest member as sorted member lists; the
// lexicographic tie-break key.
inline std::vector<std::vector<std::size_t>> canonical_form(const std::vector<NodeSubset>& motifs) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : motifs) {
    if (!s.empty()) out.push_back(s.members());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Explanation finalize(const InteractionMatrix& mat, std::vector<NodeSubset> motifs, double tau,
                            std::size_t m, std::size_t M, bool optimal) {
  Explanation e;
  std::erase_if(motifs, [](const NodeSubset& s) { return s.empty(); });
  std::sort(motifs.begin(), motifs.end(),
            [](const NodeSubset& a, const NodeSubset& b) { return a.first() < b.first(); });
  CompensatedSum total;
  for (const auto& s : motifs) {
    const double score = group_attr(mat, s, tau);
    e.scores.push_back(score);
    total += std::abs(score);
  }
  e.motifs = std::move(motifs);
  e.objective = total.value();
  e.optimal = optimal;
  e.tau = tau;
  e.m = m;
  e.M = M;
  return e;
}

// Deterministic incumbent order: larger objective, then fewer nodes, then the
// lexicographically smaller canonical form.
struct IncumbentOrder {
  double eps;
  bool better(double obj, std::size_t nodes, const std::vector<std::vector<std::size_t>>& form,
              double best_obj, std::size_t best_nodes,
              const std::vector<std::vector<std::size_t>>& best_form) const {
    if (obj > best_obj + eps) return true;
    if (obj < best_obj - eps) return false;
    if (nodes != best_nodes) return nodes < best_nodes;
    return form < best_form;
  }
};

inline void check_matrix(const Graph& g, const InteractionMatrix& mat) {
  if (mat.size() != g.node_count()) throw std::invalid_argument("matrix and graph sizes differ");
}

}  // namespace detail

inline constexpr std::size_t kExhaustiveSearchNodeCap = 14;

// Reference solver: enumerates every assignment of nodes to {none, 1..m},
// with motif labels introduced in order of smallest member, and keeps the best
// feasible one.
inline Explanation exhaustive_search(const Graph& g, const InteractionMatrix& mat, std::size_t m,
                                     std::size_t M, double tau) {
  detail::check_matrix(g, mat);
  check_tau(tau);
  const std::size_t n = g.node_count();
  if (n > kExhaustiveSearchNodeCap) {
    throw CapExceededError("exhaustive motif search is limited to " +
                           std::to_string(kExhaustiveSearchNodeCap) + " nodes");
  }
  const detail::IncumbentOrder order{kTolerances.objective_tie * std::max(1.0, mat.absolute_mass())};
  const auto& adj = g.adjacency_masks();

  std::vector<std::uint64_t> member(m, 0);
  std::vector<double> score(m, 0.0);
  double best_obj = 0.0;
  std::size_t best_nodes = 0;
  std::vector<std::uint64_t> best_members;
  std::vector<std::vector<std::size_t>> best_form;

  auto leaf = [&](std::size_t opened, std::size_t used) {
    double obj = 0.0;
    for (std::size_t l = 0; l < opened; ++l) obj += std::abs(score[l]);
    if (obj < best_obj - order.eps) return;
    for (std::size_t l = 0; l < opened; ++l) {
      if (!detail::mask_connected(adj, member[l])) return;
    }
    std::vector<NodeSubset> motifs;
    for (std::size_t l = 0; l < opened; ++l) motifs.push_back(NodeSubset::from_mask(n, member[l]));
    auto form = detail::canonical_form(motifs);
    if (order.better(obj, used, form, best_obj, best_nodes, best_form)) {
      best_obj = obj;
      best_nodes = used;
      best_form = std::move(form);
      best_members.assign(member.begin(), member.begin() + static_cast<std::ptrdiff_t>(opened));
    }
  };

  auto recurse = [&](auto& self, std::size_t v, std::size_t opened, std::size_t used) -> void {
    if (v == n) {
      leaf(opened, used);
      return;
    }
    self(self, v + 1, opened, used);
    if (used == M) return;
    const std::size_t limit = std::min(opened + 1, m);
    for (std::size_t l = 0; l < limit; ++l) {
      double gain = mat.weighted(v, v, tau);
      for (std::uint64_t bits = member[l]; bits != 0; bits &= bits - 1) {
        gain += mat.weighted(static_cast<std::size_t>(std::countr_zero(bits)), v, tau);
      }
      member[l] |= std::uint64_t{1} << v;
      score[l] += gain;
      self(self, v + 1, std::max(opened, l + 1), used + 1);
      score[l] -= gain;
      member[l] &= ~(std::uint64_t{1} << v);
    }
  };
  recurse(recurse, 0, 0, 0);

  std::vector<NodeSubset> motifs;
  for (std::uint64_t mask : best_members) motifs.push_back(NodeSubset::from_mask(n, mask));
  return detail::finalize(mat, std::move(motifs), tau, m, M, true);
}

struct SearchLimits {
  // Maximum number of search-tree nodes to expand.
  std::optional<std::size_t> max_expansions;
  std::optional<std::chrono::milliseconds> time_limit;
};

namespace detail {

// Greedy seed-and-grow heuristic: repeatedly picks the best single node or
// adjacent pair among unused nodes and grows it through neighbors while
// |GrAttr| strictly improves.
inline std::vector<NodeSubset> greedy_motifs(const Graph& g, const InteractionMatrix& mat,
                                             std::size_t m, std::size_t M, double tau) {
  const std::size_t n = g.node_count();
  NodeSubset used(n);
  std::vector<NodeSubset> out;
  std::size_t budget = M;
  for (std::size_t l = 0; l < m && budget > 0; ++l) {
    NodeSubset best(n);
    double best_val = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (used.contains(v)) continue;
      const double single = std::abs(mat.weighted(v, v, tau));
      if (single > best_val) {
        best_val = single;
        best = NodeSubset(n, {v});
      }
      if (budget < 2) continue;
      for (std::size_t u : g.neighbors(v)) {
        if (u < v || used.contains(u)) continue;
        const double pair =
            std::abs(mat.weighted(v, v, tau) + mat.weighted(u, u, tau) + mat.weighted(u, v, tau));
        if (pair > best_val) {
          best_val = pair;
          best = NodeSubset(n, {v, u});
        }
      }
    }
    if (best.empty()) break;
    double current = group_attr(mat, best, tau);
    for (;;) {
      if (best.size() >= budget) break;
      std::size_t pick = n;
      double pick_val = std::abs(current);
      double pick_raw = current;
      const NodeSubset frontier = neighborhood(g, best) - best - used;
      frontier.for_each([&](std::size_t v) {
        double gain = mat.weighted(v, v, tau);
        best.for_each([&](std::size_t u) { gain += mat.weighted(u, v, tau); });
        if (std::abs(current + gain) > pick_val) {
          pick_val = std::abs(current + gain);
          pick_raw = current + gain;
          pick = v;
        }
      });
      if (pick == n) break;
      best.insert(pick);
      current = pick_raw;
    }
    used |= best;
    budget -= best.size();
    out.push_back(best);
  }
  return out;
}

// Depth-first branch and bound over node assignments.
//
// Each node is decided in index order: left out, added to an open motif, or
// opening the next motif (motifs open in order of smallest member, which
// removes label permutations). A motif opens with a sign s in {+1, -1}; this
// is the big-M linearization of |GrAttr| with the sign as a binary variable,
// and the motif then contributes s * GrAttr. The bound adds, to the signed
// value of the partial assignment, the best possible gain of the remaining
// budget: every undecided node v gets an optimistic gain
//
//   a_v = max over motifs l it may join of max(0, s_l * (B_vv + sum_{u in S_l} B_uv))
//         + (1/2) sum_{undecided w} max(0, s_l * B_vw),
//
// and the R = M - used largest a_v are summed. The global cap sum |B_ij| is
// also applied.
//
// Connectivity is relaxed and separated lazily: a component C of a motif is
// closed once every neighbor of C is decided; a closed component that is not
// the whole motif violates the separator cut "some node of N(C) \ C is in the
// motif", and the subtree is cut off. A closed component equal to the motif
// seals it against further additions.
//
// A subtree whose bound only ties the incumbent is kept while it uses no more
// nodes than the incumbent, so ties resolve as in exhaustive_search.
class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, const InteractionMatrix& mat, std::size_t m, std::size_t M,
                 double tau, const SearchLimits& limits)
      : g_(g), mat_(mat), m_(m), M_(std::min(M, g.node_count())), tau_(tau), limits_(limits),
        n_(g.node_count()), order_{kTolerances.objective_tie * std::max(1.0, mat.absolute_mass())} {
    w_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) w_[i * n_ + j] = mat.weighted(i, j, tau);
    // tail_pos_[v * (n+1) + j] = sum_{w >= j, w != v} max(0, W_vw); tail_neg_ likewise for -W.
    tail_pos_.assign(n_ * (n_ + 1), 0.0);
    tail_neg_.assign(n_ * (n_ + 1), 0.0);
    for (std::size_t v = 0; v < n_; ++v) {
      for (std::size_t j = n_; j-- > 0;) {
        const double x = j == v ? 0.0 : W(v, j);
        tail_pos_[v * (n_ + 1) + j] = tail_pos_[v * (n_ + 1) + j + 1] + std::max(0.0, x);
        tail_neg_[v * (n_ + 1) + j] = tail_neg_[v * (n_ + 1) + j + 1] + std::max(0.0, -x);
      }
    }
    big_m_ = mat.absolute_mass();
    label_.assign(n_, kNone);
    members_.assign(m_, NodeSubset(n_));
    rel_.assign(m_, std::vector<double>(n_, 0.0));
    cur_.assign(m_, 0.0);
    sign_.assign(m_, 1);
  }

  Explanation run() {
    start_ = std::chrono::steady_clock::now();
    if (m_ == 0 || M_ == 0 || n_ == 0) {
      auto e = finalize(mat_, {}, tau_, m_, M_, true);
      return e;
    }
    // Greedy incumbent.
    set_incumbent(greedy_motifs(g_, mat_, m_, M_, tau_));
    if (limits_.max_expansions && *limits_.max_expansions == 0) {
      auto e = finalize(mat_, best_motifs_, tau_, m_, M_, false);
      return e;
    }
    search(0, 0);
    auto e = finalize(mat_, best_motifs_, tau_, m_, M_, !aborted_);
    e.nodes_explored = expansions_;
    return e;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  double W(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }

  void set_incumbent(std::vector<NodeSubset> motifs) {
    CompensatedSum obj;
    std::size_t nodes = 0;
    for (const auto& s : motifs) {
      obj += std::abs(group_attr(mat_, s, tau_));
      nodes += s.size();
    }
    auto form = canonical_form(motifs);
    if (!have_best_ || order_.better(obj.value(), nodes, form, best_obj_, best_nodes_, best_form_)) {
      have_best_ = true;
      best_obj_ = obj.value();
      best_nodes_ = nodes;
      best_form_ = std::move(form);
      best_motifs_ = std::move(motifs);
    }
  }

  bool out_of_budget() {
    ++expansions_;
    if (limits_.max_expansions && expansions_ > *limits_.max_expansions) return true;
    if (limits_.time_limit && (expansions_ & 255U) == 0 &&
        std::chrono::steady_clock::now() - start_ > *limits_.time_limit) {
      return true;
    }
    return false;
  }

  // Separates connectivity cuts for nodes decided so far (indices < depth).
  // Returns false when some motif can no longer become connected.
  bool connectivity_feasible(std::size_t depth, std::vector<char>& sealed) const {
    for (std::size_t l = 0; l < opened_; ++l) {
      sealed[l] = 0;
      const auto comps = connected_components(g_, members_[l]);
      for (const auto& c : comps.components) {
        bool closed = true;
        c.for_each([&](std::size_t v) {
          if (!closed) return;
          for (std::size_t u : g_.neighbors(v)) {
            if (!c.contains(u) && u >= depth) {
              closed = false;
              return;
            }
          }
        });
        if (!closed) continue;
        if (comps.size() > 1) return false;
        sealed[l] = 1;
      }
    }
    return true;
  }

  double bound(std::size_t depth, std::size_t used, const std::vector<char>& sealed) {
    CompensatedSum base;
    for (std::size_t l = 0; l < opened_; ++l) base += sign_[l] * cur_[l];
    const std::size_t remaining = M_ - used;
    gains_.clear();
    for (std::size_t v = depth; v < n_; ++v) {
      const double tp = 0.5 * tail_pos_[v * (n_ + 1) + depth];
      const double tn = 0.5 * tail_neg_[v * (n_ + 1) + depth];
      double best = 0.0;
      for (std::size_t l = 0; l < opened_; ++l) {
        if (sealed[l]) continue;
        const double own = sign_[l] * (W(v, v) + rel_[l][v]);
        best = std::max(best, std::max(0.0, own) + (sign_[l] > 0 ? tp : tn));
      }
      if (opened_ < m_) {
        best = std::max(best, std::max(0.0, W(v, v)) + tp);
        best = std::max(best, std::max(0.0, -W(v, v)) + tn);
      }
      gains_.push_back(best);
    }
    const std::size_t take = std::min(remaining, gains_.size());
    std::partial_sort(gains_.begin(), gains_.begin() + static_cast<std::ptrdiff_t>(take), gains_.end(),
                      std::greater<>());
    for (std::size_t i = 0; i < take; ++i) base += gains_[i];
    return std::min(base.value(), big_m_);
  }

  void add(std::size_t v, std::size_t l) {
    cur_[l] += W(v, v) + rel_[l][v];
    members_[l].insert(v);
    label_[v] = l;
    for (std::size_t u = 0; u < n_; ++u) {
      if (u != v) rel_[l][u] += W(u, v);
    }
  }

  void remove(std::size_t v, std::size_t l) {
    for (std::size_t u = 0; u < n_; ++u) {
      if (u != v) rel_[l][u] -= W(u, v);
    }
    members_[l].erase(v);
    label_[v] = kNone;
    cur_[l] -= W(v, v) + rel_[l][v];
  }

  void search(std::size_t depth, std::size_t used) {
    if (aborted_) return;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    std::vector<char> sealed(m_, 0);
    if (!connectivity_feasible(depth, sealed)) return;
    if (depth == n_) {
      std::vector<NodeSubset> motifs(members_.begin(),
                                     members_.begin() + static_cast<std::ptrdiff_t>(opened_));
      set_incumbent(std::move(motifs));
      return;
    }
    if (have_best_) {
      // Ties stay open while they can still win on fewer nodes or order.
      const double b = bound(depth, used, sealed);
      if (b < best_obj_ - order_.eps) return;
      if (b <= best_obj_ + order_.eps && used > best_nodes_) return;
    }

    const std::size_t v = depth;
    if (used < M_) {
      // Join an open motif, most promising first.
      std::vector<std::pair<double, std::size_t>> joins;
      for (std::size_t l = 0; l < opened_; ++l) {
        if (!sealed[l]) joins.emplace_back(sign_[l] * (W(v, v) + rel_[l][v]), l);
      }
      std::stable_sort(joins.begin(), joins.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      for (const auto& [gain, l] : joins) {
        add(v, l);
        search(depth + 1, used + 1);
        remove(v, l);
        if (aborted_) return;
      }
      // Open the next motif with either sign.
      if (opened_ < m_) {
        const std::size_t l = opened_;
        for (int s : {W(v, v) >= 0 ? 1 : -1, W(v, v) >= 0 ? -1 : 1}) {
          sign_[l] = s;
          ++opened_;
          add(v, l);
          search(depth + 1, used + 1);
          remove(v, l);
          --opened_;
          cur_[l] = 0.0;
          if (aborted_) return;
        }
        sign_[l] = 1;
      }
    }
    search(depth + 1, used);
  }

  const Graph& g_;
  const InteractionMatrix& mat_;
  std::size_t m_;
  std::size_t M_;
  double tau_;
  SearchLimits limits_;
  std::size_t n_;
  IncumbentOrder order_;

  std::vector<double> w_;
  std::vector<double> tail_pos_;
  std::vector<double> tail_neg_;
  double big_m_ = 0.0;

  std::vector<std::size_t> label_;
  std::vector<NodeSubset> members_;
  std::vector<std::vector<double>> rel_;
  std::vector<double> cur_;
  std::vector<int> sign_;
  std::size_t opened_ = 0;
  std::vector<double> gains_;

  bool have_best_ = false;
  double best_obj_ = 0.0;
  std::size_t best_nodes_ = 0;
  std::vector<std::vector<std::size_t>> best_form_;
  std::vector<NodeSubset> best_motifs_;

  std::size_t expansions_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Exact solver for instances beyond the reach of enumeration. With no limits
// the result is optimal; when a limit is hit the best explanation found so far
// is returned with optimal = false. A zero expansion budget returns the greedy
// incumbent.
inline Explanation branch_and_bound_search(const Graph& g, const InteractionMatrix& mat,
                                           std::size_t m, std::size_t M, double tau,
                                           const SearchLimits& limits = {}) {
  detail::check_matrix(g, mat);
  check_tau(tau);
  return detail::BranchAndBound(g, mat, m, M, tau, limits).run();
}

struct Budget {
  std::size_t m = kDefaultMotifCount;
  std::size_t M = 0;
};

// M = ceil(30% of the nodes), m = the configured default.
inline Budget default_budget(const Graph& g, std::size_t default_m = kDefaultMotifCount) {
  return Budget{default_m, (3 * g.node_count() + 9) / 10};
}

// Copied from a known ground truth: one motif per ground-truth motif and as
// many nodes as they cover.
inline Budget default_budget(const Graph& /*g*/, std::span<const NodeSubset> ground_truth) {
  Budget b{ground_truth.size(), 0};
  for (const auto& s : ground_truth) b.M += s.size();
  return b;
}

}  // namespace graphgame

#endif  // GRAPHGAME_MOTIF_SEARCH_HPP_
