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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "graphgame/graphgame.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace {

using namespace graphgame;
using testing_support::as_oracle_game;
using testing_support::edge_list;
using testing_support::max_abs_diff;

constexpr double kTol = 1e-9;
constexpr std::size_t kPoolSize = 120;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Tracks the worst deviation and the number of failed checks of one criterion.
struct Check {
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;

  void near(double got, double want, double tol) {
    const double d = std::abs(got - want);
    worst = std::max(worst, d);
    if (!(d <= tol)) ++failures;
  }
  void deviation(double d, double tol) { near(d, 0.0, tol); }
  void truth(bool ok) {
    if (!ok) ++failures;
  }
};

int g_failed = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

void report_check(const std::string& name, const Check& c, std::size_t min_cases, double tol,
                  double elapsed = -1.0, double time_limit = -1.0) {
  bool pass = c.failures == 0 && c.cases >= min_cases;
  std::string detail = fmt("%zu cases, max deviation %.3g (tol %.0e)", c.cases, c.worst, tol);
  if (time_limit > 0) {
    pass = pass && elapsed < time_limit;
    detail += fmt(", %.1f s (limit %.0f s)", elapsed, time_limit);
  }
  if (c.failures > 0) detail += fmt(", %zu failed checks", c.failures);
  report(name, pass, detail);
}

// Pool of (graph, game, order) instances with n <= 8; orders cycle through
// 1, 2, 3 and graphs alternate between connected and possibly disconnected.
std::vector<testing_support::Instance> instance_pool() {
  std::vector<testing_support::Instance> pool;
  for (std::uint64_t seed = 0; seed < kPoolSize; ++seed) {
    auto inst = testing_support::random_instance(seed, 8);
    inst.order = std::min<std::size_t>(1 + seed % 3, inst.graph.node_count());
    pool.push_back(std::move(inst));
  }
  return pool;
}

std::string pool_summary(const std::vector<testing_support::Instance>& pool) {
  std::size_t disconnected = 0;
  std::size_t by_order[4] = {0, 0, 0, 0};
  for (const auto& inst : pool) {
    if (!is_connected(inst.graph, NodeSubset::full(inst.graph.node_count()))) ++disconnected;
    ++by_order[inst.order];
  }
  return fmt("pool of %zu: k=1/2/3 %zu/%zu/%zu, %zu disconnected", pool.size(), by_order[1], by_order[2],
             by_order[3], disconnected);
}

void recovery_identities(const std::vector<testing_support::Instance>& pool) {
  const auto start = Clock::now();
  Check c;
  for (const auto& inst : pool) {
    const std::size_t n = inst.graph.node_count();
    const Graph kn = Graph::complete(n);
    c.deviation(max_abs_diff(myerson_taylor_exact(kn, inst.game, inst.order),
                             shapley_taylor_exact(inst.game, inst.order)), kTol);
    c.deviation(max_abs_diff(myerson_taylor_exact(inst.graph, inst.game, 1), myerson_exact(inst.graph, inst.game)),
                kTol);
    c.deviation(max_abs_diff(myerson_exact(kn, inst.game), shapley_exact(inst.game)), kTol);
    ++c.cases;
  }
  report_check("recovery identities (MT=ST on complete graphs, MT k=1 = Myerson, Myerson=Shapley on complete)",
               c, 100, kTol, seconds_since(start), 60.0);
}

void oracle_agreement(const std::vector<testing_support::Instance>& pool) {
  Check c;
  for (const auto& inst : pool) {
    const int n = static_cast<int>(inst.graph.node_count());
    if (n > 7) continue;
    const auto want = oracle::myerson_taylor(n, static_cast<int>(inst.order), edge_list(inst.graph),
                                             as_oracle_game(inst.game));
    c.deviation(max_abs_diff(myerson_taylor_exact(inst.graph, inst.game, inst.order), want), kTol);
    ++c.cases;
  }
  report_check("exact Myerson-Taylor equals the permutation-average oracle (n <= 7)", c, 50, kTol);
}

void axiom_linearity(const std::vector<testing_support::Instance>& pool) {
  Check c;
  for (std::size_t p = 0; p < pool.size(); ++p) {
    const auto& inst = pool[p];
    const std::size_t n = inst.graph.node_count();
    const ValueFunction f2 = make_random_game(n, 5000 + p);
    const double a = 0.75 - 0.5 * static_cast<double>(p % 5);
    const double b = 1.25;
    const ValueFunction f1 = inst.game;
    const ValueFunction mix = make_function_game(
        n, [f1, f2, a, b](const NodeSubset& s) { return a * f1.evaluate(s) + b * f2.evaluate(s); });
    const auto i1 = myerson_taylor_exact(inst.graph, f1, inst.order);
    const auto i2 = myerson_taylor_exact(inst.graph, f2, inst.order);
    const auto im = myerson_taylor_exact(inst.graph, mix, inst.order);
    for (const auto& [s, v] : im.entries()) c.near(v, a * i1[s] + b * i2[s], kTol);
    ++c.cases;
  }
  report_check("linearity axiom", c, 100, kTol);
}

void axiom_restricted_null_player(const std::vector<testing_support::Instance>& pool) {
  Check c;
  for (std::size_t p = 0; p < pool.size(); ++p) {
    const auto& inst = pool[p];
    const std::size_t n = inst.graph.node_count();
    const std::size_t i = p % n;
    auto table = testing_support::table_of(normalize(inst.game));
    const double fi = table[std::uint64_t{1} << i];
    const RestrictedValueFunction base(testing_support::from_table(n, table), inst.graph);
    for (std::uint64_t m = 0; m < table.size(); ++m) {
      const NodeSubset t = NodeSubset::from_mask(n, m);
      if (t.contains(i) || !is_connected(inst.graph, t.with(i))) continue;
      table[m | (std::uint64_t{1} << i)] = base.evaluate(t) + fi;
    }
    const auto idx = myerson_taylor_exact(inst.graph, testing_support::from_table(n, table), inst.order);
    c.near(idx.at({i}), fi, kTol);
    for (const auto& [s, v] : idx.entries()) {
      if (s.contains(i) && s.size() >= 2) c.near(v, 0.0, kTol);
    }
    ++c.cases;
  }
  report_check("restricted null player axiom", c, 100, kTol);
}

void axiom_component_efficiency(const std::vector<testing_support::Instance>& pool) {
  Check c;
  for (const auto& inst : pool) {
    const std::size_t n = inst.graph.node_count();
    const auto idx = myerson_taylor_exact(inst.graph, inst.game, inst.order);
    const double empty = inst.game.empty_value();
    for (const auto& comp : connected_components(inst.graph, NodeSubset::full(n)).components) {
      double sum = 0.0;
      for (const auto& [s, v] : idx.entries()) {
        if (s.is_subset_of(comp)) sum += v;
      }
      c.near(sum, inst.game.evaluate(comp) - empty, kTol);
    }
    ++c.cases;
  }
  report_check("component efficiency axiom", c, 100, kTol);
}

void axiom_coalitional_fairness(const std::vector<testing_support::Instance>& pool) {
  Check c;
  for (std::size_t p = 0; p < pool.size(); ++p) {
    const auto& inst = pool[p];
    const std::size_t n = inst.graph.node_count();
    const auto connected = enumerate_connected_subsets(inst.graph, n);
    const NodeSubset t = connected[(p * 7) % connected.size()];
    auto table = testing_support::table_of(inst.game);
    const auto f1 = testing_support::from_table(n, table);
    table[t.mask()] += 0.625;
    const auto f2 = testing_support::from_table(n, table);
    const auto a = myerson_taylor_exact(inst.graph, f1, inst.order);
    const auto b = myerson_taylor_exact(inst.graph, f2, inst.order);
    std::map<std::size_t, double> delta_by_size;
    for (const auto& [s, v] : a.entries()) {
      if (!s.is_subset_of(t)) continue;
      const double d = v - b[s];
      auto [it, fresh] = delta_by_size.emplace(s.size(), d);
      if (!fresh) c.near(d, it->second, kTol);
    }
    ++c.cases;
  }
  report_check("coalitional fairness axiom", c, 100, kTol);
}

void axiom_interaction_distribution(const std::vector<testing_support::Instance>& pool, Check& allocation) {
  Check c;
  for (std::size_t p = 0; p < pool.size(); ++p) {
    const auto& inst = pool[p];
    const std::size_t n = inst.graph.node_count();
    const auto connected = enumerate_connected_subsets(inst.graph, n);
    const NodeSubset t = connected[(p * 13 + 5) % connected.size()];
    const auto idx = myerson_taylor_exact(inst.graph, make_unanimity(t), inst.order);
    for (const auto& [s, v] : idx.entries()) {
      if (s != t && s.is_subset_of(t) && s.size() < inst.order) c.near(v, 0.0, kTol);
      double want = 0.0;
      if (s.size() < inst.order) want = s == t ? 1.0 : 0.0;
      if (s.size() == inst.order && s.is_subset_of(t)) want = 1.0 / binomial(t.size(), inst.order);
      allocation.near(v, want, kTol);
    }
    ++c.cases;
    ++allocation.cases;
  }
  report_check("interaction distribution axiom", c, 100, kTol);
}

void structural_identities(const std::vector<testing_support::Instance>& pool, const Check& allocation) {
  report_check("unanimity allocation 1/C(|T|,k) on connected carriers", allocation, 100, kTol);

  Check idem;
  Check fair;
  Check reduce;
  for (std::size_t p = 0; p < pool.size(); ++p) {
    const auto& inst = pool[p];
    const std::size_t n = inst.graph.node_count();

    const auto direct = myerson_taylor_exact(inst.graph, inst.game, inst.order);
    const auto restricted = testing_support::from_table(
        n, testing_support::table_of(RestrictedValueFunction(normalize(inst.game), inst.graph).as_value_function()));
    idem.deviation(max_abs_diff(direct, myerson_taylor_exact(inst.graph, restricted, inst.order)), kTol);
    ++idem.cases;

    if (inst.graph.edge_count() > 0) {
      const Edge e = inst.graph.edges()[p % inst.graph.edge_count()];
      const auto without = myerson_taylor_exact(inst.graph.without_edge(e.u, e.v), inst.game, inst.order);
      const NodeSubset uv(n, {e.u, e.v});
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const NodeSubset s = NodeSubset::from_mask(n, m);
        if (s.intersects(uv) || s.size() + 1 > inst.order) continue;
        const NodeSubset si = s.with(e.u), sj = s.with(e.v);
        fair.near(direct[si] - without[si], direct[sj] - without[sj], kTol);
      }
      ++fair.cases;
    }

    reduce.deviation(max_abs_diff(reduce_to_value(direct), myerson_exact(inst.graph, inst.game)), kTol);
    reduce.deviation(max_abs_diff(reduce_to_value(shapley_taylor_exact(inst.game, inst.order)),
                                  shapley_exact(inst.game)), kTol);
    ++reduce.cases;
  }
  report_check("restriction idempotence (f|E restricted again is unchanged)", idem, 100, kTol);
  report_check("fairness under single-edge removal", fair, 100, kTol);
  report_check("reduction of the Taylor index to node values", reduce, 100, kTol);
}

void dividend_route(const std::vector<testing_support::Instance>& pool) {
  Check route;
  Check rebuild;
  for (const auto& inst : pool) {
    const std::size_t n = inst.graph.node_count();
    const auto d = mobius_dividends(inst.graph, inst.game);
    route.deviation(max_abs_diff(index_from_dividends(d, inst.graph, inst.order),
                                 myerson_taylor_exact(inst.graph, inst.game, inst.order)), kTol);
    ++route.cases;
    const RestrictedValueFunction rv(normalize(inst.game), inst.graph);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const NodeSubset w = NodeSubset::from_mask(n, m);
      rebuild.near(d.reconstruct(w), rv.evaluate(w), kTol);
    }
    ++rebuild.cases;
  }
  report_check("dividend route equals exact Myerson-Taylor", route, 100, kTol);
  report_check("dividend reconstruction of f|E on all subsets", rebuild, 100, kTol);
}

void sampler() {
  constexpr double kExactTol = 1e-12;
  Check ex;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = testing_support::random_instance(seed, 7);
    for (bool restricted : {true, false}) {
      SamplingOptions opts;
      opts.order = inst.order;
      opts.exhaustive = true;
      opts.restricted = restricted;
      const auto sampled = sample_index(inst.graph, inst.game, opts);
      const auto exact = restricted ? myerson_taylor_exact(inst.graph, inst.game, inst.order)
                                    : shapley_taylor_exact(inst.game, inst.order);
      ex.deviation(max_abs_diff(sampled, exact), kExactTol);
      ++ex.cases;
    }
  }
  report_check("sampler exhaustive-ordering mode equals exact", ex, 20, kExactTol);

  std::size_t better = 0;
  constexpr std::size_t kSeeds = 20;
  double mae50_total = 0.0, mae200_total = 0.0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    std::mt19937_64 rng(7000 + seed);
    const Graph g = testing_support::random_connected_graph(6, 0.3, rng);
    const ValueFunction f = make_random_game(6, rng());
    const auto exact = myerson_taylor_exact(g, f, 2);
    auto mae = [&](std::size_t perms) {
      SamplingOptions opts;
      opts.order = 2;
      opts.permutations = perms;
      opts.seed = 100 + seed;
      const auto est = sample_index(g, f, opts);
      double total = 0.0;
      for (const auto& [s, v] : exact.entries()) total += std::abs(est[s] - v);
      return total / static_cast<double>(exact.entries().size());
    };
    const double e50 = mae(50);
    const double e200 = mae(200);
    mae50_total += e50;
    mae200_total += e200;
    if (e200 < e50) ++better;
  }
  report(
      "sampler error at 200 orderings below 50 orderings on n=6 (>= 90% of seeds)",
      better * 10 >= kSeeds * 9,
      fmt("%zu of %zu seeds, mean MAE %.4f (50) vs %.4f (200)", better, kSeeds, mae50_total / kSeeds,
          mae200_total / kSeeds));
}

InteractionMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  InteractionMatrix mat(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (unit_double(rng()) < 0.5) mat.set(i, j, 4.0 * unit_double(rng()) - 2.0);
    }
  }
  return mat;
}

void motif_search() {
  const auto start = Clock::now();
  Check c;
  Check feasible;
  std::size_t oracle_checked = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    std::mt19937_64 rng(9000 + trial);
    const std::size_t n = 3 + trial % 10;
    const Graph g = trial % 2 == 0 ? testing_support::random_connected_graph(n, 0.15, rng)
                                   : testing_support::random_graph(n, 0.3, rng);
    InteractionMatrix mat(n);
    if (trial % 4 == 3 && n <= 10) {
      mat = build_matrix(myerson_taylor_exact(g, make_random_game(n, rng()), 2));
    } else {
      mat = random_matrix(n, rng);
    }
    const std::size_t m = 1 + rng() % 3;
    const std::size_t M = 1 + rng() % n;
    const double tau = std::vector<double>{0.0, 0.25, 0.5, 1.0}[rng() % 4];
    const auto ex = exhaustive_search(g, mat, m, M, tau);
    const auto bb = branch_and_bound_search(g, mat, m, M, tau);
    c.near(bb.objective, ex.objective, kTol);
    c.truth(bb.optimal);
    feasible.truth(explanation_violation(g, bb).empty());
    feasible.truth(explanation_violation(g, ex).empty());
    if (n <= 7) {
      const double want = oracle::best_explanation_objective(static_cast<int>(n), edge_list(g),
                                                             [&] {
                                                               std::vector<std::vector<double>> b(
                                                                   n, std::vector<double>(n));
                                                               for (std::size_t i = 0; i < n; ++i)
                                                                 for (std::size_t j = 0; j < n; ++j) b[i][j] = mat(i, j);
                                                               return b;
                                                             }(),
                                                             static_cast<int>(m), static_cast<int>(M), tau);
      c.near(ex.objective, want, kTol);
      ++oracle_checked;
    }
    ++c.cases;
    ++feasible.cases;
  }
  const double elapsed = seconds_since(start);
  report_check(fmt("branch and bound objective equals exhaustive search (n <= 12, m <= 3; %zu also vs assignment oracle)",
                   oracle_checked),
               c, 200, kTol, elapsed, 300.0);
  report_check("explanations satisfy the connectivity, disjointness and budget constraints", feasible, 200, 0.0);
}

// Grows a connected motif of `size` nodes from `seed` inside `allowed`.
NodeSubset grow_motif(const Graph& g, std::size_t seed, std::size_t size, const NodeSubset& allowed,
                      std::mt19937_64& rng) {
  NodeSubset motif(g.node_count(), {seed});
  while (motif.size() < size) {
    std::vector<std::size_t> frontier;
    motif.for_each([&](std::size_t v) {
      for (std::size_t w : g.neighbors(v)) {
        if (allowed.contains(w) && !motif.contains(w)) frontier.push_back(w);
      }
    });
    if (frontier.empty()) break;
    motif.insert(frontier[rng() % frontier.size()]);
  }
  return motif;
}

void planted_recovery() {
  std::size_t recovered = 0;
  std::size_t trials = 0;
  std::size_t attempts = 0;
  while (trials < 100) {
    std::mt19937_64 rng(20000 + attempts++);
    const std::size_t n = 8 + rng() % 5;
    const Graph g = testing_support::random_connected_graph(n, 0.15, rng);
    const NodeSubset all = NodeSubset::full(n);
    const std::size_t size1 = 2 + rng() % 3;
    const std::size_t size2 = 2 + rng() % 3;
    const NodeSubset m1 = grow_motif(g, rng() % n, size1, all, rng);
    const NodeSubset rest = all - m1;
    const auto rest_nodes = rest.members();
    const NodeSubset m2 = grow_motif(g, rest_nodes[rng() % rest_nodes.size()], size2, rest, rng);
    if (m1.size() != size1 || m2.size() != size2) continue;
    const double w1 = 1.0 + 2.0 * unit_double(rng());
    const double w2 = -1.0 - 2.0 * unit_double(rng());
    const std::vector<NodeSubset> truth = {m1, m2};
    const ValueFunction f = make_planted_motif_game(g, truth, {w1, w2});
    const auto mat = build_matrix(myerson_taylor_exact(g, f, 2));
    const Budget b = default_budget(g, truth);
    const auto e = branch_and_bound_search(g, mat, b.m, b.M, 0.5);
    if (std::abs(ami_score(e.motifs, truth, n) - 1.0) <= 1e-12) ++recovered;
    ++trials;
  }
  report("planted two-motif recovery with AMI = 1 (>= 95 of 100, n in 8..12, tau 0.5)", recovered >= 95,
         fmt("%zu of %zu trials", recovered, trials));
}

void query_counts() {
  bool pass = true;
  std::string detail;
  for (std::size_t n = 4; n <= 10; ++n) {
    const Graph path = Graph::path(n);
    const ValueFunction st = make_size_squared_game(n);
    const ValueFunction mt = make_size_squared_game(n);
    shapley_taylor_exact(st, 2);
    myerson_taylor_exact(path, mt, 2);
    pass = pass && mt.query_count() < st.query_count();
    detail += fmt("P%zu %zu<%zu ", n, mt.query_count(), st.query_count());

    const Graph kn = Graph::complete(n);
    const ValueFunction st2 = make_size_squared_game(n);
    const ValueFunction mt2 = make_size_squared_game(n);
    shapley_taylor_exact(st2, 2);
    myerson_taylor_exact(kn, mt2, 2);
    pass = pass && mt2.query_count() == st2.query_count();
  }
  report("query counts: Myerson-Taylor below Shapley-Taylor on paths n=4..10, equal on complete graphs", pass,
         detail + "K4..K10 equal");
}

void metrics_suite() {
  Check alpha_one;
  Check sampled;
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + rng() % 5;
    const ValueFunction f = make_random_game(n, rng());
    NodeSubset s(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (rng() % 2) s.insert(v);
    }
    const auto exact = fidelity(f, s);
    const auto one = fidelity_alpha(f, s, 1.0, 20, trial);
    alpha_one.near(one.plus, exact.plus, 0.0);
    alpha_one.near(one.minus, exact.minus, 0.0);
    alpha_one.near(one.value, exact.value, 0.0);
    ++alpha_one.cases;

    const auto game = as_oracle_game(f);
    const oracle::Mask all = (oracle::Mask{1} << n) - 1;
    const double full = game(all);
    const double want_plus = full - oracle::expectation_over_removed(game, all, s.mask(), 0.8);
    const double want_minus = full - oracle::expectation_over_kept(game, s.mask(), all & ~s.mask(), 0.2);
    const auto got = fidelity_alpha(f, s, 0.8, 2000, 500 + trial);
    sampled.truth(std::abs(got.plus - want_plus) <= 3.0 * got.plus_stderr + 1e-12);
    sampled.truth(std::abs(got.minus - want_minus) <= 3.0 * got.minus_stderr + 1e-12);
    sampled.worst = std::max({sampled.worst, std::abs(got.plus - want_plus) / std::max(got.plus_stderr, 1e-300),
                              std::abs(got.minus - want_minus) / std::max(got.minus_stderr, 1e-300)});
    ++sampled.cases;
  }
  report_check("Fid_alpha at alpha = 1 equals Fid exactly", alpha_one, 20, 0.0);
  report("sampled Fid_alpha within 3 standard errors of the enumerated expectation", sampled.failures == 0,
         fmt("%zu cases, largest |error|/stderr %.2f", sampled.cases, sampled.worst));

  Check edge;
  auto near = [&](double got, double want) {
    edge.near(got, want, 1e-9);
    ++edge.cases;
  };
  auto holds = [&](bool ok) {
    edge.truth(ok);
    ++edge.cases;
  };
  using Labels = std::vector<std::size_t>;
  const Labels gt = {1, 1, 0, 0, 0, 2, 2, 0};
  near(adjusted_mutual_information(Labels{0, 0, 0, 0, 0, 0, 0, 0}, gt), 0.0);
  near(adjusted_mutual_information(Labels{1, 1, 1, 0, 0, 2, 2, 0}, gt), 0.6218214430827151);
  near(adjusted_mutual_information(Labels{2, 2, 0, 0, 1, 1, 0, 0}, gt), 0.324980401829963);
  near(adjusted_mutual_information(Labels{0, 1, 1, 0, 0, 0, 2, 2, 0, 0}, Labels{1, 1, 0, 0, 0, 2, 2, 0, 0, 0}),
       -0.1647395802165841);
  near(adjusted_mutual_information(gt, gt), 1.0);
  near(adjusted_mutual_information(Labels{2, 2, 0, 0, 0, 1, 1, 0}, gt), 1.0);
  near(f1_score(NodeSubset(4, {0, 1}), NodeSubset(4, {1, 2})), 0.5);
  near(f1_score(NodeSubset(4), NodeSubset(4)), 1.0);
  near(f1_score(NodeSubset(4), NodeSubset(4, {0})), 0.0);
  near(*auc_score(std::vector<double>{0.9, 0.4, 0.7}, std::vector<char>{1, 0, 1}), 1.0);
  near(*auc_score(std::vector<double>{0.5, 0.5, 0.5}, std::vector<char>{1, 0, 1}), 0.5);
  holds(!auc_score(std::vector<double>{0.1, 0.2}, std::vector<char>{1, 1}).has_value());
  holds(!auc_score(std::vector<double>{0.1, 0.2}, std::vector<char>{0, 0}).has_value());
  const Graph p5 = Graph::path(5);
  const auto planted = make_planted_motif_game(p5, {NodeSubset(5, {1, 2})}, {3.0});
  const auto fid = fidelity(planted, NodeSubset(5, {1, 2}));
  near(fid.plus, 3.0);
  near(fid.minus, 0.0);
  near(fidelity_alpha(planted, NodeSubset(5, {1, 2}), 0.0, 10, 1).plus, 0.0);
  report_check("AMI, F1, AUC and fidelity edge cases", edge, 16, 1e-9);
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const auto pool = instance_pool();
  std::printf("# %s\n", pool_summary(pool).c_str());

  recovery_identities(pool);
  oracle_agreement(pool);
  axiom_linearity(pool);
  axiom_restricted_null_player(pool);
  axiom_component_efficiency(pool);
  axiom_coalitional_fairness(pool);
  Check allocation;
  axiom_interaction_distribution(pool, allocation);
  structural_identities(pool, allocation);
  dividend_route(pool);
  sampler();
  motif_search();
  planted_recovery();
  query_counts();
  metrics_suite();

  std::printf("# %d criteria failed, %.1f s total\n", g_failed, seconds_since(start));
  return g_failed == 0 ? 0 : 1;
}
