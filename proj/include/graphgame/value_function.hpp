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

#ifndef GRAPHGAME_VALUE_FUNCTION_HPP_
#define GRAPHGAME_VALUE_FUNCTION_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphgame/config.hpp"
#include "graphgame/graph.hpp"
#include "graphgame/node_subset.hpp"

namespace graphgame {

// Failure of a value-function backend. Transport errors may be retried;
// protocol errors indicate a broken peer.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual bool retriable() const { return false; }
};

class TransportError : public BackendError {
 public:
  using BackendError::BackendError;
  bool retriable() const override { return true; }
};

class ConnectionRefusedError : public TransportError {
 public:
  using TransportError::TransportError;
};

class TimeoutError : public TransportError {
 public:
  using TransportError::TransportError;
};

class ProtocolError : public BackendError {
 public:
  using BackendError::BackendError;
};

// The model server answered with an error reply.
class RemoteEvaluationError : public BackendError {
 public:
  using BackendError::BackendError;
};

// A black-box map from node subsets to reals with memoization.
//
// Copies share the cache. The cache is an at-most-once map: concurrent first
// accesses to the same subset wait for a single backend call, and
// query_count() reports the number of distinct subsets the backend has
// answered. A backend failure is not cached, so the call can be retried.
class ValueFunction {
 public:
  using Backend = std::function<double(const NodeSubset&)>;

  ValueFunction() = default;
  ValueFunction(std::size_t node_count, Backend backend, std::string name = "function")
      : state_(std::make_shared<State>()) {
    state_->n = node_count;
    state_->backend = std::move(backend);
    state_->name = std::move(name);
  }

  std::size_t node_count() const { return state_->n; }
  const std::string& name() const { return state_->name; }

  double evaluate(const NodeSubset& t) const {
    if (t.universe() != state_->n) {
      throw std::invalid_argument("subset universe " + std::to_string(t.universe()) +
                                  " does not match value function over " +
                                  std::to_string(state_->n) + " nodes");
    }
    std::promise<double> promise;
    std::shared_future<double> future;
    bool owner = false;
    {
      std::lock_guard<std::mutex> lock(state_->mutex);
      auto it = state_->cache.find(t);
      if (it != state_->cache.end()) {
        future = it->second;
      } else {
        future = promise.get_future().share();
        state_->cache.emplace(t, future);
        owner = true;
      }
    }
    if (!owner) return future.get();
    try {
      const double value = state_->backend(t);
      state_->queries.fetch_add(1, std::memory_order_relaxed);
      promise.set_value(value);
      return value;
    } catch (...) {
      {
        std::lock_guard<std::mutex> lock(state_->mutex);
        state_->cache.erase(t);
      }
      promise.set_exception(std::current_exception());
      throw;
    }
  }

  double operator()(const NodeSubset& t) const { return evaluate(t); }

  // f(empty set), cached like any other subset.
  double empty_value() const { return evaluate(NodeSubset(state_->n)); }

  std::size_t query_count() const { return state_->queries.load(std::memory_order_relaxed); }

  std::size_t cache_size() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    return state_->cache.size();
  }

 private:
  struct State {
    std::size_t n = 0;
    Backend backend;
    std::string name;
    mutable std::mutex mutex;
    std::unordered_map<NodeSubset, std::shared_future<double>, NodeSubsetHash> cache;
    std::atomic<std::size_t> queries{0};
  };

  std::shared_ptr<State> state_;
};

// f|E: the value of a subset is the sum of the base function over the
// connected components it induces. Only connected subsets reach the base.
class RestrictedValueFunction {
 public:
  RestrictedValueFunction(ValueFunction base, Graph graph)
      : base_(std::move(base)), graph_(std::move(graph)) {
    if (base_.node_count() != graph_.node_count()) {
      throw std::invalid_argument("value function and graph disagree on node count");
    }
  }

  double evaluate(const NodeSubset& t) const {
    detail::check_subset(graph_, t);
    CompensatedSum sum;
    if (graph_.node_count() <= 64) {
      const std::size_t n = graph_.node_count();
      detail::for_each_component_mask(graph_.adjacency_masks(), t.mask(), [&](std::uint64_t c) {
        sum += base_.evaluate(NodeSubset::from_mask(n, c));
      });
    } else {
      for (const NodeSubset& c : connected_components(graph_, t).components) sum += base_.evaluate(c);
    }
    return sum.value();
  }

  double operator()(const NodeSubset& t) const { return evaluate(t); }

  const ValueFunction& base() const { return base_; }
  const Graph& graph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }

  // The restriction as a cached ValueFunction of its own.
  ValueFunction as_value_function() const {
    RestrictedValueFunction copy = *this;
    return ValueFunction(
        graph_.node_count(), [copy](const NodeSubset& t) { return copy.evaluate(t); },
        "restricted(" + base_.name() + ")");
  }

 private:
  ValueFunction base_;
  Graph graph_;
};

// g(T) = f(T) - f(empty). Evaluates f(empty) once, up front.
inline ValueFunction normalize(const ValueFunction& f) {
  const double offset = f.empty_value();
  if (offset == 0.0) return f;
  return ValueFunction(
      f.node_count(), [f, offset](const NodeSubset& t) { return f.evaluate(t) - offset; },
      "normalized(" + f.name() + ")");
}

inline ValueFunction make_function_game(std::size_t n, ValueFunction::Backend fn,
                                        std::string name = "function") {
  return ValueFunction(n, std::move(fn), std::move(name));
}

// Explicit table; subsets missing from the table are rejected on evaluation.
inline ValueFunction make_table_game(std::size_t n, std::map<NodeSubset, double> table) {
  for (const auto& [s, _] : table) {
    if (s.universe() != n) throw std::invalid_argument("table key over the wrong universe");
  }
  auto shared = std::make_shared<const std::map<NodeSubset, double>>(std::move(table));
  return ValueFunction(
      n,
      [shared](const NodeSubset& t) {
        auto it = shared->find(t);
        if (it == shared->end()) {
          throw std::out_of_range("table game has no value for {" + t.key() + "}");
        }
        return it->second;
      },
      "table");
}

// u_T(S) = 1 if S contains T, else 0.
inline ValueFunction make_unanimity(const NodeSubset& t) {
  if (t.empty()) throw std::invalid_argument("unanimity game needs a nonempty carrier");
  return ValueFunction(
      t.universe(), [t](const NodeSubset& s) { return t.is_subset_of(s) ? 1.0 : 0.0; },
      "unanimity{" + t.key() + "}");
}

// Weighted sum of unanimity games on connected motifs.
inline ValueFunction make_planted_motif_game(const Graph& g, std::vector<NodeSubset> motifs,
                                             std::vector<double> weights) {
  if (motifs.size() != weights.size()) {
    throw std::invalid_argument("motif and weight counts differ");
  }
  for (const NodeSubset& m : motifs) {
    detail::check_subset(g, m);
    if (m.empty() || !is_connected(g, m)) {
      throw std::invalid_argument("planted motif {" + m.key() + "} is not a connected subgraph");
    }
  }
  return ValueFunction(
      g.node_count(),
      [motifs = std::move(motifs), weights = std::move(weights)](const NodeSubset& s) {
        double v = 0.0;
        for (std::size_t l = 0; l < motifs.size(); ++l) {
          if (motifs[l].is_subset_of(s)) v += weights[l];
        }
        return v;
      },
      "planted");
}

inline constexpr std::size_t kRandomGameNodeCap = 16;

// i.i.d. uniform[-1, 1] values for every nonempty subset, f(empty) = 0.
inline ValueFunction make_random_game(std::size_t n, std::uint64_t seed) {
  if (n > kRandomGameNodeCap) {
    throw std::invalid_argument("random games are materialized; n must be <= " +
                                std::to_string(kRandomGameNodeCap));
  }
  std::mt19937_64 rng(seed);
  auto table = std::make_shared<std::vector<double>>(std::size_t{1} << n);
  (*table)[0] = 0.0;
  for (std::size_t mask = 1; mask < table->size(); ++mask) {
    (*table)[mask] = 2.0 * unit_double(rng()) - 1.0;
  }
  return ValueFunction(
      n, [table](const NodeSubset& t) { return (*table)[t.mask()]; },
      "random(" + std::to_string(seed) + ")");
}

// f(T) = |T|^2, handy in examples.
inline ValueFunction make_size_squared_game(std::size_t n) {
  return ValueFunction(
      n,
      [](const NodeSubset& t) {
        const auto s = static_cast<double>(t.size());
        return s * s;
      },
      "size-squared");
}

}  // namespace graphgame

#endif  // GRAPHGAME_VALUE_FUNCTION_HPP_
