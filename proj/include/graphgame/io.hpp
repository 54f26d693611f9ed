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

// JSON file formats.
//
//   graph:        {"n": 3, "edges": [[0,1],[1,2]]}
//   table game:   {"n": 2, "values": {"": 0.0, "0": 1.0, "1": 2.0, "0,1": 4.0}}
//   index:        {"k": 2, "kind": "myerson_taylor", "n": 3,
//                  "entries": [{"nodes": [0], "value": 0.5}, ...],
//                  "exactness": {"mode": "exact"}}
//   explanation:  {"motifs": [[0,1]], "scores": [1.0], "objective": 1.0,
//                  "optimal": true, "tau": 1.0, "m": 1, "M": 2}
//   ground truth: {"motifs": [[0,1],[3,4]]}

#ifndef GRAPHGAME_IO_HPP_
#define GRAPHGAME_IO_HPP_

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphgame/graph.hpp"
#include "graphgame/interaction.hpp"
#include "graphgame/metrics.hpp"
#include "graphgame/motif_search.hpp"
#include "graphgame/node_subset.hpp"
#include "graphgame/value_function.hpp"
#include "json.hpp"

namespace graphgame {

using json = nlohmann::json;

// Unreadable or malformed input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

inline json subset_to_json(const NodeSubset& s) {
  json a = json::array();
  s.for_each([&](std::size_t v) { a.push_back(v); });
  return a;
}

inline NodeSubset subset_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("node list must be an array");
  NodeSubset s(n);
  for (const auto& v : j) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() >= n) {
      throw InputError("invalid node " + v.dump() + " for n=" + std::to_string(n));
    }
    s.insert(v.get<std::size_t>());
  }
  return s;
}

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.node_count()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("edge must be a pair: " + e.dump());
      pairs.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    return Graph::build(n, std::span<const std::pair<std::size_t, std::size_t>>(pairs));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed graph: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid graph: ") + e.what());
  }
}

// Keys are comma-joined sorted node indices; "" is the empty set.
inline NodeSubset subset_from_key(const std::string& key, std::size_t n) {
  NodeSubset s(n);
  if (key.empty()) return s;
  std::stringstream ss(key);
  std::string tok;
  long prev = -1;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    long v = -1;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || v < 0 || static_cast<std::size_t>(v) >= n) {
      throw InputError("invalid table key '" + key + "'");
    }
    if (v <= prev) throw InputError("table key '" + key + "' is not sorted");
    prev = v;
    s.insert(static_cast<std::size_t>(v));
  }
  return s;
}

inline ValueFunction table_game_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::map<NodeSubset, double> table;
    for (const auto& [key, value] : j.at("values").items()) {
      table[subset_from_key(key, n)] = value.get<double>();
    }
    return make_table_game(n, std::move(table));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed table game: ") + e.what());
  }
}

// Tabulates f over all 2^n subsets.
inline json table_game_to_json(const ValueFunction& f) {
  const std::size_t n = f.node_count();
  if (n > kRandomGameNodeCap) throw std::invalid_argument("table export limited to 16 nodes");
  json values = json::object();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const NodeSubset s = NodeSubset::from_mask(n, mask);
    values[s.key()] = f.evaluate(s);
  }
  return {{"n", n}, {"values", values}};
}

inline json exactness_to_json(const Exactness& e) {
  if (e.exact) return {{"mode", "exact"}};
  return {{"mode", "sampled"},
          {"permutations", e.permutations},
          {"seed", e.seed},
          {"exhaustive", e.exhaustive}};
}

inline json index_to_json(const InteractionIndex& idx) {
  json entries = json::array();
  for (const auto& [s, value] : idx.entries()) {
    entries.push_back({{"nodes", subset_to_json(s)}, {"value", value}});
  }
  json out = {{"k", idx.order()},
              {"kind", to_string(idx.kind())},
              {"n", idx.node_count()},
              {"entries", entries},
              {"exactness", exactness_to_json(idx.exactness())}};
  if (!idx.annotations.empty()) out["annotations"] = idx.annotations;
  return out;
}

inline InteractionIndex index_from_json(const json& j) {
  try {
    const auto k = j.at("k").get<std::size_t>();
    const IndexKind kind = parse_index_kind(j.at("kind").get<std::string>());
    std::size_t n = 0;
    if (j.contains("n")) {
      n = j.at("n").get<std::size_t>();
    } else {
      for (const auto& e : j.at("entries")) {
        for (const auto& v : e.at("nodes")) n = std::max(n, v.get<std::size_t>() + 1);
      }
    }
    Exactness ex;
    if (j.contains("exactness") && j["exactness"].value("mode", "exact") == "sampled") {
      ex.exact = false;
      ex.permutations = j["exactness"].value("permutations", std::size_t{0});
      ex.seed = j["exactness"].value("seed", std::uint64_t{0});
      ex.exhaustive = j["exactness"].value("exhaustive", false);
    }
    InteractionIndex idx(n, k, kind, ex);
    for (const auto& e : j.at("entries")) {
      idx.set(subset_from_json(e.at("nodes"), n), e.at("value").get<double>());
    }
    if (j.contains("annotations")) idx.annotations = j["annotations"].get<std::vector<std::string>>();
    return idx;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed index: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid index: ") + e.what());
  }
}

inline json explanation_to_json(const Explanation& e) {
  json motifs = json::array();
  for (const auto& s : e.motifs) motifs.push_back(subset_to_json(s));
  return {{"motifs", motifs}, {"scores", e.scores}, {"objective", e.objective},
          {"optimal", e.optimal}, {"tau", e.tau},       {"m", e.m},
          {"M", e.M}};
}

inline Explanation explanation_from_json(const json& j, std::size_t n) {
  try {
    Explanation e;
    for (const auto& s : j.at("motifs")) e.motifs.push_back(subset_from_json(s, n));
    e.scores = j.at("scores").get<std::vector<double>>();
    e.objective = j.at("objective").get<double>();
    e.optimal = j.at("optimal").get<bool>();
    e.tau = j.at("tau").get<double>();
    e.m = j.at("m").get<std::size_t>();
    e.M = j.at("M").get<std::size_t>();
    return e;
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed explanation: ") + ex.what());
  }
}

inline GroundTruth ground_truth_from_json(const json& j, std::size_t n) {
  try {
    GroundTruth gt;
    for (const auto& s : j.at("motifs")) gt.motifs.push_back(subset_from_json(s, n));
    NodeSubset seen(n);
    for (const auto& s : gt.motifs) {
      if (s.intersects(seen)) throw InputError("ground-truth motifs overlap");
      seen |= s;
    }
    return gt;
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed ground truth: ") + ex.what());
  }
}

inline json metrics_to_json(const MetricsReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"f1", opt(r.f1)},
          {"ami", opt(r.ami)},
          {"auc", opt(r.auc)},
          {"fid_plus", opt(r.fid_plus)},
          {"fid_minus", opt(r.fid_minus)},
          {"fid", opt(r.fid)},
          {"fid_alpha_plus", opt(r.fid_alpha_plus)},
          {"fid_alpha_minus", opt(r.fid_alpha_minus)},
          {"fid_alpha", opt(r.fid_alpha)},
          {"alpha", r.alpha},
          {"samples", r.samples},
          {"seed", r.seed}};
}

}  // namespace graphgame

#endif  // GRAPHGAME_IO_HPP_
