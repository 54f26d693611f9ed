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

// Batch front end: attribute, explain, bench-queries.
//
// Exit codes: 0 success, 2 input error, 3 backend error, 4 cap exceeded.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "graphgame/graphgame.hpp"

namespace {

using namespace graphgame;

constexpr int kExitInput = 2;
constexpr int kExitBackend = 3;
constexpr int kExitCap = 4;

struct RunConfig {
  std::string graph_path;
  std::string values;
  std::string endpoint;
  std::string method = "myerson-taylor";
  std::size_t k = 2;
  std::string mode = "exact";
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  double tau = kDefaultTau;
  std::optional<std::size_t> m;
  std::optional<std::size_t> M;
  std::string gt_path;
  std::string out = "-";
  std::size_t threads = 1;
  std::size_t max_exact_nodes = kDefaultExactNodeCap;
  std::size_t timeout_ms = 30000;
  std::string search = "bnb";
  std::optional<std::size_t> max_expansions;
  std::optional<double> time_limit;
  bool fidelity = true;
  double alpha = kDefaultFidelityAlpha;
  std::size_t samples = 100;
  std::string edge_scores = "binary";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

NodeSubset parse_nodes(const std::string& text, std::size_t n) {
  try {
    return subset_from_key(text, n);
  } catch (const InputError&) {
    throw InputError("invalid node list '" + text + "'");
  }
}

double parse_double(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw InputError("invalid number '" + text + "'");
  return v;
}

// Builtin games: unanimity:0,1 | planted:0,1=2;3,4=-2 | random:SEED | size-squared.
std::optional<ValueFunction> builtin_game(const std::string& spec, const Graph& g) {
  const std::size_t n = g.node_count();
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "size-squared") return make_size_squared_game(n);
  if (name == "unanimity") return make_unanimity(parse_nodes(arg, n));
  if (name == "random") {
    std::size_t pos = 0;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(arg, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != arg.size()) throw InputError("invalid random game seed '" + arg + "'");
    return make_random_game(n, seed);
  }
  if (name == "planted") {
    std::vector<NodeSubset> motifs;
    std::vector<double> weights;
    for (const auto& part : split(arg, ';')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw InputError("planted motif '" + part + "' lacks '=weight'");
      motifs.push_back(parse_nodes(part.substr(0, eq), n));
      weights.push_back(parse_double(part.substr(eq + 1)));
    }
    return make_planted_motif_game(g, std::move(motifs), std::move(weights));
  }
  return std::nullopt;
}

// A fresh value function with its own cache and query counter.
std::function<ValueFunction()> value_source(const RunConfig& cfg, const Graph& g) {
  if (!cfg.endpoint.empty() && !cfg.values.empty()) {
    throw InputError("--values and --endpoint are mutually exclusive");
  }
  if (!cfg.endpoint.empty()) {
    EndpointOptions opts;
    opts.timeout = std::chrono::milliseconds(cfg.timeout_ms);
    return [endpoint = cfg.endpoint, g, opts] { return external_backend(endpoint, g, opts); };
  }
  if (cfg.values.empty()) throw InputError("one of --values or --endpoint is required");
  if (builtin_game(cfg.values, g)) {
    return [spec = cfg.values, g] { return *builtin_game(spec, g); };
  }
  const json table = read_json_file(cfg.values);
  const ValueFunction probe = table_game_from_json(table);
  if (probe.node_count() != g.node_count()) {
    throw InputError("table game has n=" + std::to_string(probe.node_count()) + " but the graph has n=" +
                     std::to_string(g.node_count()));
  }
  return [table] { return table_game_from_json(table); };
}

InteractionIndex relabel(const InteractionIndex& idx, IndexKind kind) {
  InteractionIndex out(idx.node_count(), idx.order(), kind, idx.exactness());
  for (const auto& [s, v] : idx.entries()) out.set(s, v);
  out.annotations = idx.annotations;
  return out;
}

InteractionIndex compute_index(const RunConfig& cfg, const Graph& g, const ValueFunction& f,
                               IndexKind kind, std::size_t k) {
  if (cfg.mode == "exact") {
    ExactOptions opts;
    opts.max_nodes = cfg.max_exact_nodes;
    switch (kind) {
      case IndexKind::kShapley: return shapley_exact(f, opts);
      case IndexKind::kMyerson: return myerson_exact(g, f, opts);
      case IndexKind::kShapleyTaylor: return shapley_taylor_exact(f, k, opts);
      case IndexKind::kMyersonTaylor: return myerson_taylor_exact(g, f, k, opts);
    }
  }
  SamplingOptions opts;
  opts.order = k;
  opts.permutations = cfg.permutations;
  opts.seed = cfg.seed;
  opts.restricted = is_restricted(kind);
  opts.exhaustive = cfg.mode == "exhaustive";
  opts.threads = cfg.threads;
  return relabel(sample_index(g, f, opts), kind);
}

struct Computed {
  InteractionIndex index;
  std::size_t queries = 0;
  double wall_ms = 0.0;
};

Computed run_index(const RunConfig& cfg, const Graph& g, const ValueFunction& f, IndexKind kind,
                   std::size_t k) {
  const auto start = std::chrono::steady_clock::now();
  Computed c{compute_index(cfg, g, f, kind, k), 0, 0.0};
  c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  c.queries = f.query_count();
  return c;
}

json stats_json(const Computed& c) {
  return {{"query_count", c.queries}, {"wall_time_ms", c.wall_ms}};
}

void emit(const RunConfig& cfg, const json& j) {
  if (cfg.out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(cfg.out, j);
  }
}

std::size_t effective_order(IndexKind kind, std::size_t k) {
  return kind == IndexKind::kShapley || kind == IndexKind::kMyerson ? 1 : k;
}

int cmd_attribute(const RunConfig& cfg) {
  const Graph g = graph_from_json(read_json_file(cfg.graph_path));
  const ValueFunction f = value_source(cfg, g)();
  const IndexKind kind = parse_index_kind(cfg.method);
  const Computed c = run_index(cfg, g, f, kind, effective_order(kind, cfg.k));
  json out = index_to_json(c.index);
  out["stats"] = stats_json(c);
  emit(cfg, out);
  return 0;
}

void print_metrics_table(std::ostream& os, const MetricsReport& r) {
  const std::vector<std::pair<std::string, std::optional<double>>> rows = {
      {"F1", r.f1},
      {"AMI", r.ami},
      {"AUC", r.auc},
      {"Fid+", r.fid_plus},
      {"Fid-", r.fid_minus},
      {"Fid", r.fid},
      {"Fid_alpha+", r.fid_alpha_plus},
      {"Fid_alpha-", r.fid_alpha_minus},
      {"Fid_alpha", r.fid_alpha},
  };
  for (const auto& [name, value] : rows) {
    char line[64];
    if (value) {
      std::snprintf(line, sizeof line, "%-12s %.6f\n", name.c_str(), *value);
    } else {
      std::snprintf(line, sizeof line, "%-12s n/a\n", name.c_str());
    }
    os << line;
  }
}

int cmd_explain(const RunConfig& cfg) {
  const Graph g = graph_from_json(read_json_file(cfg.graph_path));
  const std::size_t n = g.node_count();
  const IndexKind kind = parse_index_kind(cfg.method);
  if (effective_order(kind, cfg.k) != 2) {
    throw InputError("motif search needs a second-order index (--k 2 with a Taylor method)");
  }
  std::optional<GroundTruth> gt;
  if (!cfg.gt_path.empty()) gt = ground_truth_from_json(read_json_file(cfg.gt_path), n);

  Budget budget = gt ? default_budget(g, gt->motifs) : default_budget(g);
  if (cfg.m) budget.m = *cfg.m;
  if (cfg.M) budget.M = *cfg.M;

  const ValueFunction f = value_source(cfg, g)();
  const Computed c = run_index(cfg, g, f, kind, 2);
  const InteractionMatrix mat = build_matrix(c.index);

  Explanation e;
  if (cfg.search == "exhaustive") {
    e = exhaustive_search(g, mat, budget.m, budget.M, cfg.tau);
  } else {
    SearchLimits limits;
    limits.max_expansions = cfg.max_expansions;
    if (cfg.time_limit) {
      limits.time_limit = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::duration<double>(*cfg.time_limit));
    }
    e = branch_and_bound_search(g, mat, budget.m, budget.M, cfg.tau, limits);
  }

  json out = explanation_to_json(e);
  out["nodes_explored"] = e.nodes_explored;
  out["index"] = {{"kind", to_string(kind)}, {"k", 2}, {"exactness", exactness_to_json(c.index.exactness())}};
  out["stats"] = stats_json(c);
  if (gt) {
    MetricsOptions mo;
    mo.alpha = cfg.alpha;
    mo.samples = cfg.samples;
    mo.seed = cfg.seed;
    mo.fidelity = cfg.fidelity;
    mo.edge_mode = cfg.edge_scores == "continuous" ? EdgeScoreMode::kContinuous : EdgeScoreMode::kBinary;
    const MetricsReport report = evaluate_explanation(g, e, mat, &*gt, &f, mo);
    out["metrics"] = metrics_to_json(report);
    print_metrics_table(cfg.out == "-" ? std::cerr : std::cout, report);
  }
  emit(cfg, out);
  return 0;
}

int cmd_bench_queries(const RunConfig& cfg) {
  const Graph g = graph_from_json(read_json_file(cfg.graph_path));
  const auto source = value_source(cfg, g);
  RunConfig exact = cfg;
  exact.mode = "exact";
  const Computed st = run_index(exact, g, source(), IndexKind::kShapleyTaylor, cfg.k);
  const Computed mt = run_index(exact, g, source(), IndexKind::kMyersonTaylor, cfg.k);
  std::size_t connected = 0;
  for_each_connected_subset(g, g.node_count(), [&](const NodeSubset&) { ++connected; });
  const json out = {{"n", g.node_count()},
                    {"edges", g.edge_count()},
                    {"k", cfg.k},
                    {"connected_subsets", connected},
                    {"shapley_taylor", stats_json(st)},
                    {"myerson_taylor", stats_json(mt)}};
  emit(cfg, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Graph-structured interaction attribution and motif explanation"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--graph", cfg.graph_path, "Graph JSON file")->required();
  app.add_option("--values", cfg.values,
                 "Table-game JSON file or builtin: size-squared, unanimity:0,1, "
                 "planted:0,1=2;3,4=-2, random:SEED");
  app.add_option("--endpoint", cfg.endpoint, "Model server: tcp:HOST:PORT or stdio:COMMAND");
  app.add_option("--timeout-ms", cfg.timeout_ms, "Model server reply timeout")->capture_default_str();
  app.add_option("--method", cfg.method, "shapley, myerson, shapley-taylor or myerson-taylor")
      ->capture_default_str()
      ->check(CLI::IsMember({"shapley", "myerson", "shapley-taylor", "myerson-taylor", "shapley_taylor",
                             "myerson_taylor"}));
  app.add_option("--k", cfg.k, "Interaction order (forced to 1 for shapley and myerson)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--mode", cfg.mode, "exact, sampled or exhaustive (every ordering)")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "sampled", "exhaustive"}));
  app.add_option("--permutations", cfg.permutations, "Sampled orderings")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Sampler and fidelity seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Sampler threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--max-exact-nodes", cfg.max_exact_nodes, "Node cap for exact indices")->capture_default_str();
  app.add_option("--tau", cfg.tau, "Weight of positive interactions")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--m", cfg.m, "Maximum number of motifs");
  app.add_option("--M", cfg.M, "Maximum number of selected nodes");
  app.add_option("--search", cfg.search, "bnb or exhaustive")
      ->capture_default_str()
      ->check(CLI::IsMember({"bnb", "exhaustive"}));
  app.add_option("--max-expansions", cfg.max_expansions, "Branch-and-bound expansion budget");
  app.add_option("--time-limit", cfg.time_limit, "Branch-and-bound time limit in seconds");
  app.add_option("--gt", cfg.gt_path, "Ground-truth motifs JSON file");
  app.add_flag("--fidelity,!--no-fidelity", cfg.fidelity, "Compute fidelity metrics");
  app.add_option("--alpha", cfg.alpha, "Fid_alpha inclusion probability")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--samples", cfg.samples, "Fid_alpha samples")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--edge-scores", cfg.edge_scores, "binary or continuous edge scores for AUC")
      ->capture_default_str()
      ->check(CLI::IsMember({"binary", "continuous"}));
  app.add_option("--out", cfg.out, "Output file, - for stdout")->capture_default_str();

  auto* attribute = app.add_subcommand("attribute", "Compute an attribution index");
  auto* explain = app.add_subcommand("explain", "Compute an (m, M)-explanation");
  auto* bench = app.add_subcommand("bench-queries", "Count backend queries of both Taylor indices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (attribute->parsed()) return cmd_attribute(cfg);
    if (explain->parsed()) return cmd_explain(cfg);
    if (bench->parsed()) return cmd_bench_queries(cfg);
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
