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

// Explanation-quality metrics: node F1, adjusted mutual information between
// motif partitions, edge-mask AUC, and (robust) fidelity.

#ifndef GRAPHGAME_METRICS_HPP_
#define GRAPHGAME_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphgame/config.hpp"
#include "graphgame/graph.hpp"
#include "graphgame/motif_search.hpp"
#include "graphgame/node_subset.hpp"
#include "graphgame/value_function.hpp"

namespace graphgame {

struct GroundTruth {
  std::vector<NodeSubset> motifs;

  NodeSubset nodes(std::size_t n) const {
    NodeSubset all(n);
    for (const auto& s : motifs) all |= s;
    return all;
  }
};

// Edges with both endpoints in the same motif, aligned with g.edges().
inline std::vector<char> motif_edge_mask(const Graph& g, std::span<const NodeSubset> motifs) {
  std::vector<char> mask(g.edge_count(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    for (const auto& s : motifs) {
      if (s.contains(edge.u) && s.contains(edge.v)) mask[e] = 1;
    }
  }
  return mask;
}

inline double f1_score(const NodeSubset& pred, const NodeSubset& gt) {
  const std::size_t p = pred.size();
  const std::size_t t = gt.size();
  if (p == 0 && t == 0) return 1.0;
  if (p == 0 || t == 0) return 0.0;
  return 2.0 * static_cast<double>((pred & gt).size()) / static_cast<double>(p + t);
}

// Cluster label per node: 1 + motif index, 0 for the shared background.
inline std::vector<std::size_t> partition_labels(std::span<const NodeSubset> motifs, std::size_t n) {
  std::vector<std::size_t> labels(n, 0);
  for (std::size_t l = 0; l < motifs.size(); ++l) {
    motifs[l].for_each([&](std::size_t v) {
      if (labels[v] != 0) throw std::invalid_argument("motifs of a partition overlap");
      labels[v] = l + 1;
    });
  }
  return labels;
}

// Adjusted mutual information of two labelings of the same n items, with
// the permutation-model expected MI and the arithmetic mean of entropies.
inline double adjusted_mutual_information(std::span<const std::size_t> a,
                                          std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("labelings differ in length");
  const std::size_t n = a.size();
  std::map<std::size_t, std::size_t> ia, ib;
  for (std::size_t x : a) ia.emplace(x, ia.size());
  for (std::size_t x : b) ib.emplace(x, ib.size());
  // Both trivial: identical partitions.
  if ((ia.size() == 1 && ib.size() == 1) || n == 0) return 1.0;

  const std::size_t ra = ia.size();
  const std::size_t rb = ib.size();
  std::vector<double> cont(ra * rb, 0.0);
  std::vector<double> row(ra, 0.0), col(rb, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t x = ia[a[i]];
    const std::size_t y = ib[b[i]];
    cont[x * rb + y] += 1.0;
    row[x] += 1.0;
    col[y] += 1.0;
  }
  const double N = static_cast<double>(n);

  auto entropy = [N](const std::vector<double>& counts) {
    double h = 0.0;
    for (double c : counts) {
      if (c > 0) h -= (c / N) * std::log(c / N);
    }
    return h;
  };
  double mi = 0.0;
  for (std::size_t x = 0; x < ra; ++x) {
    for (std::size_t y = 0; y < rb; ++y) {
      const double nij = cont[x * rb + y];
      if (nij > 0) mi += (nij / N) * std::log(N * nij / (row[x] * col[y]));
    }
  }

  // E[MI] under the hypergeometric model.
  double emi = 0.0;
  const double lg_n = std::lgamma(N + 1);
  for (double ai : row) {
    for (double bj : col) {
      const double lo = std::max(1.0, ai + bj - N);
      const double hi = std::min(ai, bj);
      for (double nij = lo; nij <= hi; nij += 1.0) {
        const double term = (nij / N) * std::log(N * nij / (ai * bj));
        const double log_p = std::lgamma(ai + 1) + std::lgamma(bj + 1) + std::lgamma(N - ai + 1) +
                             std::lgamma(N - bj + 1) - lg_n - std::lgamma(nij + 1) -
                             std::lgamma(ai - nij + 1) - std::lgamma(bj - nij + 1) -
                             std::lgamma(N - ai - bj + nij + 1);
        emi += term * std::exp(log_p);
      }
    }
  }

  const double mean_h = 0.5 * (entropy(row) + entropy(col));
  double denom = mean_h - emi;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  denom = denom < 0 ? std::min(denom, -kEps) : std::max(denom, kEps);
  return std::clamp((mi - emi) / denom, -1.0, 1.0);
}

// AMI between two motif partitions of V; unassigned nodes share one
// background cluster.
inline double ami_score(std::span<const NodeSubset> pred, std::span<const NodeSubset> gt,
                        std::size_t n) {
  const auto a = partition_labels(pred, n);
  const auto b = partition_labels(gt, n);
  return adjusted_mutual_information(a, b);
}

// Mann-Whitney AUC with midrank ties. Absent when either class is empty.
inline std::optional<double> auc_score(std::span<const double> scores, std::span<const char> positive) {
  if (scores.size() != positive.size()) throw std::invalid_argument("scores and labels differ in length");
  const std::size_t n = scores.size();
  std::size_t pos = 0;
  for (char p : positive) pos += p != 0 ? 1 : 0;
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) return std::nullopt;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return scores[i] < scores[j]; });
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = mid;
    i = j + 1;
  }
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (positive[i] != 0) rank_sum += rank[i];
  }
  const double p = static_cast<double>(pos);
  return (rank_sum - p * (p + 1) / 2.0) / (p * static_cast<double>(neg));
}

enum class EdgeScoreMode { kBinary, kContinuous };

// Edge mask of an explanation, aligned with g.edges(). Binary: 1 for edges
// inside a motif. Continuous: |tau B+_uv + (1 - tau) B-_uv| for edges inside
// a motif. Edges leaving a motif score 0.
inline std::vector<double> edge_scores_from_explanation(const Graph& g, const Explanation& exp,
                                                        const InteractionMatrix& mat,
                                                        EdgeScoreMode mode = EdgeScoreMode::kBinary) {
  std::vector<double> out(g.edge_count(), 0.0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    for (const auto& s : exp.motifs) {
      if (!s.contains(edge.u) || !s.contains(edge.v)) continue;
      out[e] = mode == EdgeScoreMode::kBinary ? 1.0
                                              : std::abs(mat.weighted(edge.u, edge.v, exp.tau));
    }
  }
  return out;
}

struct FidelityResult {
  double plus = 0.0;
  double minus = 0.0;
  double value = 0.0;
};

// Fid+ = f(V) - f(V \ S), Fid- = f(V) - f(S), Fid = Fid+ - Fid-.
inline FidelityResult fidelity(const ValueFunction& f, const NodeSubset& s) {
  const NodeSubset all = NodeSubset::full(f.node_count());
  const double full = f.evaluate(all);
  FidelityResult r;
  r.plus = full - f.evaluate(all - s);
  r.minus = full - f.evaluate(s);
  r.value = r.plus - r.minus;
  return r;
}

struct FidelityAlphaResult {
  double plus = 0.0;
  double minus = 0.0;
  double value = 0.0;
  // Standard errors of the two Monte Carlo means.
  double plus_stderr = 0.0;
  double minus_stderr = 0.0;
};

// Robust fidelity: Fid+_a = f(V) - E f(V \ Omega^a(S)) and
// Fid-_a = f(V) - E f(S u Omega^{1-a}(V \ S)), where Omega^p(T) keeps each
// node of T independently with probability p.
inline FidelityAlphaResult fidelity_alpha(const ValueFunction& f, const NodeSubset& s,
                                          double alpha = kDefaultFidelityAlpha,
                                          std::size_t samples = 100, std::uint64_t seed = 0) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (samples == 0) throw std::invalid_argument("at least one sample is required");
  const std::size_t n = f.node_count();
  const NodeSubset all = NodeSubset::full(n);
  const NodeSubset rest = all - s;
  const double full = f.evaluate(all);
  std::mt19937_64 rng(seed);

  auto keep = [&](const NodeSubset& t, double p) {
    NodeSubset out(n);
    t.for_each([&](std::size_t v) {
      if (unit_double(rng()) < p) out.insert(v);
    });
    return out;
  };

  std::vector<double> removed(samples), kept(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    removed[i] = f.evaluate(all - keep(s, alpha));
    kept[i] = f.evaluate(s | keep(rest, 1.0 - alpha));
  }
  const double count = static_cast<double>(samples);
  // Shifted by the first sample so that identical samples average exactly.
  auto mean_of = [&](const std::vector<double>& xs) {
    CompensatedSum shift;
    for (double x : xs) shift += x - xs[0];
    return xs[0] + shift.value() / count;
  };
  const double mean_removed = mean_of(removed);
  const double mean_kept = mean_of(kept);
  auto stderr_of = [&](const std::vector<double>& xs, double mean) {
    if (samples < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (count - 1.0) / count);
  };

  FidelityAlphaResult r;
  r.plus = full - mean_removed;
  r.minus = full - mean_kept;
  r.value = r.plus - r.minus;
  r.plus_stderr = stderr_of(removed, mean_removed);
  r.minus_stderr = stderr_of(kept, mean_kept);
  return r;
}

struct MetricsReport {
  std::optional<double> f1;
  std::optional<double> ami;
  std::optional<double> auc;
  std::optional<double> fid_plus;
  std::optional<double> fid_minus;
  std::optional<double> fid;
  std::optional<double> fid_alpha_plus;
  std::optional<double> fid_alpha_minus;
  std::optional<double> fid_alpha;
  double alpha = kDefaultFidelityAlpha;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
};

struct MetricsOptions {
  double alpha = kDefaultFidelityAlpha;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  bool fidelity = true;
  EdgeScoreMode edge_mode = EdgeScoreMode::kBinary;
};

// Every metric that the inputs allow: ground-truth metrics when `gt` is
// given, fidelity when `f` is given.
inline MetricsReport evaluate_explanation(const Graph& g, const Explanation& exp,
                                          const InteractionMatrix& mat, const GroundTruth* gt,
                                          const ValueFunction* f, const MetricsOptions& opts = {}) {
  const std::size_t n = g.node_count();
  MetricsReport r;
  r.alpha = opts.alpha;
  r.samples = opts.samples;
  r.seed = opts.seed;
  NodeSubset selected(n);
  for (const auto& s : exp.motifs) selected |= s;
  if (gt != nullptr) {
    r.f1 = f1_score(selected, gt->nodes(n));
    r.ami = ami_score(exp.motifs, gt->motifs, n);
    const auto scores = edge_scores_from_explanation(g, exp, mat, opts.edge_mode);
    const auto truth = motif_edge_mask(g, gt->motifs);
    r.auc = auc_score(scores, truth);
  }
  if (f != nullptr && opts.fidelity) {
    const auto fid = fidelity(*f, selected);
    r.fid_plus = fid.plus;
    r.fid_minus = fid.minus;
    r.fid = fid.value;
    const auto fa = fidelity_alpha(*f, selected, opts.alpha, opts.samples, opts.seed);
    r.fid_alpha_plus = fa.plus;
    r.fid_alpha_minus = fa.minus;
    r.fid_alpha = fa.value;
  }
  return r;
}

}  // namespace graphgame

#endif  // GRAPHGAME_METRICS_HPP_
