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

#ifndef GRAPHGAME_CONFIG_HPP_
#define GRAPHGAME_CONFIG_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphgame {

// Numeric tolerances used across the library and its checks.
struct Tolerances {
  // Identities between exact index routes.
  double identity = 1e-9;
  // Exhaustive-permutation sampling against the exact index.
  double exhaustive = 1e-12;
  // Relative slack when comparing motif-search objectives.
  double objective_tie = 1e-12;
};

inline constexpr Tolerances kTolerances{};

// Exact paths materialize 2^n tables.
inline constexpr std::size_t kDefaultExactNodeCap = 16;
inline constexpr std::size_t kHardExactNodeCap = 30;

inline constexpr std::size_t kDefaultPermutations = 200;
inline constexpr double kDefaultTau = 1.0;
inline constexpr double kDefaultFidelityAlpha = 0.8;
inline constexpr std::size_t kDefaultMotifCount = 2;

// Raised when an exact computation would exceed the configured node cap.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Pascal's triangle up to n, as doubles (exact for n <= 60).
inline std::vector<std::vector<double>> binomial_table(std::size_t n) {
  std::vector<std::vector<double>> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1.0);
    for (std::size_t j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw, so seeded
// streams agree across standard library implementations.
inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

namespace detail {

// Fisher-Yates over a 64-bit engine; independent of std::shuffle's
// implementation-defined draw pattern.
template <class Engine, class T>
void seeded_shuffle(Engine& rng, std::vector<T>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace detail

}  // namespace graphgame

#endif  // GRAPHGAME_CONFIG_HPP_
