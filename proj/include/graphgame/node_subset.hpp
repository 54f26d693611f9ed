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

#ifndef GRAPHGAME_NODE_SUBSET_HPP_
#define GRAPHGAME_NODE_SUBSET_HPP_

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphgame {

// A set of node indices drawn from a universe {0, ..., universe-1}, stored as
// a packed bit vector. The universe is not capped at the machine word width.
//
// Ordering is by cardinality first, then lexicographic on the sorted member
// list, so {0} < {1} < {2} < {0,1} < {0,2} < {1,2} < {0,1,2}.
class NodeSubset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  NodeSubset() = default;
  explicit NodeSubset(std::size_t universe)
      : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

  NodeSubset(std::size_t universe, std::initializer_list<std::size_t> members)
      : NodeSubset(universe) {
    for (auto v : members) insert(v);
  }

  template <class Range>
  static NodeSubset from_range(std::size_t universe, const Range& members) {
    NodeSubset s(universe);
    for (auto v : members) s.insert(static_cast<std::size_t>(v));
    return s;
  }

  // Bits of `mask` above `universe` are rejected.
  static NodeSubset from_mask(std::size_t universe, Word mask) {
    NodeSubset s(universe);
    if (universe < kWordBits && (mask >> universe) != 0) {
      throw std::out_of_range("mask has members outside the universe");
    }
    if (!s.words_.empty()) s.words_[0] = mask;
    return s;
  }

  static NodeSubset full(std::size_t universe) {
    NodeSubset s(universe);
    for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~Word{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  std::size_t size() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  bool contains(std::size_t v) const {
    return v < universe_ && ((words_[v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }

  void insert(std::size_t v) {
    check_index(v);
    words_[v / kWordBits] |= Word{1} << (v % kWordBits);
  }

  void erase(std::size_t v) {
    check_index(v);
    words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
  }

  NodeSubset with(std::size_t v) const {
    NodeSubset s = *this;
    s.insert(v);
    return s;
  }

  NodeSubset without(std::size_t v) const {
    NodeSubset s = *this;
    s.erase(v);
    return s;
  }

  NodeSubset& operator|=(const NodeSubset& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  NodeSubset& operator&=(const NodeSubset& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  // Set difference.
  NodeSubset& operator-=(const NodeSubset& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }

  friend NodeSubset operator|(NodeSubset a, const NodeSubset& b) { return a |= b; }
  friend NodeSubset operator&(NodeSubset a, const NodeSubset& b) { return a &= b; }
  friend NodeSubset operator-(NodeSubset a, const NodeSubset& b) { return a -= b; }

  // Complement within the universe.
  NodeSubset complement() const {
    NodeSubset s = *this;
    for (Word& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  bool is_subset_of(const NodeSubset& o) const {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & ~o.words_[w]) != 0) return false;
    }
    return true;
  }

  bool intersects(const NodeSubset& o) const {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & o.words_[w]) != 0) return true;
    }
    return false;
  }

  template <class F>
  void for_each(F&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const auto b = static_cast<std::size_t>(std::countr_zero(bits));
        fn(w * kWordBits + b);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for_each([&](std::size_t v) { out.push_back(v); });
    return out;
  }

  // Smallest member, or universe() when empty.
  std::size_t first() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) {
        return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
      }
    }
    return universe_;
  }

  // Only valid for universes of at most 64 nodes.
  Word mask() const {
    if (universe_ > kWordBits) throw std::logic_error("mask() needs universe <= 64");
    return words_.empty() ? 0 : words_[0];
  }

  std::span<const Word> words() const { return words_; }

  // "0,1,4", the key format of table-game files.
  std::string key() const {
    std::string out;
    for_each([&](std::size_t v) {
      if (!out.empty()) out += ',';
      out += std::to_string(v);
    });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::size_t>{}(universe_);
    for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  friend bool operator==(const NodeSubset& a, const NodeSubset& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  friend std::strong_ordering operator<=>(const NodeSubset& a, const NodeSubset& b) {
    if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      const Word diff = a.words_[w] ^ b.words_[w];
      if (diff != 0) {
        const Word lowest = diff & (~diff + 1);
        return (a.words_[w] & lowest) != 0 ? std::strong_ordering::less
                                            : std::strong_ordering::greater;
      }
    }
    return std::strong_ordering::equal;
  }

 private:
  void check_index(std::size_t v) const {
    if (v >= universe_) {
      throw std::out_of_range("node " + std::to_string(v) + " outside universe of " +
                              std::to_string(universe_));
    }
  }
  void check_same(const NodeSubset& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("node subsets over different universes");
  }
  void trim() {
    if (universe_ % kWordBits != 0 && !words_.empty()) {
      words_.back() &= (Word{1} << (universe_ % kWordBits)) - 1;
    }
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

struct NodeSubsetHash {
  std::size_t operator()(const NodeSubset& s) const { return s.hash(); }
};

}  // namespace graphgame

#endif  // GRAPHGAME_NODE_SUBSET_HPP_
