#pragma once

/**
 * @file mis.hpp
 * @brief Exact maximum independent set by branch and bound.
 *
 * The search runs on bitset rows. A candidate set is partitioned greedily into
 * cliques of the input graph; an independent set takes at most one vertex per
 * clique, so |current| + #cliques bounds every extension. Vertices are
 * branched on from the last clique backwards, highest-degree vertices first.
 *
 * The optimum size is found first; the returned set is then the
 * lexicographically least maximum independent set (by vertex index), found
 * with one size-decision query per vertex. That second phase makes the answer
 * independent of search order.
 */

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace trcomm {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : bits_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set_all() {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    if (bits_ & 63) words_.back() &= (std::uint64_t{1} << (bits_ & 63)) - 1;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  /// Index of the lowest set bit, or size() if empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    }
    return bits_;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  /// this = a & b without reallocating.
  void assign_and(const Bitset& a, const Bitset& b) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] = a.words_[k] & b.words_[k];
  }

  void assign(const Bitset& a) { std::copy(a.words_.begin(), a.words_.end(), words_.begin()); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n, Bitset(n)) {}

  std::size_t size() const { return adj_.size(); }
  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) return;
    adj_[u].set(v);
    adj_[v].set(u);
  }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
  const Bitset& neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].count(); }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& row : adj_) total += row.count();
    return total / 2;
  }

  bool is_independent(const std::vector<std::size_t>& set) const {
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        if (adjacent(set[i], set[j])) return false;
      }
    }
    return true;
  }

 private:
  std::vector<Bitset> adj_;
};

/// Wall-clock limit; nullopt means unlimited.
using Budget = std::optional<std::chrono::duration<double>>;

struct MisResult {
  std::vector<std::size_t> vertices;  // sorted ascending
  bool optimal = false;
  bool canonical = false;  // lexicographically least among maximum sets
  std::uint64_t nodes = 0;
};

namespace detail {

class MisSearch {
 public:
  MisSearch(const Graph& g, Budget budget) : n_(g.size()) {
    if (budget) deadline_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(*budget);
    // Internal order: descending degree in the "non-adjacency" graph, i.e.
    // ascending degree in g; ties by original index.
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::vector<std::size_t> deg(n_);
    for (std::size_t v = 0; v < n_; ++v) deg[v] = g.degree(v);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
    position_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) position_[order_[i]] = i;
    // expand() holds references into scratch_ across recursion, so it must never reallocate.
    scratch_.reserve(n_ + 2);
    adj_.assign(n_, Bitset(n_));
    free_.assign(n_, Bitset(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      g.neighbors(order_[i]).for_each([&](std::size_t u) { adj_[i].set(position_[u]); });
      free_[i].set_all();
      free_[i].reset(i);
      g.neighbors(order_[i]).for_each([&](std::size_t u) { free_[i].reset(position_[u]); });
    }
  }

  bool timed_out() const { return timed_out_; }
  std::uint64_t nodes() const { return nodes_; }

  /// Phase 1: the maximum size, with a witness in original indices.
  std::vector<std::size_t> maximum(std::vector<std::size_t> seed) {
    best_.clear();
    for (auto v : seed) best_.push_back(position_[v]);
    target_ = 0;
    Bitset all(n_);
    all.set_all();
    std::vector<std::size_t> current;
    expand(all, current, 0);
    std::vector<std::size_t> out;
    for (auto i : best_) out.push_back(order_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Does the candidate set (original indices) contain an independent set of size k?
  bool exists(const Bitset& candidates_original, std::size_t k) {
    if (k == 0) return true;
    Bitset p(n_);
    candidates_original.for_each([&](std::size_t v) { p.set(position_[v]); });
    best_.clear();
    target_ = k;
    found_ = false;
    std::vector<std::size_t> current;
    expand(p, current, 0);
    return found_;
  }

  const std::vector<std::size_t>& position() const { return position_; }

 private:
  // Greedy clique cover of p, in internal order. Fills verts/colors so that
  // colors are non-decreasing along verts.
  void cover(const Bitset& p, std::vector<std::size_t>& verts, std::vector<std::size_t>& colors, Bitset& u,
             Bitset& q) const {
    verts.clear();
    colors.clear();
    u.assign(p);
    std::size_t color = 0;
    while (!u.none()) {
      ++color;
      q.assign(u);
      while (!q.none()) {
        std::size_t v = q.first();
        q.reset(v);
        u.reset(v);
        q &= adj_[v];
        verts.push_back(v);
        colors.push_back(color);
      }
    }
  }

  bool check_clock() {
    if ((++nodes_ & 1023u) == 0 && deadline_ && std::chrono::steady_clock::now() > *deadline_) timed_out_ = true;
    return timed_out_;
  }

  // target_ == 0: maximize into best_. target_ > 0: stop once a set of that size exists.
  void expand(const Bitset& p, std::vector<std::size_t>& current, std::size_t depth) {
    if (check_clock() || found_) return;
    if (scratch_.size() <= depth) scratch_.emplace_back(n_);
    Level& lv = scratch_[depth];
    cover(p, lv.verts, lv.colors, lv.u, lv.q);
    lv.p.assign(p);
    for (std::size_t idx = lv.verts.size(); idx-- > 0;) {
      const std::size_t bound = current.size() + lv.colors[idx];
      if (target_ == 0 ? bound <= best_.size() : bound < target_) return;
      const std::size_t v = lv.verts[idx];
      current.push_back(v);
      if (scratch_.size() <= depth + 1) scratch_.emplace_back(n_);
      Bitset& next = scratch_[depth + 1].in;
      next.assign_and(lv.p, free_[v]);
      if (next.none()) {
        if (target_ == 0 && current.size() > best_.size()) best_ = current;
        if (target_ != 0 && current.size() >= target_) found_ = true;
      } else if (target_ != 0 && current.size() >= target_) {
        found_ = true;
      } else {
        expand(next, current, depth + 1);
      }
      current.pop_back();
      if (timed_out_ || found_) return;
      lv.p.reset(v);
    }
  }

  struct Level {
    explicit Level(std::size_t n) : in(n), p(n), u(n), q(n) {}
    Bitset in, p, u, q;
    std::vector<std::size_t> verts, colors;
  };

  std::size_t n_;
  std::vector<std::size_t> order_, position_;
  std::vector<Bitset> adj_, free_;
  std::vector<Level> scratch_;
  std::vector<std::size_t> best_;
  std::size_t target_ = 0;
  bool found_ = false;
  bool timed_out_ = false;
  std::uint64_t nodes_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

/// Greedy independent set: repeatedly take the lowest-degree remaining vertex.
inline std::vector<std::size_t> greedy_independent_set(const Graph& g) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.degree(a) < g.degree(b); });
  Bitset blocked(g.size());
  std::vector<std::size_t> out;
  for (auto v : order) {
    if (blocked.test(v)) continue;
    out.push_back(v);
    g.neighbors(v).for_each([&](std::size_t u) { blocked.set(u); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline MisResult max_independent_set(const Graph& g, Budget budget = std::nullopt) {
  MisResult result;
  const std::size_t n = g.size();
  if (n == 0) {
    result.optimal = result.canonical = true;
    return result;
  }
  detail::MisSearch search(g, budget);
  std::vector<std::size_t> best = search.maximum(detail::greedy_independent_set(g));
  result.vertices = best;
  result.optimal = !search.timed_out();
  if (!result.optimal) {
    result.nodes = search.nodes();
    return result;
  }

  // Lexicographically least maximum independent set.
  std::vector<std::size_t> chosen;
  Bitset candidates(n);
  candidates.set_all();
  std::size_t need = best.size();
  for (std::size_t v = 0; v < n && need > 0; ++v) {
    if (!candidates.test(v)) continue;
    candidates.reset(v);
    Bitset after = candidates;
    g.neighbors(v).for_each([&](std::size_t u) { after.reset(u); });
    bool ok = search.exists(after, need - 1);
    if (search.timed_out()) break;
    if (ok) {
      chosen.push_back(v);
      --need;
      candidates = after;
    }
  }
  if (need == 0 && !search.timed_out()) {
    result.vertices = chosen;
    result.canonical = true;
  }
  result.nodes = search.nodes();
  return result;
}

}  // namespace trcomm
