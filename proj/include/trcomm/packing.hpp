#pragma once

/**
 * @file packing.hpp
 * @brief 2d-separated point sets in the discrete simplex Δ(m-1, 2d+1).
 *
 * A largest separated set can always be taken to contain the m corner points
 * (2d+1)e_i. The remaining points are exactly the simplex points with every
 * coordinate <= d, pairwise at l1-distance > 2d, i.e. an independent set of
 * the graph G(m, d) on those points. Two points of the same simplex are at
 * even distance, so "> 2d" and ">= 2d+2" coincide there.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trcomm/error.hpp"
#include "trcomm/mis.hpp"

namespace trcomm {

struct LatticePoint {
  std::vector<std::uint32_t> coords;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<std::uint32_t> c) : coords(std::move(c)) {}
  LatticePoint(std::initializer_list<std::uint32_t> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  std::uint64_t sum() const {
    std::uint64_t s = 0;
    for (auto c : coords) s += c;
    return s;
  }
  std::uint32_t max() const { return coords.empty() ? 0 : *std::max_element(coords.begin(), coords.end()); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
    return s + ")";
  }

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline std::uint64_t l1_distance(const LatticePoint& a, const LatticePoint& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, a.to_string() + " vs " + b.to_string());
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) d += a.coords[i] > b.coords[i] ? a.coords[i] - b.coords[i] : b.coords[i] - a.coords[i];
  return d;
}

/// Δ(m-1, r): points of Z_{>=0}^m with coordinate sum r.
struct SimplexSpec {
  std::size_t m = 1;
  std::uint64_t r = 0;

  bool contains(const LatticePoint& p) const { return p.dim() == m && p.sum() == r; }
};

namespace detail {

// Compositions of `remaining` into the coordinates pos..m-1, each <= cap,
// in descending lexicographic order.
inline void compositions(std::size_t m, std::uint64_t remaining, std::uint64_t cap, std::size_t pos,
                         std::vector<std::uint32_t>& cur, std::vector<LatticePoint>& out) {
  if (pos + 1 == m) {
    if (remaining <= cap) {
      cur[pos] = static_cast<std::uint32_t>(remaining);
      out.emplace_back(cur);
    }
    return;
  }
  // Later coordinates can absorb at most cap each.
  const std::uint64_t rest_capacity = cap * (m - pos - 1);
  const std::uint64_t lo = remaining > rest_capacity ? remaining - rest_capacity : 0;
  const std::uint64_t hi = std::min(remaining, cap);
  for (std::uint64_t v = hi + 1; v-- > lo;) {
    cur[pos] = static_cast<std::uint32_t>(v);
    compositions(m, remaining - v, cap, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

inline std::vector<LatticePoint> bounded_compositions(std::size_t m, std::uint64_t r, std::uint64_t cap) {
  std::vector<LatticePoint> out;
  if (m == 0) return out;
  std::vector<std::uint32_t> cur(m, 0);
  compositions(m, r, cap, 0, cur, out);
  return out;
}

}  // namespace detail

/// All compositions of r into m parts, in descending lexicographic order
/// ((r,0,..,0) first). There are C(r+m-1, m-1) of them.
inline std::vector<LatticePoint> simplex_points(const SimplexSpec& spec) {
  return detail::bounded_compositions(spec.m, spec.r, spec.r);
}

struct SeparationCheck {
  bool separated = true;
  std::optional<std::pair<std::size_t, std::size_t>> violation;  // first offending index pair

  explicit operator bool() const { return separated; }
};

/// True iff all distinct pairs are at l1-distance > d.
inline SeparationCheck is_d_separated(std::span<const LatticePoint> points, std::uint64_t d) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].dim() != points[0].dim()) {
      throw Error(ErrorCode::DimensionMismatch, "point " + std::to_string(i) + " has a different length");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (l1_distance(points[i], points[j]) <= d) return {false, std::make_pair(i, j)};
    }
  }
  return {};
}

inline LatticePoint corner_point(std::size_t m, std::uint64_t d, std::size_t i) {
  std::vector<std::uint32_t> c(m, 0);
  c.at(i) = static_cast<std::uint32_t>(2 * d + 1);
  return LatticePoint(std::move(c));
}

/// An ordered 2d-separated subset of Δ(m-1, 2d+1); validated on construction.
class SeparatedSet {
 public:
  /// Throws WrongSimplex or NotSeparated.
  static SeparatedSet make(std::size_t m, std::uint64_t d, std::vector<LatticePoint> points) {
    SimplexSpec spec{m, 2 * d + 1};
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!spec.contains(points[i])) {
        throw Error(ErrorCode::WrongSimplex, points[i].to_string() + " is not in Δ(" + std::to_string(m - 1) + "," +
                                                 std::to_string(2 * d + 1) + ")");
      }
    }
    auto check = is_d_separated(points, 2 * d);
    if (!check) {
      auto [i, j] = *check.violation;
      throw Error(ErrorCode::NotSeparated, points[i].to_string() + " and " + points[j].to_string() + " are at distance " +
                                               std::to_string(l1_distance(points[i], points[j])) +
                                               " <= " + std::to_string(2 * d));
    }
    return SeparatedSet(m, d, std::move(points));
  }

  std::size_t m() const { return m_; }
  std::uint64_t d() const { return d_; }
  SimplexSpec spec() const { return {m_, 2 * d_ + 1}; }
  const std::vector<LatticePoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  SeparatedSet(std::size_t m, std::uint64_t d, std::vector<LatticePoint> points)
      : m_(m), d_(d), points_(std::move(points)) {}

  std::size_t m_;
  std::uint64_t d_;
  std::vector<LatticePoint> points_;
};

/// Adds every corner (2d+1)e_i, i = 1..m in order: a corner is appended when
/// it is separated from everything, otherwise it replaces the single point
/// within distance 2d of it. Output lists the corners first, then the
/// surviving original points in their original order.
inline SeparatedSet normalize_with_corners(const SeparatedSet& s) {
  const std::size_t m = s.m();
  const std::uint64_t d = s.d();
  std::vector<LatticePoint> current = s.points();
  for (std::size_t i = 0; i < m; ++i) {
    LatticePoint corner = corner_point(m, d, i);
    if (std::find(current.begin(), current.end(), corner) != current.end()) continue;
    std::vector<std::size_t> close;
    for (std::size_t k = 0; k < current.size(); ++k) {
      if (l1_distance(current[k], corner) <= 2 * d) close.push_back(k);
    }
    if (close.empty()) {
      current.push_back(std::move(corner));
    } else if (close.size() == 1) {
      current[close[0]] = std::move(corner);
    } else {
      throw Error(ErrorCode::NonUniqueConflict, "corner " + corner.to_string() + " conflicts with " +
                                                    std::to_string(close.size()) + " points");
    }
  }
  std::vector<LatticePoint> ordered;
  for (std::size_t i = 0; i < m; ++i) ordered.push_back(corner_point(m, d, i));
  for (auto& p : current) {
    if (std::find(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(m), p) == ordered.begin() + static_cast<std::ptrdiff_t>(m)) {
      ordered.push_back(std::move(p));
    }
  }
  return SeparatedSet::make(m, d, std::move(ordered));
}

/// Points of Δ(m-1, 2d+1) with every coordinate <= d: exactly the points
/// 2d-separated from all corners.
inline std::vector<LatticePoint> interior_candidates(std::size_t m, std::uint64_t d) {
  return detail::bounded_compositions(m, 2 * d + 1, d);
}

struct SepGraph {
  std::size_t m = 0;
  std::uint64_t d = 0;
  std::vector<LatticePoint> vertices;
  Graph graph;
};

/// G(m, d): interior candidates, adjacent when at l1-distance <= 2d.
inline SepGraph build_graph(std::size_t m, std::uint64_t d) {
  SepGraph g{m, d, interior_candidates(m, d), Graph()};
  g.graph = Graph(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      if (l1_distance(g.vertices[i], g.vertices[j]) <= 2 * d) g.graph.add_edge(i, j);
    }
  }
  return g;
}

inline MisResult max_independent_set(const SepGraph& g, Budget budget = std::nullopt) {
  return max_independent_set(g.graph, budget);
}

struct PackingResult {
  SeparatedSet set;
  bool optimal;
};

/// Corners followed by a maximum independent set of G(m, d) (lexicographically
/// least when the search finishes).
inline PackingResult best_separated_set(std::size_t m, std::uint64_t d, Budget budget = std::nullopt) {
  if (m < 1) throw Error(ErrorCode::PreconditionViolated, "m must be >= 1");
  SepGraph g = build_graph(m, d);
  MisResult mis = max_independent_set(g, budget);
  std::vector<LatticePoint> points;
  for (std::size_t i = 0; i < m; ++i) points.push_back(corner_point(m, d, i));
  for (auto v : mis.vertices) points.push_back(g.vertices[v]);
  return {SeparatedSet::make(m, d, std::move(points)), mis.optimal};
}

/// 2-adic valuation of j > 0.
inline std::uint32_t two_adic_valuation(std::uint64_t j) { return static_cast<std::uint32_t>(std::countr_zero(j)); }

/// Corners plus, for 1 <= j <= m/2 and 1 <= k <= m-2j with r = ord_2(j), the
/// point with d-r-k at position k, d at k+j and r+k+1 at k+2j (1-based).
/// Size m(m+2)/4 for even m, (m+1)^2/4 for odd m. Requires d >= m-1.
inline SeparatedSet quadratic_construction(std::size_t m, std::uint64_t d) {
  if (m < 1) throw Error(ErrorCode::PreconditionViolated, "m must be >= 1");
  if (d + 1 < m) {
    throw Error(ErrorCode::PreconditionViolated, "needs d >= m-1 (m=" + std::to_string(m) + ", d=" + std::to_string(d) + ")");
  }
  std::vector<LatticePoint> points;
  for (std::size_t i = 0; i < m; ++i) points.push_back(corner_point(m, d, i));
  for (std::size_t j = 1; 2 * j <= m; ++j) {
    const std::uint64_t r = two_adic_valuation(j);
    for (std::size_t k = 1; k + 2 * j <= m; ++k) {
      std::vector<std::uint32_t> c(m, 0);
      c[k - 1] = static_cast<std::uint32_t>(d - r - k);
      c[k + j - 1] = static_cast<std::uint32_t>(d);
      c[k + 2 * j - 1] = static_cast<std::uint32_t>(r + k + 1);
      points.emplace_back(std::move(c));
    }
  }
  return SeparatedSet::make(m, d, std::move(points));
}

/// A(m, 4, 3), the largest number of weight-3 binary words of length m at
/// pairwise Hamming distance >= 4.
inline std::uint64_t constant_weight_bound(std::uint64_t m) {
  if (m < 3) throw Error(ErrorCode::PreconditionViolated, "A(m,4,3) formula needs m >= 3");
  std::uint64_t value = m * ((m - 1) / 2) / 3;
  return m % 6 == 5 ? value - 1 : value;
}

struct UpperBounds {
  std::uint64_t set_bound;                    // 4^(m-1)
  std::optional<std::uint64_t> matrix_bound;  // 2^(2m-3), m >= 3
};

inline UpperBounds upper_bounds(std::uint64_t m) {
  if (m < 1 || m > 32) throw Error(ErrorCode::PreconditionViolated, "bounds are computed for 1 <= m <= 32");
  UpperBounds b{std::uint64_t{1} << (2 * (m - 1)), std::nullopt};
  if (m >= 3) b.matrix_bound = std::uint64_t{1} << (2 * m - 3);
  return b;
}

/// Largest n with 2n-1 <= #S.
inline std::uint64_t matrix_size_from_set(std::size_t set_size) {
  if (set_size < 3) throw Error(ErrorCode::SetTooSmall, "need at least 3 points, got " + std::to_string(set_size));
  return (set_size + 1) / 2;
}

inline std::uint64_t matrix_size_from_set(const SeparatedSet& s) { return matrix_size_from_set(s.size()); }

}  // namespace trcomm
