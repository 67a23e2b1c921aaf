#pragma once

/**
 * @file certificate.hpp
 * @brief Trace-zero non-commutator certificates built from separated sets.
 *
 * Given a 2d-separated set s_1..s_{2n-1} in Δ(m-1, 2d+1), the n x n matrix
 *
 *   [ x^s1       x^s2 ... x^sn ]
 *   [ x^s(n+1)   0    ...  0   ]
 *   [ ...                      ]
 *   [ x^s(2n-1)  0    ... -x^s1]
 *
 * over k[x1..xm] has trace zero and is not a commutator.
 */

#include <string>
#include <utility>
#include <vector>

#include "trcomm/error.hpp"
#include "trcomm/field.hpp"
#include "trcomm/io.hpp"
#include "trcomm/matrix.hpp"
#include "trcomm/packing.hpp"
#include "trcomm/ring.hpp"

namespace trcomm {

struct Certificate {
  std::size_t m = 0;
  std::uint64_t d = 0;
  std::size_t n = 0;
  FieldSpec field;
  std::vector<LatticePoint> points;  // exactly 2n-1, order significant
  Matrix x;
};

namespace detail {

inline Matrix noncommutator_matrix(const RingCtx& ctx, const std::vector<LatticePoint>& s, std::size_t n) {
  Matrix x(ctx, n);
  auto mono = [&](std::size_t k) { return ctx.monomial_of_point(s[k].coords); };
  for (std::size_t j = 0; j < n; ++j) x.set(0, j, mono(j));
  for (std::size_t i = 1; i < n; ++i) x.set(i, 0, mono(n + i - 1));
  x.set(n - 1, n - 1, n == 1 ? mono(0) : -mono(0));
  return x;
}

}  // namespace detail

/// Uses the first 2n-1 points of s in the given order.
inline Certificate build_noncommutator(std::size_t m, std::uint64_t d, const std::vector<LatticePoint>& s,
                                       std::size_t n, const FieldSpec& field) {
  if (m < 3) throw Error(ErrorCode::BadDimensions, "m = " + std::to_string(m) + " < 3");
  if (n < 2) throw Error(ErrorCode::BadDimensions, "n = " + std::to_string(n) + " < 2");
  if (s.size() < 2 * n - 1) {
    throw Error(ErrorCode::TooFewPoints,
                "need " + std::to_string(2 * n - 1) + " points, got " + std::to_string(s.size()));
  }
  std::vector<LatticePoint> used(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(2 * n - 1));
  SeparatedSet::make(m, d, used);  // WrongSimplex / NotSeparated
  RingCtx ctx(field, m);
  Matrix x = detail::noncommutator_matrix(ctx, used, n);
  if (!trace(x).is_zero()) throw Error(ErrorCode::ValidationFailed, "trace(X) != 0");
  return Certificate{m, d, n, field, std::move(used), std::move(x)};
}

inline Certificate build_noncommutator(const SeparatedSet& s, std::size_t n, const FieldSpec& field) {
  return build_noncommutator(s.m(), s.d(), s.points(), n, field);
}

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  std::string failures() const {
    std::string out;
    for (const auto& c : checks) {
      if (!c.passed) out += (out.empty() ? "" : "; ") + c.name + ": " + c.detail;
    }
    return out;
  }
};

/// Re-checks every hypothesis from scratch. Never throws.
inline ValidationReport validate_certificate(const Certificate& c) {
  ValidationReport r;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    r.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
  };

  add("dimensions", c.m >= 3 && c.n >= 2, "need m >= 3 and n >= 2, got m=" + std::to_string(c.m) + " n=" + std::to_string(c.n));
  const bool count_ok = c.n >= 1 && c.points.size() == 2 * c.n - 1;
  add("point_count", count_ok,
      "expected " + std::to_string(2 * c.n - 1) + " points, got " + std::to_string(c.points.size()));

  const SimplexSpec spec{c.m, 2 * c.d + 1};
  std::string simplex_detail;
  for (const auto& p : c.points) {
    if (!spec.contains(p)) {
      simplex_detail = p.to_string() + " not in Δ(" + std::to_string(c.m - 1) + "," + std::to_string(spec.r) + ")";
      break;
    }
  }
  add("simplex", simplex_detail.empty(), simplex_detail);

  // Separation, stated as distance >= 2d+2 rather than > 2d.
  std::string sep_detail;
  for (std::size_t i = 0; i < c.points.size() && sep_detail.empty(); ++i) {
    for (std::size_t j = i + 1; j < c.points.size(); ++j) {
      if (c.points[i].dim() != c.points[j].dim() || l1_distance(c.points[i], c.points[j]) < 2 * c.d + 2) {
        sep_detail = c.points[i].to_string() + " and " + c.points[j].to_string() + " are closer than " +
                     std::to_string(2 * c.d + 2);
        break;
      }
    }
  }
  add("separation", sep_detail.empty(), sep_detail);

  const RingCtx expected_ctx(c.field, c.m);
  add("ring", c.x.ctx() == expected_ctx, "X lives in " + c.x.ctx().to_string() + ", expected " + expected_ctx.to_string());

  bool shape_ok = false;
  std::string shape_detail = "cannot rebuild X from S";
  if (count_ok && simplex_detail.empty() && c.x.size() == c.n && c.x.ctx() == expected_ctx && c.n >= 1) {
    try {
      shape_ok = detail::noncommutator_matrix(expected_ctx, c.points, c.n) == c.x;
      shape_detail = "X differs from the matrix determined by S";
    } catch (const Error& e) {
      shape_detail = e.what();
    }
  }
  add("shape", shape_ok, shape_detail);

  bool trace_ok = false;
  std::string trace_detail;
  try {
    RingElem t = trace(c.x);
    trace_ok = t.is_zero();
    trace_detail = "trace(X) = " + t.to_text();
  } catch (const Error& e) {
    trace_detail = e.what();
  }
  add("trace", trace_ok, trace_detail);
  return r;
}

inline io::Json to_json(const Certificate& c) {
  io::Json s = io::Json::array();
  for (const auto& p : c.points) s.push_back(io::to_json(p));
  return io::Json{{"m", c.m}, {"d", c.d}, {"n", c.n}, {"field", io::to_json(c.field)}, {"S", s}, {"X", io::to_json(c.x)}};
}

inline std::string serialize(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

/// Reads the fields without checking any hypothesis. Throws MalformedInput.
inline Certificate parse_certificate_unchecked(const io::Json& j) {
  Certificate c;
  c.m = io::detail::get_field<std::size_t>(j, "m");
  c.d = io::detail::get_field<std::uint64_t>(j, "d");
  c.n = io::detail::get_field<std::size_t>(j, "n");
  c.field = io::field_from_json(io::detail::get_field<io::Json>(j, "field"));
  c.points = io::points_from_json(io::detail::get_field<io::Json>(j, "S"));
  c.x = io::matrix_from_json(io::detail::get_field<io::Json>(j, "X"));
  return c;
}

/// Throws MalformedInput for unreadable JSON, ValidationFailed if any hypothesis fails.
inline Certificate certificate_from_json(const io::Json& j) {
  Certificate c = parse_certificate_unchecked(j);
  ValidationReport report = validate_certificate(c);
  if (!report.ok()) throw Error(ErrorCode::ValidationFailed, report.failures());
  return c;
}

inline Certificate deserialize(std::string_view text) { return certificate_from_json(io::parse_json(text)); }

}  // namespace trcomm
