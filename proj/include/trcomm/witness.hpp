#pragma once

/**
 * @file witness.hpp
 * @brief Constructive commutator decompositions A = [X, B].
 *
 * Every decomposition comes back as a WitnessPair, and a WitnessPair can only
 * be built by recomputing [X, B] and comparing it with the target.
 */

#include <string>
#include <utility>
#include <vector>

#include "trcomm/error.hpp"
#include "trcomm/matrix.hpp"
#include "trcomm/ring.hpp"

namespace trcomm {

class WitnessPair {
 public:
  /// Throws WitnessVerificationFailed unless [x, b] == target.
  static WitnessPair verified(Matrix x, Matrix b, Matrix target) {
    if (!(commutator(x, b) == target)) {
      throw Error(ErrorCode::WitnessVerificationFailed, "[X,B] != A for A = " + target.to_text());
    }
    return WitnessPair(std::move(x), std::move(b), std::move(target));
  }

  const Matrix& x() const { return x_; }
  const Matrix& b() const { return b_; }
  const Matrix& target() const { return target_; }

 private:
  WitnessPair(Matrix x, Matrix b, Matrix target) : x_(std::move(x)), b_(std::move(b)), target_(std::move(target)) {}

  Matrix x_;
  Matrix b_;
  Matrix target_;
};

/// Units r_1..r_n of a ring whose pairwise differences are units too.
class Clique {
 public:
  const RingCtx& ctx() const { return ctx_; }
  const std::vector<RingElem>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

 private:
  friend Clique verify_clique(std::vector<RingElem> elements, const RingCtx& ctx);
  Clique(RingCtx ctx, std::vector<RingElem> elements) : ctx_(std::move(ctx)), elements_(std::move(elements)) {}

  RingCtx ctx_;
  std::vector<RingElem> elements_;
};

/// Throws NotAUnit / DifferenceNotAUnit naming the (1-based) offending indices.
inline Clique verify_clique(std::vector<RingElem> elements, const RingCtx& ctx) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!ctx.contains(elements[i]) || !ctx.is_unit(elements[i])) {
      throw Error(ErrorCode::NotAUnit, "element " + std::to_string(i + 1) + " = " + elements[i].to_text());
    }
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (!ctx.is_unit(elements[i] - elements[j])) {
        throw Error(ErrorCode::DifferenceNotAUnit,
                    "r_" + std::to_string(i + 1) + " - r_" + std::to_string(j + 1) + " is not a unit");
      }
    }
  }
  return Clique(ctx, std::move(elements));
}

inline Clique verify_clique(const std::vector<long>& values, const RingCtx& ctx) {
  std::vector<RingElem> elems;
  for (long v : values) elems.push_back(ctx.from_int(v));
  return verify_clique(std::move(elems), ctx);
}

/// Superdiagonal shift X and B from the top-down recurrence
///   b_1j = 0, b_2j = a_1j, b_ij = a_{i-1,j} + b_{i-1,j-1},
/// with b_{i,0} = 0. Uses no division, so any ring context works.
inline WitnessPair triangular_witness(const Matrix& a) {
  if (!a.is_upper_triangular()) throw Error(ErrorCode::NotUpperTriangular, a.to_text());
  if (!trace(a).is_zero()) throw Error(ErrorCode::NonzeroTrace, "trace = " + trace(a).to_text());
  const std::size_t n = a.size();
  const RingCtx& ctx = a.ctx();
  Matrix x(ctx, n);
  for (std::size_t i = 0; i + 1 < n; ++i) x.set(i, i + 1, ctx.one());
  Matrix b(ctx, n);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RingElem value = a(i - 1, j);
      if (i >= 2 && j >= 1) value = value + b(i - 1, j - 1);
      b.set(i, j, std::move(value));
    }
  }
  return WitnessPair::verified(std::move(x), std::move(b), a);
}

/// X = diag(0, r_1, ..., r_n) and b_ij = (r_i - r_j)^-1 a_ij off the diagonal.
/// Clique elements are consumed in order: r_k sits on row k (0-based row 0 gets 0).
inline WitnessPair hollow_witness(const Matrix& a, const Clique& clique) {
  if (!a.is_hollow()) throw Error(ErrorCode::NotHollow, a.to_text());
  const std::size_t n = a.size();
  if (n == 0) return WitnessPair::verified(a, a, a);
  if (clique.size() + 1 < n) {
    throw Error(ErrorCode::CliqueTooSmall,
                "need " + std::to_string(n - 1) + " elements, got " + std::to_string(clique.size()));
  }
  const RingCtx& ctx = a.ctx();
  if (!(clique.ctx() == ctx)) throw Error(ErrorCode::ContextMismatch, "clique and matrix rings differ");
  std::vector<RingElem> r{ctx.zero()};
  for (std::size_t k = 0; k + 1 < n; ++k) r.push_back(clique.elements()[k]);

  Matrix x(ctx, n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, i, r[i]);
  Matrix b(ctx, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || a(i, j).is_zero()) continue;
      RingElem diff = r[i] - r[j];
      if (!ctx.is_unit(diff)) {
        throw Error(ErrorCode::NonInvertibleDifference,
                    "r_" + std::to_string(i) + " - r_" + std::to_string(j) + " = " + diff.to_text());
      }
      b.set(i, j, ctx.mul(ctx.inverse(diff), a(i, j)));
    }
  }
  return WitnessPair::verified(std::move(x), std::move(b), a);
}

/// Triangularize with nilpotent_flag, decompose the strictly upper triangular
/// T = gAg^-1, and conjugate back: A = [g^-1 X g, g^-1 B g].
inline WitnessPair nilpotent_witness(const Matrix& a) {
  FlagBasis g = nilpotent_flag(a);
  Matrix t = conjugate(g, a);
  if (!t.is_strictly_upper_triangular()) {
    throw Error(ErrorCode::WitnessVerificationFailed, "flag basis did not triangularize A");
  }
  WitnessPair inner = triangular_witness(t);
  Matrix x = g.g_inverse() * inner.x() * g.g();
  Matrix b = g.g_inverse() * inner.b() * g.g();
  return WitnessPair::verified(std::move(x), std::move(b), a);
}

}  // namespace trcomm
