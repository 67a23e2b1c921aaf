#pragma once

/**
 * @file matrix.hpp
 * @brief Dense square matrices over a RingCtx, plus exact linear algebra over
 * the base field for matrices with constant entries.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trcomm/error.hpp"
#include "trcomm/field.hpp"
#include "trcomm/polynomial.hpp"
#include "trcomm/ring.hpp"

namespace trcomm {

class Matrix {
 public:
  Matrix() = default;

  /// n x n zero matrix.
  Matrix(RingCtx ctx, std::size_t n) : ctx_(std::move(ctx)), n_(n), entries_(n * n, ctx_.zero()) {}

  static Matrix identity(const RingCtx& ctx, std::size_t n) {
    Matrix m(ctx, n);
    for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = ctx.one();
    return m;
  }

  static Matrix from_rows(const RingCtx& ctx, const std::vector<std::vector<Polynomial>>& rows) {
    Matrix m(ctx, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw Error(ErrorCode::ShapeMismatch, "rows must form a square matrix");
      for (std::size_t j = 0; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  /// Integer entries, convenient for tests and examples.
  static Matrix from_ints(const RingCtx& ctx, const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Polynomial>> polys;
    for (const auto& row : rows) {
      auto& out = polys.emplace_back();
      for (long v : row) out.push_back(ctx.from_int(v));
    }
    return from_rows(ctx, polys);
  }

  static Matrix from_scalars(const RingCtx& ctx, const std::vector<std::vector<FieldElem>>& rows) {
    std::vector<std::vector<Polynomial>> polys;
    for (const auto& row : rows) {
      auto& out = polys.emplace_back();
      for (const auto& v : row) out.push_back(ctx.constant(v));
    }
    return from_rows(ctx, polys);
  }

  const RingCtx& ctx() const { return ctx_; }
  std::size_t size() const { return n_; }

  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, Polynomial value) {
    ctx_.require(value);
    entries_[i * n_ + j] = std::move(value);
  }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  bool is_upper_triangular() const { return lower_part_zero(false); }
  bool is_strictly_upper_triangular() const { return lower_part_zero(true); }

  bool is_hollow() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(*this)(i, i).is_zero()) return false;
    }
    return true;
  }

  bool is_constant() const {
    for (const auto& e : entries_) {
      if (!e.is_constant()) return false;
    }
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] = a.entries_[k] + b.entries_[k];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] = a.entries_[k] - b.entries_[k];
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    const std::size_t n = a.n_;
    Matrix r(a.ctx_, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const Polynomial& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const Polynomial& bkj = b(k, j);
          if (bkj.is_zero()) continue;
          r.entries_[i * n + j] = r.entries_[i * n + j] + a.ctx_.mul(aik, bkj);
        }
      }
    }
    return r;
  }

  Matrix scaled(const Polynomial& c) const {
    Matrix r = *this;
    for (auto& e : r.entries_) e = ctx_.mul(e, c);
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ctx_ == b.ctx_ && a.n_ == b.n_ && a.entries_ == b.entries_;
  }

  std::string to_text() const {
    std::string out = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < n_; ++j) {
        if (j) out += ", ";
        out += (*this)(i, j).to_text();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_) {
      throw Error(ErrorCode::ShapeMismatch, std::to_string(a.n_) + "x" + std::to_string(a.n_) + " vs " +
                                                std::to_string(b.n_) + "x" + std::to_string(b.n_));
    }
    if (!(a.ctx_ == b.ctx_)) throw Error(ErrorCode::ContextMismatch, a.ctx_.to_string() + " vs " + b.ctx_.to_string());
  }

  bool lower_part_zero(bool with_diagonal) const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < (with_diagonal ? i + 1 : i); ++j) {
        if (!(*this)(i, j).is_zero()) return false;
      }
    }
    return true;
  }

  RingCtx ctx_;
  std::size_t n_ = 0;
  std::vector<Polynomial> entries_;
};

/// AB - BA.
inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline RingElem trace(const Matrix& a) {
  RingElem t = a.ctx().zero();
  for (std::size_t i = 0; i < a.size(); ++i) t = t + a(i, i);
  return t;
}

// ---------------------------------------------------------------------------
// Linear algebra over the base field.

using ScalarVector = std::vector<FieldElem>;
using ScalarRows = std::vector<std::vector<FieldElem>>;

/// Throws NonConstantEntries unless every entry is a field constant.
inline ScalarRows scalar_rows(const Matrix& a) {
  ScalarRows rows(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Polynomial& e = a(i, j);
      if (!e.is_constant()) {
        throw Error(ErrorCode::NonConstantEntries,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + e.to_text());
      }
      rows[i].push_back(e.constant_term());
    }
  }
  return rows;
}

namespace detail {

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(ScalarRows& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    FieldElem inv = rows[r][c].inverse();
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      FieldElem f = rows[i][c];
      for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank_of(ScalarRows rows, std::size_t ncols) { return rref(rows, ncols).size(); }

}  // namespace detail

/// Basis of the right kernel {v : A v = 0}, one vector per free column of the
/// reduced row echelon form, in increasing column order. Empty when A is injective.
inline std::vector<ScalarVector> kernel_basis(const Matrix& a) {
  ScalarRows rows = scalar_rows(a);
  const std::size_t n = a.size();
  const FieldSpec& field = a.ctx().field();
  auto pivots = detail::rref(rows, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<ScalarVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    ScalarVector v(n, FieldElem(field, 0));
    v[free] = FieldElem(field, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Gauss-Jordan inverse of a constant matrix. Throws SingularBasis.
inline Matrix inverse(const Matrix& a) {
  const std::size_t n = a.size();
  const FieldSpec& field = a.ctx().field();
  ScalarRows rows = scalar_rows(a);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i].push_back(FieldElem(field, i == j ? 1 : 0));
  }
  auto pivots = detail::rref(rows, n);
  if (pivots.size() != n) throw Error(ErrorCode::SingularBasis, "matrix is not invertible");
  ScalarRows inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(rows[i].begin() + static_cast<std::ptrdiff_t>(n), rows[i].end());
  return Matrix::from_scalars(a.ctx(), inv);
}

/// A change of basis g together with g^-1, both over the same context.
class FlagBasis {
 public:
  /// Uses g as given. Throws SingularBasis.
  static FlagBasis from_matrix(const Matrix& g) { return FlagBasis(g, inverse(g)); }

  /// Given basis vectors v_1..v_n (the columns of P), returns g = P^-1, so that
  /// g A g^-1 is A written in the basis v_1..v_n.
  static FlagBasis from_columns(const RingCtx& ctx, const std::vector<ScalarVector>& columns) {
    const std::size_t n = columns.size();
    ScalarRows p(n, std::vector<FieldElem>(n, FieldElem(ctx.field(), 0)));
    for (std::size_t j = 0; j < n; ++j) {
      if (columns[j].size() != n) throw Error(ErrorCode::ShapeMismatch, "basis vector length");
      for (std::size_t i = 0; i < n; ++i) p[i][j] = columns[j][i];
    }
    Matrix pm = Matrix::from_scalars(ctx, p);
    Matrix g = inverse(pm);
    return FlagBasis(std::move(g), std::move(pm));
  }

  std::size_t size() const { return g_.size(); }
  const Matrix& g() const { return g_; }
  const Matrix& g_inverse() const { return g_inv_; }

  /// Column j of g^-1, i.e. the j-th basis vector.
  ScalarVector vector(std::size_t j) const {
    ScalarVector v;
    for (std::size_t i = 0; i < size(); ++i) v.push_back(g_inv_(i, j).constant_term());
    return v;
  }

 private:
  FlagBasis(Matrix g, Matrix g_inv) : g_(std::move(g)), g_inv_(std::move(g_inv)) {}

  Matrix g_;
  Matrix g_inv_;
};

/// g A g^-1. The basis must be constant over A's base field; A itself may
/// have polynomial entries.
inline Matrix conjugate(const FlagBasis& g, const Matrix& a) {
  if (g.size() != a.size()) throw Error(ErrorCode::ShapeMismatch, "basis size differs from matrix size");
  if (!(g.g().ctx() == a.ctx())) {
    // Lift the constant basis into A's ring.
    Matrix lifted_g(a.ctx(), g.size());
    Matrix lifted_inv(a.ctx(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        lifted_g.set(i, j, a.ctx().constant(g.g()(i, j).constant_term()));
        lifted_inv.set(i, j, a.ctx().constant(g.g_inverse()(i, j).constant_term()));
      }
    }
    return lifted_g * a * lifted_inv;
  }
  return g.g() * a * g.g_inverse();
}

/// A^n = 0, checked by squaring until the exponent reaches n.
inline bool is_nilpotent(const Matrix& a) {
  Matrix power = a;
  std::size_t exponent = 1;
  while (exponent < a.size()) {
    power = power * power;
    exponent *= 2;
  }
  return power.is_zero();
}

/// A basis v_1..v_n with A v_k in span(v_1..v_{k-1}), built from the kernel
/// chain ker A ⊂ ker A^2 ⊂ ... ; each layer is completed greedily by scanning
/// the kernel basis of the next power in column order. Throws NotNilpotent.
inline FlagBasis nilpotent_flag(const Matrix& a) {
  scalar_rows(a);
  if (!is_nilpotent(a)) throw Error(ErrorCode::NotNilpotent, "A^n != 0");
  const std::size_t n = a.size();
  std::vector<ScalarVector> chosen;
  Matrix power = a;
  while (chosen.size() < n) {
    for (auto& v : kernel_basis(power)) {
      ScalarRows trial = chosen;
      trial.push_back(v);
      if (detail::rank_of(std::move(trial), n) == chosen.size() + 1) chosen.push_back(std::move(v));
    }
    power = power * a;
  }
  return FlagBasis::from_columns(a.ctx(), chosen);
}

}  // namespace trcomm
