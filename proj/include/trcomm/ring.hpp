#pragma once

/**
 * @file ring.hpp
 * @brief Ring contexts k[x1..xm] and truncated quotients k[x1..xm]/(x1..xm)^N.
 *
 * Elements of every ring are plain Polynomials. The context decides what
 * "multiply" means: with a truncation N every product drops the terms of
 * total degree >= N immediately, so stored elements never grow past N-1.
 */

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trcomm/error.hpp"
#include "trcomm/field.hpp"
#include "trcomm/polynomial.hpp"

namespace trcomm {

/// An element of a context's ring; always a Polynomial that the context accepts.
using RingElem = Polynomial;

class RingCtx {
 public:
  RingCtx() = default;
  RingCtx(const FieldSpec& field, std::size_t nvars, std::optional<std::uint32_t> truncation = std::nullopt)
      : field_(field), nvars_(nvars), truncation_(truncation) {
    if (truncation_ && *truncation_ < 1) {
      throw Error(ErrorCode::PreconditionViolated, "truncation level must be >= 1");
    }
  }

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::optional<std::uint32_t>& truncation() const { return truncation_; }

  bool is_finite() const { return field_.is_prime_field() && (truncation_.has_value() || nvars_ == 0); }

  bool contains(const Polynomial& p) const {
    if (!(p.field() == field_) || p.nvars() != nvars_) return false;
    return !truncation_ || p.degree() < static_cast<long>(*truncation_);
  }

  /// Throws ContextMismatch unless the element lives in this ring.
  const Polynomial& require(const Polynomial& p) const {
    if (!contains(p)) {
      throw Error(ErrorCode::ContextMismatch, "element " + p.to_text() + " is not in " + to_string());
    }
    return p;
  }

  Polynomial zero() const { return Polynomial(field_, nvars_); }
  Polynomial one() const { return constant(FieldElem(field_, 1)); }
  Polynomial constant(const FieldElem& c) const {
    if (!(c.field() == field_)) throw Error(ErrorCode::FieldMismatch, "constant outside " + field_.to_string());
    return Polynomial::constant(field_, nvars_, c);
  }
  Polynomial from_int(long v) const { return constant(FieldElem(field_, v)); }
  Polynomial variable(std::size_t i) const { return reduce(Polynomial::variable(field_, nvars_, i)); }

  /// Image of p in this ring (drops high-degree terms when truncated).
  Polynomial reduce(const Polynomial& p) const {
    if (!(p.field() == field_) || p.nvars() != nvars_) {
      throw Error(ErrorCode::ContextMismatch, "cannot map " + p.to_text() + " into " + to_string());
    }
    return truncation_ ? p.truncated(*truncation_) : p;
  }

  Polynomial add(const Polynomial& a, const Polynomial& b) const { return require(a) + require(b); }
  Polynomial sub(const Polynomial& a, const Polynomial& b) const { return require(a) - require(b); }
  Polynomial neg(const Polynomial& a) const { return -require(a); }
  Polynomial mul(const Polynomial& a, const Polynomial& b) const {
    return require(a).multiply(require(b), truncation_.value_or(0));
  }
  Polynomial scale(const Polynomial& a, const FieldElem& c) const { return require(a).scaled(c); }

  /// Units: nonzero constants in k[x]; elements with nonzero constant term in the truncated ring.
  bool is_unit(const Polynomial& a) const {
    require(a);
    if (truncation_) return !a.constant_term().is_zero();
    return a.is_constant() && !a.is_zero();
  }

  /// Throws NotAUnit. In the truncated ring u = c(1 + n) with n nilpotent, so
  /// u^-1 = c^-1 (1 - n + n^2 - ...), a finite sum.
  Polynomial inverse(const Polynomial& a) const {
    if (!is_unit(a)) throw Error(ErrorCode::NotAUnit, a.to_text() + " in " + to_string());
    FieldElem c_inv = a.constant_term().inverse();
    if (!truncation_) return constant(c_inv);
    Polynomial nil = a.scaled(c_inv) - one();
    Polynomial minus_nil = -nil;
    Polynomial sum = one();
    Polynomial power = one();
    for (std::uint32_t k = 1; k < *truncation_; ++k) {
      power = mul(power, minus_nil);
      if (power.is_zero()) break;
      sum = sum + power;
    }
    return sum.scaled(c_inv);
  }

  Polynomial pow(const Polynomial& a, std::uint32_t e) const {
    Polynomial result = one();
    Polynomial base = require(a);
    while (e > 0) {
      if (e & 1u) result = mul(result, base);
      e >>= 1u;
      if (e) base = mul(base, base);
    }
    return result;
  }

  /// Monomials of total degree < N in ascending graded-lex order (1, xm, ..., x1, xm^2, ...).
  std::vector<Monomial> basis() const {
    if (!truncation_) throw Error(ErrorCode::InfiniteRing, "untruncated ring has no finite monomial basis");
    std::vector<Monomial> out;
    std::vector<std::uint32_t> e(nvars_, 0);
    for (std::uint32_t deg = 0; deg < *truncation_; ++deg) {
      std::vector<Monomial> layer;
      compositions(deg, 0, e, layer);
      // compositions() produces descending lex order; the basis runs ascending.
      out.insert(out.end(), layer.rbegin(), layer.rend());
      if (nvars_ == 0) break;
    }
    return out;
  }

  /// Exact element count p^B, for finite rings.
  mpz_class element_count() const {
    require_finite();
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), field_.modulus(), finite_basis().size());
    return count;
  }

  /// The element whose base-p digits (least significant first) are its
  /// coefficients on finite_basis().
  Polynomial element_at(std::uint64_t index) const {
    require_finite();
    auto b = finite_basis();
    std::vector<Term> terms;
    for (const auto& mono : b) {
      std::uint32_t digit = static_cast<std::uint32_t>(index % field_.modulus());
      index /= field_.modulus();
      if (digit != 0) terms.push_back({mono, FieldElem(field_, static_cast<long>(digit))});
    }
    return Polynomial::from_terms(field_, nvars_, std::move(terms));
  }

  /// Inverse of element_at.
  std::uint64_t index_of(const Polynomial& a) const {
    require(a);
    require_finite();
    auto b = finite_basis();
    std::uint64_t index = 0;
    std::uint64_t place = 1;
    for (const auto& mono : b) {
      index += place * a.coefficient(mono).residue();
      place *= field_.modulus();
    }
    return index;
  }

  /// Basis of a finite ring: basis() when truncated, {1} when there are no variables.
  std::vector<Monomial> finite_basis() const {
    if (truncation_) return basis();
    return {Monomial::one(nvars_)};
  }

  Polynomial monomial_of_point(std::span<const std::uint32_t> s) const {
    if (s.size() != nvars_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "point has " + std::to_string(s.size()) + " coordinates, ring has " + std::to_string(nvars_) + " variables");
    }
    Monomial mono(std::vector<std::uint32_t>(s.begin(), s.end()));
    if (truncation_ && mono.degree() >= *truncation_) {
      throw Error(ErrorCode::TruncationOverflow,
                  "|s|_1 = " + std::to_string(mono.degree()) + " >= N = " + std::to_string(*truncation_));
    }
    return Polynomial::monomial(field_, mono, FieldElem(field_, 1));
  }

  std::string to_string() const {
    std::string s = field_.to_string() + "[" + std::to_string(nvars_) + " vars]";
    if (truncation_) s += "/m^" + std::to_string(*truncation_);
    return s;
  }

  friend bool operator==(const RingCtx&, const RingCtx&) = default;

 private:
  void require_finite() const {
    if (!is_finite()) throw Error(ErrorCode::InfiniteRing, to_string() + " is infinite");
  }

  void compositions(std::uint32_t remaining, std::size_t pos, std::vector<std::uint32_t>& e,
                    std::vector<Monomial>& out) const {
    if (nvars_ == 0) {
      if (remaining == 0) out.emplace_back(e);
      return;
    }
    if (pos + 1 == nvars_) {
      e[pos] = remaining;
      out.emplace_back(e);
      e[pos] = 0;
      return;
    }
    for (std::uint32_t v = remaining + 1; v-- > 0;) {
      e[pos] = v;
      compositions(remaining - v, pos + 1, e, out);
    }
    e[pos] = 0;
  }

  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::optional<std::uint32_t> truncation_;
};

inline Polynomial poly_mul(const Polynomial& p, const Polynomial& q, const RingCtx& ctx) { return ctx.mul(p, q); }

inline RingElem monomial_of_point(std::span<const std::uint32_t> s, const RingCtx& ctx) {
  return ctx.monomial_of_point(s);
}

enum class MonomialOrder { GradedLex };

/// Normal form of p modulo the principal ideal (g): the remainder of the
/// division algorithm, none of whose terms is divisible by LM(g).
inline Polynomial reduce_by_divisor(const Polynomial& p, const Polynomial& g,
                                    MonomialOrder = MonomialOrder::GradedLex) {
  if (!(p.field() == g.field()) || p.nvars() != g.nvars()) {
    throw Error(ErrorCode::ContextMismatch, "dividend and divisor live in different rings");
  }
  if (g.is_zero()) throw Error(ErrorCode::NonInvertibleLeadingCoefficient, "division by the zero polynomial");
  const Term& lead = g.leading_term();
  if (lead.coeff.is_zero()) throw Error(ErrorCode::NonInvertibleLeadingCoefficient, g.to_text());
  FieldElem lead_inv = lead.coeff.inverse();

  Polynomial rest = p;
  std::vector<Term> remainder;
  while (!rest.is_zero()) {
    const Term lt = rest.leading_term();
    if (lead.monomial.divides(lt.monomial)) {
      rest = rest - g.times_monomial(lt.monomial.quotient(lead.monomial), lt.coeff * lead_inv);
    } else {
      remainder.push_back(lt);
      rest = rest - Polynomial::monomial(p.field(), lt.monomial, lt.coeff);
    }
  }
  return Polynomial::from_terms(p.field(), p.nvars(), std::move(remainder));
}

/// Input range over every element of a finite ring, in index order
/// (element_at(0), element_at(1), ...).
class RingEnumeration {
 public:
  class iterator {
   public:
    using value_type = Polynomial;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const RingEnumeration* owner, std::uint64_t index) : owner_(owner), index_(index) {}

    Polynomial operator*() const { return owner_->ctx_.element_at(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++index_;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    const RingEnumeration* owner_ = nullptr;
    std::uint64_t index_ = 0;
  };

  explicit RingEnumeration(RingCtx ctx) : ctx_(std::move(ctx)) {
    mpz_class count = ctx_.element_count();
    if (!count.fits_ulong_p()) throw Error(ErrorCode::BudgetExceeded, "ring has " + count.get_str() + " elements");
    size_ = count.get_ui();
  }

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, size_); }
  std::uint64_t size() const { return size_; }

 private:
  RingCtx ctx_;
  std::uint64_t size_ = 0;
};

/// Throws InfiniteRing for Q or an untruncated polynomial ring.
inline RingEnumeration enumerate_ring(const RingCtx& ctx) {
  if (!ctx.is_finite()) throw Error(ErrorCode::InfiniteRing, ctx.to_string() + " is infinite");
  return RingEnumeration(ctx);
}

}  // namespace trcomm
