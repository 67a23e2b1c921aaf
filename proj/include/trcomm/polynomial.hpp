#pragma once

/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials over a FieldSpec.
 *
 * Terms are stored leading-term first under graded lexicographic order with
 * x1 > x2 > ... > xm. Zero coefficients are never stored, so the zero
 * polynomial is the empty term list and equality is structural.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trcomm/error.hpp"
#include "trcomm/field.hpp"

namespace trcomm {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps)
      : exps_(std::move(exps)), degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0})) {}

  static Monomial one(std::size_t nvars) { return Monomial(std::vector<std::uint32_t>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t index) {
    std::vector<std::uint32_t> e(nvars, 0);
    e.at(index) = 1;
    return Monomial(std::move(e));
  }

  std::size_t nvars() const { return exps_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::span<const std::uint32_t> exps() const { return exps_; }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> e(a.exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.exps_[i] + b.exps_[i];
    return Monomial(std::move(e));
  }

  /// Precondition: divisor divides *this.
  Monomial quotient(const Monomial& divisor) const {
    std::vector<std::uint32_t> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] - divisor.exps_[i];
    return Monomial(std::move(e));
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic comparison, x1 > x2 > ... ; returns true iff a < b.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    auto ea = a.exps();
    auto eb = b.exps();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  }
};

struct Term {
  Monomial monomial;
  FieldElem coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

class Polynomial {
 public:
  /// Zero polynomial in 0 variables over Q.
  Polynomial() = default;
  Polynomial(const FieldSpec& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static Polynomial constant(const FieldSpec& field, std::size_t nvars, const FieldElem& c) {
    Polynomial p(field, nvars);
    if (!c.is_zero()) p.terms_.push_back({Monomial::one(nvars), c});
    return p;
  }

  static Polynomial monomial(const FieldSpec& field, const Monomial& mono, const FieldElem& c) {
    Polynomial p(field, mono.nvars());
    if (!c.is_zero()) p.terms_.push_back({mono, c});
    return p;
  }

  static Polynomial variable(const FieldSpec& field, std::size_t nvars, std::size_t index) {
    return monomial(field, Monomial::variable(nvars, index), FieldElem(field, 1));
  }

  /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
  static Polynomial from_terms(const FieldSpec& field, std::size_t nvars, std::vector<Term> terms) {
    std::map<Monomial, FieldElem, GradedLexLess> acc;
    for (auto& t : terms) {
      if (t.monomial.nvars() != nvars) {
        throw Error(ErrorCode::ContextMismatch, "monomial length differs from nvars");
      }
      if (!(t.coeff.field() == field)) throw Error(ErrorCode::FieldMismatch, "term coefficient field");
      auto [it, inserted] = acc.try_emplace(std::move(t.monomial), t.coeff);
      if (!inserted) it->second += t.coeff;
    }
    return from_map(field, nvars, acc);
  }

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// -1 for the zero polynomial.
  long degree() const { return terms_.empty() ? -1 : static_cast<long>(terms_.front().monomial.degree()); }

  /// Smallest total degree among the terms, -1 for zero.
  long min_degree() const {
    long best = -1;
    for (const auto& t : terms_) {
      long d = t.monomial.degree();
      if (best < 0 || d < best) best = d;
    }
    return best;
  }

  const Term& leading_term() const { return terms_.front(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.degree() == 0); }

  FieldElem constant_term() const {
    if (!terms_.empty() && terms_.back().monomial.degree() == 0) return terms_.back().coeff;
    return FieldElem(field_, 0);
  }

  FieldElem coefficient(const Monomial& mono) const {
    for (const auto& t : terms_) {
      if (t.monomial == mono) return t.coeff;
    }
    return FieldElem(field_, 0);
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.combine(b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.combine(b, true); }

  /// Full product; truncation is the ring context's business.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.multiply(b, 0); }

  /// Product keeping only terms of total degree < bound (bound == 0 means no bound).
  Polynomial multiply(const Polynomial& b, std::uint32_t bound) const {
    check_compatible(b);
    std::map<Monomial, FieldElem, GradedLexLess> acc;
    for (const auto& s : terms_) {
      for (const auto& t : b.terms_) {
        if (bound != 0 && s.monomial.degree() + t.monomial.degree() >= bound) continue;
        auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial, s.coeff * t.coeff);
        if (!inserted) it->second += s.coeff * t.coeff;
      }
    }
    return from_map(field_, nvars_, acc);
  }

  Polynomial scaled(const FieldElem& c) const {
    if (c.is_zero()) return Polynomial(field_, nvars_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  Polynomial times_monomial(const Monomial& mono, const FieldElem& c) const {
    Polynomial r(field_, nvars_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * mono, t.coeff * c});
    return r;
  }

  /// Drops every term of total degree >= bound.
  Polynomial truncated(std::uint32_t bound) const {
    Polynomial r(field_, nvars_);
    for (const auto& t : terms_) {
      if (t.monomial.degree() < bound) r.terms_.push_back(t);
    }
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Text form, e.g. "x1^2 + 5/6*x1*x3^2 - 1". Zero prints as "0".
  std::string to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      std::string c = t.coeff.to_string();
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < nvars_; ++i) {
        std::uint32_t e = t.monomial[i];
        if (e == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty()) {
        out += c;
      } else if (c == "1") {
        out += mono;
      } else {
        out += c + "*" + mono;
      }
    }
    return out;
  }

  /// Parses the to_text() format: terms joined by + or -, each a '*'-product of
  /// one optional coefficient (integer or p/q) and variables x1..xm with
  /// optional ^exponent.
  static Polynomial parse(const FieldSpec& field, std::size_t nvars, std::string_view text) {
    std::string s;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    auto fail = [&](const std::string& why) {
      return Error(ErrorCode::ParseError, why + " in '" + std::string(text) + "'");
    };
    if (s.empty()) throw fail("empty polynomial");
    std::vector<Term> terms;
    std::size_t pos = 0;
    while (pos < s.size()) {
      bool negative = false;
      if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
      } else if (pos != 0) {
        throw fail("expected + or -");
      }
      std::size_t end = pos;
      while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
      std::string_view body(s.data() + pos, end - pos);
      if (body.empty()) throw fail("empty term");
      FieldElem coeff(field, 1);
      std::vector<std::uint32_t> exps(nvars, 0);
      std::size_t fpos = 0;
      while (fpos <= body.size()) {
        std::size_t fend = body.find('*', fpos);
        if (fend == std::string_view::npos) fend = body.size();
        std::string_view factor = body.substr(fpos, fend - fpos);
        if (factor.empty()) throw fail("empty factor");
        if (factor[0] == 'x') {
          std::size_t caret = factor.find('^');
          std::string_view idx = factor.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1);
          std::uint64_t var = parse_unsigned(idx, fail);
          if (var < 1 || var > nvars) throw fail("variable index out of range");
          std::uint64_t e = 1;
          if (caret != std::string_view::npos) e = parse_unsigned(factor.substr(caret + 1), fail);
          exps[var - 1] += static_cast<std::uint32_t>(e);
        } else {
          coeff *= FieldElem::parse(field, factor);
        }
        fpos = fend + 1;
      }
      if (negative) coeff = -coeff;
      terms.push_back({Monomial(std::move(exps)), coeff});
      pos = end;
    }
    return from_terms(field, nvars, std::move(terms));
  }

 private:
  template <typename Fail>
  static std::uint64_t parse_unsigned(std::string_view digits, Fail&& fail) {
    if (digits.empty() || digits.size() > 9) throw fail("bad integer");
    std::uint64_t v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw fail("bad integer");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  }

  static Polynomial from_map(const FieldSpec& field, std::size_t nvars,
                             const std::map<Monomial, FieldElem, GradedLexLess>& acc) {
    Polynomial p(field, nvars);
    p.terms_.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
      if (!it->second.is_zero()) p.terms_.push_back({it->first, it->second});
    }
    return p;
  }

  void check_compatible(const Polynomial& b) const {
    if (!(field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, field_.to_string() + " vs " + b.field_.to_string());
    if (nvars_ != b.nvars_) throw Error(ErrorCode::ContextMismatch, "polynomials in different numbers of variables");
  }

  // Merge of two descending term lists.
  Polynomial combine(const Polynomial& b, bool subtract) const {
    check_compatible(b);
    Polynomial r(field_, nvars_);
    r.terms_.reserve(terms_.size() + b.terms_.size());
    GradedLexLess less;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < terms_.size() && less(b.terms_[j].monomial, terms_[i].monomial))) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || less(terms_[i].monomial, b.terms_[j].monomial)) {
        const Term& t = b.terms_[j++];
        r.terms_.push_back({t.monomial, subtract ? -t.coeff : t.coeff});
      } else {
        FieldElem c = subtract ? terms_[i].coeff - b.terms_[j].coeff : terms_[i].coeff + b.terms_[j].coeff;
        if (!c.is_zero()) r.terms_.push_back({terms_[i].monomial, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace trcomm
