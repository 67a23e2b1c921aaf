#pragma once

/**
 * @file field.hpp
 * @brief Exact scalar fields: the rationals and prime fields F_p.
 *
 * A FieldSpec is a small value describing which field we are in; a FieldElem
 * carries its FieldSpec along so that mixing fields is caught at run time.
 * Rationals are kept in lowest terms with a positive denominator (GMP does
 * this for us after canonicalize()), residues are kept in [0, p).
 */

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "trcomm/error.hpp"

namespace trcomm {

namespace detail {

constexpr bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

constexpr std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace detail

class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  /// Defaults to Q.
  constexpr FieldSpec() = default;

  static constexpr FieldSpec rationals() { return FieldSpec(); }

  /// Throws InvalidModulus unless p is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !detail::is_prime_u64(p)) {
      throw Error(ErrorCode::InvalidModulus, std::to_string(p) + " is not a prime below 2^31");
    }
    FieldSpec f;
    f.kind_ = Kind::PrimeField;
    f.modulus_ = static_cast<std::uint32_t>(p);
    return f;
  }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_rationals() const { return kind_ == Kind::Rationals; }
  constexpr bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  /// 0 for Q.
  constexpr std::uint32_t modulus() const { return modulus_; }
  constexpr std::uint32_t characteristic() const { return modulus_; }

  std::string to_string() const {
    return is_rationals() ? std::string("Q") : "F_" + std::to_string(modulus_);
  }

  friend constexpr bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  Kind kind_ = Kind::Rationals;
  std::uint32_t modulus_ = 0;
};

class FieldElem {
 public:
  /// Zero of Q.
  FieldElem() : value_(mpq_class(0)) {}

  FieldElem(const FieldSpec& field, long value) : field_(field) {
    if (field.is_rationals()) {
      value_ = mpq_class(value);
    } else {
      long r = value % static_cast<long>(field.modulus());
      if (r < 0) r += field.modulus();
      value_ = static_cast<std::uint32_t>(r);
    }
  }

  FieldElem(const FieldSpec& field, const mpz_class& value) : field_(field) {
    if (field.is_rationals()) {
      value_ = mpq_class(value);
    } else {
      mpz_class r = value % field.modulus();
      if (r < 0) r += field.modulus();
      value_ = static_cast<std::uint32_t>(r.get_ui());
    }
  }

  /// num/den, reduced into the field. Throws DivisionByZero when den vanishes there.
  static FieldElem fraction(const FieldSpec& field, const mpz_class& num, const mpz_class& den) {
    if (field.is_rationals()) {
      if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      FieldElem e(field, 0);
      e.value_ = std::move(q);
      return e;
    }
    return FieldElem(field, num) / FieldElem(field, den);
  }

  static FieldElem from_rational(const FieldSpec& field, const mpq_class& q) {
    return fraction(field, q.get_num(), q.get_den());
  }

  /// Accepts "n", "-n" and "p/q". Residues may be written as any integer.
  static FieldElem parse(const FieldSpec& field, std::string_view text) {
    std::string s;
    for (char c : text) {
      if (c != ' ' && c != '\t') s.push_back(c);
    }
    auto bad = [&] { return Error(ErrorCode::ParseError, "bad coefficient '" + std::string(text) + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
      if (part.empty()) throw bad();
      std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
      if (start == part.size()) throw bad();
      for (std::size_t i = start; i < part.size(); ++i) {
        if (part[i] < '0' || part[i] > '9') throw bad();
      }
      return mpz_class(part[0] == '+' ? part.substr(1) : part, 10);
    };
    if (slash == std::string::npos) return FieldElem(field, parse_int(s));
    return fraction(field, parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  }

  const FieldSpec& field() const { return field_; }

  bool is_zero() const {
    if (field_.is_rationals()) return sgn(std::get<mpq_class>(value_)) == 0;
    return std::get<std::uint32_t>(value_) == 0;
  }
  bool is_one() const {
    if (field_.is_rationals()) return std::get<mpq_class>(value_) == 1;
    return std::get<std::uint32_t>(value_) == 1;
  }

  /// Residue in [0, p); only for prime fields.
  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
  /// Only for Q.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  bool is_integer() const {
    return field_.is_prime_field() || std::get<mpq_class>(value_).get_den() == 1;
  }

  FieldElem operator-() const {
    FieldElem r = *this;
    if (field_.is_rationals()) {
      r.value_ = mpq_class(-std::get<mpq_class>(value_));
    } else {
      std::uint32_t v = residue();
      r.value_ = v == 0 ? 0u : field_.modulus() - v;
    }
    return r;
  }

  FieldElem& operator+=(const FieldElem& o) {
    check(o);
    if (field_.is_rationals()) {
      std::get<mpq_class>(value_) += o.rational();
    } else {
      std::uint64_t s = std::uint64_t{residue()} + o.residue();
      value_ = static_cast<std::uint32_t>(s % field_.modulus());
    }
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) {
    check(o);
    if (field_.is_rationals()) {
      std::get<mpq_class>(value_) -= o.rational();
    } else {
      std::uint64_t s = std::uint64_t{residue()} + field_.modulus() - o.residue();
      value_ = static_cast<std::uint32_t>(s % field_.modulus());
    }
    return *this;
  }
  FieldElem& operator*=(const FieldElem& o) {
    check(o);
    if (field_.is_rationals()) {
      std::get<mpq_class>(value_) *= o.rational();
    } else {
      value_ = static_cast<std::uint32_t>(std::uint64_t{residue()} * o.residue() % field_.modulus());
    }
    return *this;
  }
  FieldElem& operator/=(const FieldElem& o) {
    check(o);
    return *this *= o.inverse();
  }

  /// Throws DivisionByZero for 0. In F_p this is a^(p-2).
  FieldElem inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + field_.to_string());
    FieldElem r = *this;
    if (field_.is_rationals()) {
      mpq_class q = 1 / std::get<mpq_class>(value_);
      q.canonicalize();
      r.value_ = std::move(q);
    } else {
      r.value_ = detail::pow_mod(residue(), field_.modulus() - 2, field_.modulus());
    }
    return r;
  }

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  std::string to_string() const {
    if (field_.is_rationals()) return std::get<mpq_class>(value_).get_str();
    return std::to_string(residue());
  }

 private:
  void check(const FieldElem& o) const {
    if (!(field_ == o.field_)) {
      throw Error(ErrorCode::FieldMismatch, field_.to_string() + " vs " + o.field_.to_string());
    }
  }

  FieldSpec field_;
  std::variant<mpq_class, std::uint32_t> value_;
};

enum class FieldOp { Add, Sub, Mul, Div };

inline FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op) {
  switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Sub: return a - b;
    case FieldOp::Mul: return a * b;
    case FieldOp::Div: return a / b;
  }
  return a;
}

}  // namespace trcomm
