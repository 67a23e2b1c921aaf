#pragma once

// Random inputs for the witness constructions. Shared by `trcomm fuzz` and the tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "trcomm/matrix.hpp"
#include "trcomm/ring.hpp"
#include "trcomm/witness.hpp"

namespace trcomm::fuzz {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Uniform residue over F_p; small fractions num/den with |num| <= 9, den <= 5 over Q.
inline FieldElem random_scalar(const FieldSpec& f, Rng& rng) {
  if (f.is_prime_field()) return FieldElem(f, uniform(rng, 0, static_cast<long>(f.modulus()) - 1));
  return FieldElem::fraction(f, uniform(rng, -9, 9), uniform(rng, 1, 5));
}

/// A few random terms of degree below the truncation (or below 3 when untruncated).
inline RingElem random_element(const RingCtx& ctx, Rng& rng) {
  if (ctx.nvars() == 0) return ctx.constant(random_scalar(ctx.field(), rng));
  const long top = ctx.truncation() ? static_cast<long>(*ctx.truncation()) - 1 : 2;
  RingElem out = ctx.zero();
  for (long t = uniform(rng, 0, 3); t > 0; --t) {
    std::vector<std::uint32_t> e(ctx.nvars(), 0);
    for (long deg = uniform(rng, 0, top); deg > 0; --deg) ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(ctx.nvars()) - 1))];
    out = out + Polynomial::monomial(ctx.field(), Monomial(e), random_scalar(ctx.field(), rng));
  }
  return ctx.reduce(out);
}

inline Matrix random_matrix(const RingCtx& ctx, std::size_t n, Rng& rng) {
  Matrix a(ctx, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, random_element(ctx, rng));
  }
  return a;
}

inline Matrix random_upper_trace_zero(const RingCtx& ctx, std::size_t n, Rng& rng) {
  Matrix a(ctx, n);
  RingElem diag_sum = ctx.zero();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (i == j && i + 1 == n) continue;
      a.set(i, j, random_element(ctx, rng));
      if (i == j) diag_sum = diag_sum + a(i, i);
    }
  }
  if (n > 0) a.set(n - 1, n - 1, -diag_sum);
  return a;
}

inline Matrix random_strictly_upper(const RingCtx& ctx, std::size_t n, Rng& rng) {
  Matrix a(ctx, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, random_element(ctx, rng));
  }
  return a;
}

inline Matrix random_hollow(const RingCtx& ctx, std::size_t n, Rng& rng) {
  Matrix a = random_matrix(ctx, n, rng);
  for (std::size_t i = 0; i < n; ++i) a.set(i, i, ctx.zero());
  return a;
}

/// k distinct nonzero constants (needs k < p over F_p).
inline std::vector<RingElem> random_clique(const RingCtx& ctx, std::size_t k, Rng& rng) {
  const FieldSpec& f = ctx.field();
  std::vector<RingElem> out;
  while (out.size() < k) {
    FieldElem c = f.is_prime_field() ? FieldElem(f, uniform(rng, 1, static_cast<long>(f.modulus()) - 1))
                                     : FieldElem::fraction(f, uniform(rng, -20, 20), uniform(rng, 1, 3));
    if (c.is_zero()) continue;
    RingElem e = ctx.constant(c);
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  return out;
}

/// Random invertible constant matrix over the field of ctx.
inline Matrix random_invertible(const RingCtx& ctx, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix g(ctx, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) g.set(i, j, ctx.constant(random_scalar(ctx.field(), rng)));
    }
    if (detail::rank_of(scalar_rows(g), n) == n) return g;
  }
}

}  // namespace trcomm::fuzz
