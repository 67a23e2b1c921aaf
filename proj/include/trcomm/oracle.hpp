#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force commutator search over finite rings, and the symbolic
 * check of the 2x2 quadric decomposition.
 *
 * Ring elements are encoded as indices below q = #R (see RingCtx::element_at)
 * and all arithmetic goes through q x q lookup tables. A matrix index is the
 * mixed-radix number whose digits are the free entries in row-major order,
 * entry (1,1) most significant. With normalization on, the (n,n) entries of
 * both factors are fixed to 0: [B - bI, C - cI] = [B, C], so nothing is lost.
 *
 * Workers take chunks of B-indices from a shared counter and the reported
 * witness is the least (B, C) pair in enumeration order, so results do not
 * depend on the worker count.
 */

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "trcomm/certificate.hpp"
#include "trcomm/error.hpp"
#include "trcomm/io.hpp"
#include "trcomm/matrix.hpp"
#include "trcomm/ring.hpp"

namespace trcomm {

struct SearchOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  std::uint64_t budget = std::uint64_t{1} << 34;  // maximum pairs
  bool normalize = true;
  std::optional<std::filesystem::path> checkpoint;  // progress file, written as the search advances
  bool resume = false;                              // continue from the progress file if it matches
  std::uint64_t checkpoint_interval = std::uint64_t{1} << 20;  // pairs between progress writes
};

struct SearchOutcome {
  bool found = false;
  std::optional<Matrix> b, c;
  std::uint64_t search_size = 0;     // total pairs in the space
  std::uint64_t pairs_examined = 0;  // pairs actually tested in this run
  std::uint64_t resumed_from = 0;    // first B-index of this run
  double seconds = 0;
};

/// Exact number of (B, C) pairs: q^(2(n^2 - 1)) normalized, q^(2 n^2) otherwise.
inline mpz_class commutator_search_size(const RingCtx& ctx, std::size_t n, bool normalize = true) {
  mpz_class q = ctx.element_count();
  const std::size_t free_entries = n * n - (normalize && n > 0 ? 1 : 0);
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), q.get_mpz_t(), 2 * free_entries);
  return out;
}

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace detail

class CommutatorSearch {
 public:
  static constexpr std::uint64_t kMaxTableRing = 1024;

  /// Throws InfiniteRing or BudgetExceeded (message carries the exact pair count).
  CommutatorSearch(const Matrix& target, SearchOptions options) : target_(target), options_(std::move(options)) {
    const RingCtx& ctx = target_.ctx();
    if (!ctx.is_finite()) throw Error(ErrorCode::InfiniteRing, ctx.to_string() + " cannot be searched exhaustively");
    n_ = target_.size();
    mpz_class size = commutator_search_size(ctx, n_, options_.normalize);
    if (size > mpz_class(std::to_string(options_.budget))) {
      throw Error(ErrorCode::BudgetExceeded,
                  "search needs " + size.get_str() + " pairs, budget is " + std::to_string(options_.budget));
    }
    q_ = ctx.element_count().get_ui();
    if (q_ > kMaxTableRing) throw Error(ErrorCode::BudgetExceeded, "ring has " + std::to_string(q_) + " elements");
    search_size_ = size.get_ui();
    free_ = n_ * n_ - (options_.normalize && n_ > 0 ? 1 : 0);
    side_ = 1;
    for (std::size_t k = 0; k < free_; ++k) side_ *= q_;
    build_tables();
    target_idx_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) target_idx_[i * n_ + j] = static_cast<Elem>(ctx.index_of(target_(i, j)));
    }
  }

  std::uint64_t search_size() const { return search_size_; }
  std::uint64_t matrices() const { return side_; }
  std::uint64_t ring_size() const { return q_; }

  /// Matrix with the given enumeration index.
  Matrix decode(std::uint64_t index) const {
    std::vector<Elem> e = digits(index);
    Matrix m(target_.ctx(), n_);
    for (std::size_t k = 0; k < n_ * n_; ++k) {
      if (e[k]) m.set(k / n_, k % n_, target_.ctx().element_at(e[k]));
    }
    return m;
  }

  /// Index of m in the enumeration; nullopt when m is outside the normalized space.
  std::optional<std::uint64_t> encode(const Matrix& m) const {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < n_ * n_; ++k) {
      std::uint64_t e = target_.ctx().index_of(m(k / n_, k % n_));
      if (k >= free_) {
        if (e != 0) return std::nullopt;
        continue;
      }
      index = index * q_ + e;
    }
    return index;
  }

  bool is_witness(std::uint64_t b, std::uint64_t c) const {
    std::vector<Elem> bb = digits(b), cc = digits(c);
    return corner_matches(bb.data(), cc.data()) && all_match(bb.data(), cc.data());
  }

  SearchOutcome run() {
    const auto start = std::chrono::steady_clock::now();
    const std::string fingerprint = this->fingerprint();
    std::uint64_t first_b = 0;
    if (options_.resume && options_.checkpoint && std::filesystem::exists(*options_.checkpoint)) {
      io::Json j = io::parse_json(io::read_file(*options_.checkpoint));
      if (io::detail::get_field<std::string>(j, "fingerprint") != fingerprint) {
        throw Error(ErrorCode::PreconditionViolated, "progress file belongs to a different search");
      }
      first_b = std::min(io::detail::get_field<std::uint64_t>(j, "next_b"), side_);
    }

    const unsigned workers = options_.workers ? options_.workers : std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t chunk = std::max<std::uint64_t>(1, std::min<std::uint64_t>(64, side_ / (8 * workers) + 1));
    State st;
    st.next.store(first_b);
    st.done_prefix = first_b;
    st.last_written = first_b * side_;

    auto work = [&] {
      std::vector<Elem> b(n_ * n_, 0), c(n_ * n_, 0);
      std::uint64_t examined = 0;
      for (;;) {
        const std::uint64_t lo = st.next.fetch_add(chunk);
        if (lo >= side_ || lo > st.best_b.load()) break;
        const std::uint64_t hi = std::min(side_, lo + chunk);
        for (std::uint64_t bi = lo; bi < hi && bi <= st.best_b.load(); ++bi) {
          fill_digits(bi, b);
          std::fill(c.begin(), c.end(), Elem{0});
          for (std::uint64_t ci = 0; ci < side_; ++ci) {
            if (ci) increment(c);
            ++examined;
            if (corner_matches(b.data(), c.data()) && all_match(b.data(), c.data())) {
              record(st, bi, ci);
              break;
            }
          }
        }
        finish_chunk(st, lo, hi, fingerprint);
      }
      st.examined.fetch_add(examined);
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    SearchOutcome out;
    out.search_size = search_size_;
    out.pairs_examined = st.examined.load();
    out.resumed_from = first_b;
    if (st.best_b.load() != kNone) {
      out.found = true;
      out.b = decode(st.best_b.load());
      out.c = decode(st.best_c);
      if (!(commutator(*out.b, *out.c) == target_)) {
        throw Error(ErrorCode::WitnessVerificationFailed, "search produced a pair that does not recompute");
      }
    } else if (options_.checkpoint) {
      write_progress(fingerprint, side_, side_ * side_);
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

  /// Identifies target, ring and normalization in progress files.
  std::string fingerprint() const {
    std::string canon = io::to_json(target_).dump() + (options_.normalize ? "|norm" : "|full");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(detail::fnv1a(canon)));
    return buf;
  }

 private:
  using Elem = std::uint16_t;
  static constexpr std::uint64_t kNone = ~std::uint64_t{0};

  struct State {
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best_b{kNone};
    std::uint64_t best_c = kNone;
    std::atomic<std::uint64_t> examined{0};
    std::mutex mu;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pending;  // completed chunks past the prefix
    std::uint64_t done_prefix = 0;
    std::uint64_t last_written = 0;
  };

  void build_tables() {
    const RingCtx& ctx = target_.ctx();
    std::vector<Monomial> basis = ctx.finite_basis();
    const std::size_t nb = basis.size();
    const std::uint64_t p = ctx.field().modulus();
    // Structure constants: basis[i] * basis[j] = basis[prod[i][j]] or vanishes (-1).
    std::vector<long> prod(nb * nb, -1);
    for (std::size_t i = 0; i < nb; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        Monomial mono = basis[i] * basis[j];
        if (ctx.truncation() && mono.degree() >= *ctx.truncation()) continue;
        auto it = std::find(basis.begin(), basis.end(), mono);
        if (it != basis.end()) prod[i * nb + j] = it - basis.begin();
      }
    }
    std::vector<std::vector<std::uint32_t>> dig(q_, std::vector<std::uint32_t>(nb));
    for (std::uint64_t a = 0; a < q_; ++a) {
      std::uint64_t v = a;
      for (std::size_t k = 0; k < nb; ++k) {
        dig[a][k] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
    }
    auto pack = [&](const std::vector<std::uint64_t>& v) {
      std::uint64_t idx = 0;
      for (std::size_t k = nb; k-- > 0;) idx = idx * p + v[k] % p;
      return static_cast<Elem>(idx);
    };
    add_.assign(q_ * q_, 0);
    sub_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    std::vector<std::uint64_t> acc(nb);
    for (std::uint64_t a = 0; a < q_; ++a) {
      for (std::uint64_t b = 0; b < q_; ++b) {
        for (std::size_t k = 0; k < nb; ++k) acc[k] = dig[a][k] + dig[b][k];
        add_[a * q_ + b] = pack(acc);
        for (std::size_t k = 0; k < nb; ++k) acc[k] = dig[a][k] + p - dig[b][k];
        sub_[a * q_ + b] = pack(acc);
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t i = 0; i < nb; ++i) {
          if (!dig[a][i]) continue;
          for (std::size_t j = 0; j < nb; ++j) {
            const long k = prod[i * nb + j];
            if (k >= 0 && dig[b][j]) acc[static_cast<std::size_t>(k)] += std::uint64_t{dig[a][i]} * dig[b][j] % p;
          }
        }
        mul_[a * q_ + b] = pack(acc);
      }
    }
  }

  std::vector<Elem> digits(std::uint64_t index) const {
    std::vector<Elem> e(n_ * n_, 0);
    fill_digits(index, e);
    return e;
  }

  void fill_digits(std::uint64_t index, std::vector<Elem>& e) const {
    for (std::size_t k = free_; k-- > 0;) {
      e[k] = static_cast<Elem>(index % q_);
      index /= q_;
    }
  }

  // Odometer step on the free entries, last entry least significant.
  void increment(std::vector<Elem>& e) const {
    for (std::size_t k = free_; k-- > 0;) {
      if (++e[k] < q_) return;
      e[k] = 0;
    }
  }

  Elem entry(const Elem* b, const Elem* c, std::size_t i, std::size_t j) const {
    Elem s = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      s = add_[s * q_ + mul_[b[i * n_ + k] * q_ + c[k * n_ + j]]];
      s = sub_[s * q_ + mul_[c[i * n_ + k] * q_ + b[k * n_ + j]]];
    }
    return s;
  }

  bool corner_matches(const Elem* b, const Elem* c) const {
    return n_ == 0 || entry(b, c, 0, 0) == target_idx_[0];
  }

  bool all_match(const Elem* b, const Elem* c) const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (entry(b, c, i, j) != target_idx_[i * n_ + j]) return false;
      }
    }
    return true;
  }

  void record(State& st, std::uint64_t b, std::uint64_t c) {
    std::lock_guard lock(st.mu);
    if (b < st.best_b.load() || (b == st.best_b.load() && c < st.best_c)) {
      st.best_b.store(b);
      st.best_c = c;
    }
  }

  void finish_chunk(State& st, std::uint64_t lo, std::uint64_t hi, const std::string& fingerprint) {
    if (!options_.checkpoint) return;
    std::lock_guard lock(st.mu);
    st.pending.emplace_back(lo, hi);
    std::sort(st.pending.begin(), st.pending.end());
    std::size_t used = 0;
    while (used < st.pending.size() && st.pending[used].first == st.done_prefix) st.done_prefix = st.pending[used++].second;
    st.pending.erase(st.pending.begin(), st.pending.begin() + static_cast<std::ptrdiff_t>(used));
    const std::uint64_t pairs = st.done_prefix * side_;
    if (st.best_b.load() == kNone && pairs - st.last_written >= options_.checkpoint_interval) {
      write_progress(fingerprint, st.done_prefix, pairs);
      st.last_written = pairs;
    }
  }

  void write_progress(const std::string& fingerprint, std::uint64_t next_b, std::uint64_t pairs_done) const {
    io::Json j{{"fingerprint", fingerprint}, {"next_b", next_b}, {"matrices", side_}, {"pairs_done", pairs_done},
               {"search_size", search_size_}};
    io::write_file_atomic(*options_.checkpoint, j.dump(2) + "\n");
  }

  Matrix target_;
  SearchOptions options_;
  std::size_t n_ = 0;
  std::uint64_t q_ = 0;
  std::size_t free_ = 0;
  std::uint64_t side_ = 0;
  std::uint64_t search_size_ = 0;
  std::vector<Elem> add_, sub_, mul_;
  std::vector<Elem> target_idx_;
};

/// First (B, C) in enumeration order with [B, C] = A, or none.
inline SearchOutcome exhaustive_commutator_search(const Matrix& a, const SearchOptions& options = {}) {
  CommutatorSearch search(a, options);
  return search.run();
}

/// The certificate matrix in F_p[x1..xm]/m^(3d+2). Q coefficients are reduced
/// mod p; a certificate over a different prime field is a FieldMismatch.
inline Matrix certificate_search_matrix(const Certificate& cert, std::uint64_t p) {
  const FieldSpec fp = FieldSpec::prime(p);
  if (cert.field.is_prime_field() && cert.field.modulus() != p) {
    throw Error(ErrorCode::FieldMismatch, "certificate is over " + cert.field.to_string() + ", search is over " + fp.to_string());
  }
  const RingCtx ctx(fp, cert.m, static_cast<std::uint32_t>(3 * cert.d + 2));
  Matrix out(ctx, cert.n);
  for (std::size_t i = 0; i < cert.n; ++i) {
    for (std::size_t j = 0; j < cert.n; ++j) {
      std::vector<Term> terms;
      for (const auto& t : cert.x(i, j).terms()) {
        FieldElem c = t.coeff;
        if (c.field().is_rationals()) {
          const mpq_class& r = c.rational();
          c = FieldElem(fp, mpz_class(r.get_num())) / FieldElem(fp, mpz_class(r.get_den()));
        }
        terms.push_back({t.monomial, c});
      }
      out.set(i, j, ctx.reduce(Polynomial::from_terms(fp, cert.m, std::move(terms))));
    }
  }
  return out;
}

/// Rejects invalid certificates with ValidationFailed before searching.
inline SearchOutcome exhaustive_noncommutator_check(const Certificate& cert, std::uint64_t p,
                                                    const SearchOptions& options = {}) {
  ValidationReport report = validate_certificate(cert);
  if (!report.ok()) throw Error(ErrorCode::ValidationFailed, report.failures());
  return exhaustive_commutator_search(certificate_search_matrix(cert, p), options);
}

struct QuadricCheck {
  bool holds = false;
  Matrix a, b, c;
  std::vector<Polynomial> remainders;  // row-major, entries of [B,C] - A mod x^2+y^2+z^2-1
};

/// A = [[x,y],[z,-x]] against the explicit B, C over F_p with i^2 = -1.
/// Throws NoSquareRootOfMinusOne.
inline QuadricCheck quadric_decomposition_details(std::uint64_t p, std::uint64_t i) {
  const FieldSpec f = FieldSpec::prime(p);
  if ((i % p) * (i % p) % p != p - 1) {
    throw Error(ErrorCode::NoSquareRootOfMinusOne, std::to_string(i) + "^2 != -1 mod " + std::to_string(p));
  }
  const RingCtx ctx(f, 3);
  auto P = [&](const char* text) { return Polynomial::parse(f, 3, text); };
  const Polynomial I = ctx.from_int(static_cast<long>(i % p));
  const Polynomial x = ctx.variable(0), y = ctx.variable(1), z = ctx.variable(2);
  const Polynomial ix_minus_y = I * x - y;

  QuadricCheck out;
  out.a = Matrix::from_rows(ctx, {{x, y}, {z, -x}});
  out.b = Matrix::from_rows(ctx, {{ctx.one() + I * x * ix_minus_y, -(x * z)}, {x * ix_minus_y, ctx.zero()}});
  out.c = Matrix::from_rows(ctx, {{-(I * z), I * x + y}, {-z, ctx.zero()}});
  const Matrix diff = commutator(out.b, out.c) - out.a;
  const Polynomial quadric = P("x1^2 + x2^2 + x3^2 - 1");
  out.holds = true;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t s = 0; s < 2; ++s) {
      out.remainders.push_back(reduce_by_divisor(diff(r, s), quadric, MonomialOrder::GradedLex));
      if (!out.remainders.back().is_zero()) out.holds = false;
    }
  }
  return out;
}

inline bool quadric_decomposition_check(std::uint64_t p, std::uint64_t i) {
  return quadric_decomposition_details(p, i).holds;
}

/// Uses the least square root of -1 mod p.
inline bool quadric_decomposition_check(std::uint64_t p) {
  FieldSpec::prime(p);
  for (std::uint64_t i = 1; i < p; ++i) {
    if (i * i % p == p - 1) return quadric_decomposition_check(p, i);
  }
  throw Error(ErrorCode::NoSquareRootOfMinusOne, "-1 is not a square mod " + std::to_string(p));
}

}  // namespace trcomm
