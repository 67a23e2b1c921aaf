#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "oracles.hpp"
#include "trcomm/trcomm.hpp"

using namespace trcomm;

namespace {

std::vector<RingCtx> contexts() {
  return {RingCtx(FieldSpec::rationals(), 2),       RingCtx(FieldSpec::rationals(), 3, 4),
          RingCtx(FieldSpec::prime(2), 3, 2),       RingCtx(FieldSpec::prime(101), 2),
          RingCtx(FieldSpec::prime(5), 3, 3),       RingCtx(FieldSpec::prime(101), 0)};
}

}  // namespace

TEST(RingAxioms, HoldOnRandomTriples) {
  for (const RingCtx& ctx : contexts()) {
    fuzz::Rng rng(ctx.nvars() * 131 + ctx.truncation().value_or(0));
    for (int trial = 0; trial < 1000; ++trial) {
      RingElem a = fuzz::random_element(ctx, rng), b = fuzz::random_element(ctx, rng), c = fuzz::random_element(ctx, rng);
      ASSERT_EQ(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c))) << ctx.to_string();
      ASSERT_EQ(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
      ASSERT_EQ(ctx.mul(a, b), ctx.mul(b, a));
      ASSERT_EQ(ctx.add(a, b), ctx.add(b, a));
      ASSERT_EQ(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
      ASSERT_TRUE(ctx.add(a, ctx.neg(a)).is_zero());
      ASSERT_EQ(ctx.mul(a, ctx.one()), a);
    }
  }
}

TEST(Truncation, IsARingHomomorphism) {
  RingCtx full(FieldSpec::rationals(), 3);
  fuzz::Rng rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(trial % 5);
    RingCtx trunc(full.field(), 3, n);
    RingElem p = fuzz::random_element(full, rng), q = fuzz::random_element(full, rng);
    ASSERT_EQ((p * q).truncated(n), trunc.mul(trunc.reduce(p), trunc.reduce(q)));
    ASSERT_EQ((p + q).truncated(n), trunc.add(trunc.reduce(p), trunc.reduce(q)));
  }
}

TEST(Truncation, MultiplicationAgreesWithPointEvaluationModP) {
  // Untruncated products over F_p evaluated at random points.
  RingCtx ctx(FieldSpec::prime(101), 3);
  fuzz::Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    RingElem a = fuzz::random_element(ctx, rng), b = fuzz::random_element(ctx, rng);
    std::vector<std::uint64_t> pt{rng() % 101, rng() % 101, rng() % 101};
    ASSERT_EQ(oracle::eval_mod(a * b, pt, 101), oracle::eval_mod(a, pt, 101) * oracle::eval_mod(b, pt, 101) % 101);
  }
}

TEST(ReduceByDivisor, IdempotentAndLinear) {
  const FieldSpec Q = FieldSpec::rationals();
  RingCtx ctx(Q, 3);
  fuzz::Rng rng(21);
  const Polynomial g = Polynomial::parse(Q, 3, "x1^2 + x2^2 + x3^2 - 1");
  for (int trial = 0; trial < 300; ++trial) {
    RingElem p = fuzz::random_element(ctx, rng) * fuzz::random_element(ctx, rng);
    RingElem q = fuzz::random_element(ctx, rng) * fuzz::random_element(ctx, rng);
    FieldElem c = fuzz::random_scalar(Q, rng);
    RingElem rp = reduce_by_divisor(p, g);
    ASSERT_EQ(reduce_by_divisor(rp, g), rp);
    ASSERT_EQ(reduce_by_divisor(p + q, g), rp + reduce_by_divisor(q, g));
    ASSERT_EQ(reduce_by_divisor(p.scaled(c), g), rp.scaled(c));
    ASSERT_TRUE(reduce_by_divisor(p * g, g).is_zero());
  }
}

TEST(Serialization, PolynomialAndMatrixRoundTrip) {
  for (const RingCtx& ctx : contexts()) {
    fuzz::Rng rng(ctx.nvars() + 1000);
    for (int trial = 0; trial < 200; ++trial) {
      RingElem p = fuzz::random_element(ctx, rng);
      ASSERT_EQ(io::polynomial_from_json(io::to_json(p), ctx.field()), p);
      ASSERT_EQ(Polynomial::parse(ctx.field(), ctx.nvars(), p.to_text()), p);
      Matrix a = fuzz::random_matrix(ctx, 1 + trial % 4, rng);
      ASSERT_EQ(io::matrix_from_json(io::parse_json(io::to_json(a).dump())), a);
    }
  }
}

TEST(TraceIdentities, HoldOnRandomMatrices) {
  for (const RingCtx& ctx : contexts()) {
    fuzz::Rng rng(ctx.nvars() * 7 + 3);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = 1 + trial % 4;
      Matrix a = fuzz::random_matrix(ctx, n, rng), b = fuzz::random_matrix(ctx, n, rng), c = fuzz::random_matrix(ctx, n, rng);
      ASSERT_EQ(trace(a * b), trace(b * a)) << ctx.to_string();
      ASSERT_TRUE(trace(commutator(b, c)).is_zero());
      ASSERT_TRUE(trace(b * commutator(b, c)).is_zero());
    }
  }
}

TEST(Witnesses, FuzzedInputsAlwaysVerify) {
  fuzz::Rng rng(404);
  const RingCtx q(FieldSpec::rationals(), 0), f101(FieldSpec::prime(101), 0), trunc(FieldSpec::prime(3), 2, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    for (const RingCtx* ctx : {&q, &f101, &trunc}) {
      Matrix a = fuzz::random_upper_trace_zero(*ctx, n, rng);
      WitnessPair w = triangular_witness(a);
      ASSERT_EQ(commutator(w.x(), w.b()), a);
    }
    for (const RingCtx* ctx : {&q, &f101}) {
      Matrix h = fuzz::random_hollow(*ctx, n, rng);
      WitnessPair w = hollow_witness(h, verify_clique(fuzz::random_clique(*ctx, n - 1, rng), *ctx));
      ASSERT_EQ(commutator(w.x(), w.b()), h);
    }
  }
}

TEST(Certificates, BuiltFromPackingOutputsValidate) {
  for (std::size_t m = 3; m <= 6; ++m) {
    for (std::uint64_t d = 0; d <= 3; ++d) {
      PackingResult r = best_separated_set(m, d, std::chrono::duration<double>(10));
      if (r.set.size() < 3) continue;
      const std::size_t n = matrix_size_from_set(r.set);
      Certificate c = build_noncommutator(r.set, n, FieldSpec::rationals());
      ValidationReport report = validate_certificate(c);
      EXPECT_TRUE(report.ok()) << report.failures();
      EXPECT_FALSE(c.x.is_zero());
      EXPECT_LE(n, *upper_bounds(m).matrix_bound);
      EXPECT_LE(r.set.size(), upper_bounds(m).set_bound);
      for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) {
          if (!(i == n - 1 && j == n - 1)) {
            EXPECT_TRUE(c.x(i, j).is_zero());
          }
        }
      }
    }
  }
}
