#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "trcomm/witness.hpp"

using namespace trcomm;

namespace {

const FieldSpec Q = FieldSpec::rationals();

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(TriangularWitness, TwoByTwoExample) {
  RingCtx ctx(Q, 0);
  WitnessPair w = triangular_witness(Matrix::from_ints(ctx, {{1, 5}, {0, -1}}));
  EXPECT_EQ(w.x(), Matrix::from_ints(ctx, {{0, 1}, {0, 0}}));
  EXPECT_EQ(w.b(), Matrix::from_ints(ctx, {{0, 0}, {1, 5}}));
  EXPECT_EQ(commutator(w.x(), w.b()), w.target());
}

TEST(TriangularWitness, ZeroMatrix) {
  RingCtx ctx(Q, 0);
  WitnessPair w = triangular_witness(Matrix(ctx, 4));
  EXPECT_TRUE(w.b().is_zero());
}

TEST(TriangularWitness, SymbolicThreeByThree) {
  RingCtx ctx(Q, 5);
  auto v = [&](std::size_t i) { return ctx.variable(i); };
  Matrix a = Matrix::from_rows(ctx, {{v(0), v(1), v(2)}, {ctx.zero(), v(3), v(4)}, {ctx.zero(), ctx.zero(), -v(0) - v(3)}});
  WitnessPair w = triangular_witness(a);
  EXPECT_EQ(commutator(w.x(), w.b()), a);
}

TEST(TriangularWitness, NoDivisionNeeded) {
  // integer input gives integer B
  RingCtx ctx(Q, 0);
  fuzz::Rng rng(2);
  Matrix a(ctx, 5);
  long diag = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i; j < 5; ++j) {
      long v = fuzz::uniform(rng, -9, 9);
      if (i == j) {
        if (i == 4) v = -diag;
        diag += v;
      }
      a.set(i, j, ctx.from_int(v));
    }
  }
  WitnessPair w = triangular_witness(a);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) EXPECT_TRUE(w.b()(i, j).constant_term().is_integer());
  }
  // also over a truncated ring
  RingCtx trunc(FieldSpec::prime(3), 2, 3);
  Matrix t = fuzz::random_upper_trace_zero(trunc, 4, rng);
  EXPECT_EQ(commutator(triangular_witness(t).x(), triangular_witness(t).b()), t);
}

TEST(TriangularWitness, Preconditions) {
  RingCtx ctx(Q, 0);
  EXPECT_EQ(code_of([&] { triangular_witness(Matrix::from_ints(ctx, {{0, 0}, {1, 0}})); }), ErrorCode::NotUpperTriangular);
  EXPECT_EQ(code_of([&] { triangular_witness(Matrix::from_ints(ctx, {{1, 0}, {0, 0}})); }), ErrorCode::NonzeroTrace);
}

TEST(HollowWitness, FiveElementFieldExample) {
  RingCtx ctx(FieldSpec::prime(5), 0);
  Matrix a = Matrix::from_ints(ctx, {{0, 2}, {3, 0}});
  WitnessPair w = hollow_witness(a, verify_clique(std::vector<long>{1}, ctx));
  EXPECT_EQ(w.x(), Matrix::from_ints(ctx, {{0, 0}, {0, 1}}));
  EXPECT_EQ(w.b(), Matrix::from_ints(ctx, {{0, 3}, {3, 0}}));
}

TEST(HollowWitness, ZeroAndRandomRational) {
  RingCtx ctx(Q, 0);
  Clique c = verify_clique(std::vector<long>{1, 2, 3}, ctx);
  EXPECT_TRUE(hollow_witness(Matrix(ctx, 4), c).b().is_zero());
  fuzz::Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = fuzz::random_hollow(ctx, 4, rng);
    WitnessPair w = hollow_witness(a, c);
    std::vector<long> r{0, 1, 2, 3};
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (i != j) {
          EXPECT_EQ(ctx.from_int(r[i] - r[j]) * w.b()(i, j), a(i, j));
        }
      }
    }
  }
}

TEST(HollowWitness, Preconditions) {
  RingCtx ctx(Q, 0);
  Clique c = verify_clique(std::vector<long>{1}, ctx);
  EXPECT_EQ(code_of([&] { hollow_witness(Matrix::identity(ctx, 2), c); }), ErrorCode::NotHollow);
  EXPECT_EQ(code_of([&] { hollow_witness(Matrix::from_ints(ctx, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), c); }),
            ErrorCode::CliqueTooSmall);
}

TEST(VerifyClique, TruncatedRingDifferenceNotAUnit) {
  // 1 and 1 + x are units of F_3[x]/m^2, their difference x is not.
  RingCtx ctx(FieldSpec::prime(3), 1, 2);
  EXPECT_EQ(code_of([&] { verify_clique({ctx.one(), ctx.one() + ctx.variable(0)}, ctx); }),
            ErrorCode::DifferenceNotAUnit);
}

TEST(VerifyClique, Examples) {
  EXPECT_EQ(verify_clique(std::vector<long>{1, 2, 3}, RingCtx(Q, 0)).size(), 3u);
  EXPECT_EQ(code_of([] { verify_clique(std::vector<long>{1, 2}, RingCtx(FieldSpec::prime(2), 0)); }), ErrorCode::NotAUnit);
  EXPECT_EQ(verify_clique(std::vector<long>{1, 2, 3, 4}, RingCtx(FieldSpec::prime(5), 0)).size(), 4u);
  EXPECT_EQ(code_of([] { verify_clique(std::vector<long>{1, 6}, RingCtx(FieldSpec::prime(5), 0)); }),
            ErrorCode::DifferenceNotAUnit);
}

TEST(NilpotentWitness, Examples) {
  RingCtx ctx(Q, 0);
  Matrix strict = Matrix::from_ints(ctx, {{0, 1, 2}, {0, 0, 3}, {0, 0, 0}});
  EXPECT_EQ(commutator(nilpotent_witness(strict).x(), nilpotent_witness(strict).b()), strict);
  Matrix a = Matrix::from_ints(ctx, {{1, -1}, {1, -1}});
  WitnessPair w = nilpotent_witness(a);
  EXPECT_EQ(commutator(w.x(), w.b()), a);
  EXPECT_EQ(code_of([&] { nilpotent_witness(Matrix::from_ints(ctx, {{1, 0}, {0, -1}})); }), ErrorCode::NotNilpotent);
}

TEST(NilpotentWitness, ConjugatedOverF101) {
  RingCtx ctx(FieldSpec::prime(101), 0);
  fuzz::Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 6;
    Matrix g = fuzz::random_invertible(ctx, n, rng);
    Matrix a = g * fuzz::random_strictly_upper(ctx, n, rng) * inverse(g);
    EXPECT_TRUE(trace(a).is_zero());
    WitnessPair w = nilpotent_witness(a);
    EXPECT_EQ(commutator(w.x(), w.b()), a);
  }
}

TEST(WitnessPair, RefusesWrongPairs) {
  RingCtx ctx(Q, 0);
  Matrix x = Matrix::from_ints(ctx, {{0, 1}, {0, 0}});
  EXPECT_EQ(code_of([&] { WitnessPair::verified(x, x, Matrix::identity(ctx, 2)); }), ErrorCode::WitnessVerificationFailed);
}
