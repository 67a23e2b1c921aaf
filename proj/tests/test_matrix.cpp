#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "trcomm/matrix.hpp"

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

TEST(Matrix, ShapePredicates) {
  RingCtx ctx(Q, 0);
  Matrix upper = Matrix::from_ints(ctx, {{1, 2}, {0, 3}});
  Matrix strict = Matrix::from_ints(ctx, {{0, 2}, {0, 0}});
  Matrix hollow = Matrix::from_ints(ctx, {{0, 2}, {5, 0}});
  EXPECT_TRUE(upper.is_upper_triangular());
  EXPECT_FALSE(upper.is_strictly_upper_triangular());
  EXPECT_TRUE(strict.is_strictly_upper_triangular());
  EXPECT_FALSE(hollow.is_upper_triangular());
  EXPECT_TRUE(hollow.is_hollow());
  EXPECT_FALSE(upper.is_hollow());
}

TEST(Matrix, ProductAndCommutator) {
  RingCtx ctx(Q, 0);
  Matrix a = Matrix::from_ints(ctx, {{1, 2}, {3, 4}});
  Matrix b = Matrix::from_ints(ctx, {{0, 1}, {1, 0}});
  EXPECT_EQ(a * b, Matrix::from_ints(ctx, {{2, 1}, {4, 3}}));
  EXPECT_EQ(commutator(a, b), Matrix::from_ints(ctx, {{-1, -3}, {3, 1}}));
  EXPECT_TRUE(trace(commutator(a, b)).is_zero());
  EXPECT_EQ(trace(a), ctx.from_int(5));
}

TEST(Matrix, ShapeAndContextMismatch) {
  RingCtx ctx(Q, 0);
  Matrix a = Matrix::identity(ctx, 2), b = Matrix::identity(ctx, 3);
  EXPECT_EQ(code_of([&] { a * b; }), ErrorCode::ShapeMismatch);
  Matrix c = Matrix::identity(RingCtx(FieldSpec::prime(3), 0), 2);
  EXPECT_EQ(code_of([&] { a + c; }), ErrorCode::ContextMismatch);
}

TEST(Matrix, InverseOverPrimeField) {
  RingCtx ctx(FieldSpec::prime(101), 0);
  fuzz::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix g = fuzz::random_invertible(ctx, 1 + trial % 6, rng);
    EXPECT_EQ(g * inverse(g), Matrix::identity(ctx, g.size()));
  }
  EXPECT_EQ(code_of([&] { inverse(Matrix::from_ints(ctx, {{1, 2}, {2, 4}})); }), ErrorCode::SingularBasis);
  EXPECT_EQ(code_of([] {
              RingCtx poly(Q, 1);
              inverse(Matrix::from_rows(poly, {{poly.variable(0)}}));
            }),
            ErrorCode::NonConstantEntries);
}

TEST(Matrix, KernelBasisIsInKernel) {
  RingCtx ctx(Q, 0);
  Matrix a = Matrix::from_ints(ctx, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  auto kernel = kernel_basis(a);
  ASSERT_EQ(kernel.size(), 1u);
  ScalarRows rows = scalar_rows(a);
  for (const auto& v : kernel) {
    for (const auto& row : rows) {
      FieldElem s(Q, 0);
      for (std::size_t j = 0; j < 3; ++j) s += row[j] * v[j];
      EXPECT_TRUE(s.is_zero());
    }
  }
}

TEST(NilpotentFlag, TriangularizesConjugatedNilpotents) {
  RingCtx ctx(FieldSpec::prime(101), 0);
  fuzz::Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    Matrix g = fuzz::random_invertible(ctx, n, rng);
    Matrix a = g * fuzz::random_strictly_upper(ctx, n, rng) * inverse(g);
    ASSERT_TRUE(is_nilpotent(a));
    FlagBasis flag = nilpotent_flag(a);
    EXPECT_EQ(flag.g() * flag.g_inverse(), Matrix::identity(ctx, n));
    EXPECT_TRUE(conjugate(flag, a).is_strictly_upper_triangular());
  }
}

TEST(NilpotentFlag, RejectsNonNilpotent) {
  RingCtx ctx(Q, 0);
  EXPECT_FALSE(is_nilpotent(Matrix::from_ints(ctx, {{1, 0}, {0, -1}})));
  EXPECT_EQ(code_of([&] { nilpotent_flag(Matrix::from_ints(ctx, {{1, 0}, {0, -1}})); }), ErrorCode::NotNilpotent);
}

TEST(Conjugation, IsAnAutomorphism) {
  RingCtx ctx(FieldSpec::prime(101), 0);
  fuzz::Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 5;
    FlagBasis g = FlagBasis::from_matrix(fuzz::random_invertible(ctx, n, rng));
    Matrix a = fuzz::random_matrix(ctx, n, rng), b = fuzz::random_matrix(ctx, n, rng);
    EXPECT_EQ(conjugate(g, a * b), conjugate(g, a) * conjugate(g, b));
    EXPECT_EQ(conjugate(g, a + b), conjugate(g, a) + conjugate(g, b));
    EXPECT_EQ(trace(conjugate(g, a)), trace(a));
  }
}
