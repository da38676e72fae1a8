#include <gtest/gtest.h>

#include <random>

#include "lightlike/linalg.hpp"
#include "test_support.hpp"

using namespace lightlike;
using lightlike::testing::random_matrix;
using lightlike::testing::random_scalar;

namespace {

const MetallicParams kGolden{1, 1};

QVec unit(std::size_t n, std::size_t i, QuadScalar c = QuadScalar(1)) {
  QVec v(n);
  v[i] = c;
  return v;
}

}  // namespace

TEST(Rank, Examples) {
  EXPECT_EQ(rank(QMatrix(3, 3)), 0u);
  EXPECT_EQ(rank(QMatrix::identity(4)), 4u);
  QuadScalar s = QuadScalar::sigma(kGolden);
  QMatrix m(2, 2, {QuadScalar(1), s, s, s + QuadScalar(1)});
  EXPECT_EQ(rank(m), 1u);
}

TEST(NullSpace, Examples) {
  EXPECT_TRUE(null_space(QMatrix::identity(3)).empty());
  auto z = null_space(QMatrix(1, 1));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0], QVec{QuadScalar(1)});

  QuadScalar s = QuadScalar::sigma(kGolden);
  QMatrix m(2, 2, {QuadScalar(1), s, s, s + QuadScalar(1)});
  auto k = null_space(m);
  ASSERT_EQ(k.size(), 1u);
  // Expected direction (sigma, -1): both rows vanish by sigma^2 = sigma + 1.
  QVec expected{s, QuadScalar(-1)};
  EXPECT_TRUE(is_zero_vec(m * expected));
  EXPECT_TRUE(subspace_relation(QSubspace::span(2, k), QSubspace::span(2, {expected}), SubspaceRelation::Equal));
}

TEST(Solve, Examples) {
  QVec v{QuadScalar(3), QuadScalar(-1)};
  EXPECT_EQ(*solve(QMatrix::identity(2), v), v);
  QMatrix ones(2, 2, {QuadScalar(1), QuadScalar(1), QuadScalar(1), QuadScalar(1)});
  EXPECT_FALSE(solve(ones, QVec{QuadScalar(1), QuadScalar(2)}).has_value());

  MetallicParams p02{0, 2};
  QuadScalar s = QuadScalar::sigma(p02);
  auto x = solve(QMatrix(1, 1, {QuadScalar(2)}), QVec{s});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0] * QuadScalar(2), s);
  EXPECT_EQ((*x)[0], s / QuadScalar(2));
  EXPECT_THROW(solve(ones, QVec{QuadScalar(1)}), Error);
}

TEST(Gram, Examples) {
  EXPECT_EQ(gram({-1, 1}, std::vector<QVec>{{QuadScalar(1), QuadScalar(1)}}), QMatrix(1, 1));
  EXPECT_EQ(gram({1, 1, 1}, std::vector<QVec>{unit(3, 0), unit(3, 1), unit(3, 2)}), QMatrix::identity(3));

  MetallicParams params{0, 2};
  QuadScalar s = QuadScalar::sigma(params);
  QVec w1 = unit(5, 0) + unit(5, 3, s);
  QVec w2 = unit(5, 2) + unit(5, 3, s);
  QVec w3 = unit(5, 4);
  QMatrix g = gram({-1, 1, -1, 1, 1}, std::vector<QVec>{w1, w2, w3});
  QuadScalar s2 = s * s;
  QuadScalar one(1);
  QMatrix expected(3, 3, {s2 - one, s2, QuadScalar{}, s2, s2 - one, QuadScalar{}, QuadScalar{}, QuadScalar{}, one});
  EXPECT_EQ(g, expected);
  EXPECT_THROW(gram({1, 1}, std::vector<QVec>{unit(3, 0)}), Error);
}

TEST(SubspaceOps, Examples) {
  QSubspace a = QSubspace::span(3, {unit(3, 0)});
  QSubspace b = QSubspace::span(3, {unit(3, 0, QuadScalar(2))});
  EXPECT_TRUE(subspace_relation(a, b, SubspaceRelation::Equal));
  EXPECT_EQ(a, b);  // canonical form
  QSubspace e2 = QSubspace::span(3, {unit(3, 1)});
  EXPECT_EQ(a.intersect(e2).dim(), 0u);
  EXPECT_EQ(a.sum(e2).dim(), 2u);
  EXPECT_TRUE(a.sum(e2).contains(e2));

  QuadScalar s = QuadScalar::sigma(kGolden);
  QVec v = unit(2, 0, s) + unit(2, 1);
  auto c = coords_in_basis(std::vector<QVec>{unit(2, 0), unit(2, 1)}, v);
  EXPECT_EQ(c, (QVec{s, QuadScalar(1)}));
  EXPECT_THROW(coords_in_basis(std::vector<QVec>{unit(2, 0)}, v), Error);
}

TEST(LinalgProperties, RankNullityAndKernel) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int t = 0; t < 500; ++t) {
    std::size_t rows = dim(rng), cols = dim(rng);
    QMatrix m = random_matrix(rng, kGolden, rows, cols, 0.5);
    // Force some rank deficiency by copying a combination of rows.
    if (rows > 1 && t % 2 == 0)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = QuadScalar(2) * m(0, j) - m(1 % rows, j);
    auto k = null_space(m);
    EXPECT_EQ(rank(m) + k.size(), cols);
    for (const auto& v : k) EXPECT_TRUE(is_zero_vec(m * v));
  }
}

TEST(LinalgProperties, GramIsSymmetric) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 50; ++t) {
    std::vector<QVec> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(random_matrix(rng, kGolden, 1, 5).row(0));
    QMatrix g = gram({-1, 1, -1, 1, 1}, vs);
    EXPECT_EQ(g, g.transpose());
  }
}

TEST(LinalgProperties, SubspaceEqualityIsAnEquivalence) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 50; ++t) {
    std::vector<QVec> base;
    for (int i = 0; i < 2; ++i) base.push_back(random_matrix(rng, kGolden, 1, 4, 0.0).row(0));
    auto remix = [&]() {
      QMatrix r = random_matrix(rng, kGolden, 2, 2, 0.0);
      while (rank(r) < 2) r = random_matrix(rng, kGolden, 2, 2, 0.0);
      std::vector<QVec> out;
      for (std::size_t i = 0; i < 2; ++i) out.push_back(combine(r.row(i), base, 4));
      return QSubspace::span(4, out);
    };
    QSubspace a = remix(), b = remix(), c = remix();
    EXPECT_TRUE(subspace_relation(a, a, SubspaceRelation::Equal));
    EXPECT_EQ(subspace_relation(a, b, SubspaceRelation::Equal), subspace_relation(b, a, SubspaceRelation::Equal));
    EXPECT_TRUE(subspace_relation(a, b, SubspaceRelation::Equal) && subspace_relation(b, c, SubspaceRelation::Equal));
    EXPECT_TRUE(subspace_relation(a, c, SubspaceRelation::Equal));
    EXPECT_EQ(a, c);
  }
}

TEST(JetLinalg, ConstantRankKernelCarriesDerivative) {
  // M(u) = [[1, u], [u, u^2]] has rank 1 for all u; kernel (-u, 1) has derivative (-1, 0).
  QJet u = QJet::variable(QuadScalar(0), 0, 1);
  JMatrix m(2, 2, {QJet(1), u, u, u * u});
  auto k = null_space(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0].value(), QuadScalar(0));
  EXPECT_EQ(k[0][0].d(0), QuadScalar(-1));
  EXPECT_EQ(k[0][1].value(), QuadScalar(1));
}

TEST(JetLinalg, RankJumpIsDetected) {
  // diag(1, u) at u = 0 has rank 1 but rank 2 nearby.
  QJet u = QJet::variable(QuadScalar(0), 0, 1);
  JMatrix m(2, 2, {QJet(1), QJet(0), QJet(0), u});
  EXPECT_THROW(null_space(m), Error);
}
