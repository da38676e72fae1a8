#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lightlike/polynomial.hpp"
#include "lightlike/scalar.hpp"
#include "test_support.hpp"

using namespace lightlike;
using lightlike::testing::random_nonzero;
using lightlike::testing::random_scalar;

namespace {

const MetallicParams kGolden{1, 1};
const MetallicParams kSilver{2, 1};

QuadScalar q(long a) { return QuadScalar(a); }

}  // namespace

TEST(MetallicNumber, GoldenAndSilverMeans) {
  QuadScalar phi = metallic_number(kGolden);
  EXPECT_EQ(phi.a(), 0);
  EXPECT_EQ(phi.b(), 1);
  EXPECT_EQ(embed(phi, 9).text, "1.618033989");

  QuadScalar silver = metallic_number(kSilver);
  EXPECT_EQ(embed(silver, 9).text, "2.414213562");
  // 1 + sqrt(2) has square 3 + 2 sqrt(2) = 1 + 2 (1 + sqrt 2): sigma^2 = 2 sigma + 1.
  EXPECT_EQ(silver * silver, q(2) * silver + q(1));
}

TEST(MetallicNumber, DefiningEquationForManyParams) {
  for (long p = 0; p <= 6; ++p)
    for (long qq = 1; qq <= 6; ++qq) {
      if (p + qq < 2) continue;
      MetallicParams params{p, qq};
      QuadScalar s = metallic_number(params);
      EXPECT_TRUE((s * s - q(p) * s - q(qq)).is_zero()) << p << "," << qq;
      EXPECT_EQ(s * (s - q(p)), q(qq));
    }
}

TEST(MetallicNumber, InvalidParams) {
  EXPECT_THROW(metallic_number({0, 1}), Error);
  EXPECT_THROW(metallic_number({-1, 2}), Error);
  EXPECT_THROW(metallic_number({3, 0}), Error);
}

TEST(Arith, Examples) {
  QuadScalar phi = metallic_number(kGolden);
  EXPECT_EQ(arith(phi, phi, ArithOp::Mul), phi + q(1));

  QuadScalar s02 = metallic_number({0, 2});
  EXPECT_EQ(s02 * s02, q(2));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    QuadScalar x = random_scalar(rng, kSilver);
    QuadScalar n = x * x.conjugate();
    EXPECT_TRUE(n.is_rational());
    EXPECT_EQ(n.a(), x.a() * x.a() + x.a() * x.b() * 2 - x.b() * x.b());
  }
  EXPECT_THROW(arith(phi, QuadScalar{}, ArithOp::Div), Error);
}

TEST(Arith, SquareDiscriminantCollapses) {
  // p = 3, q = 4: sigma = 4.
  MetallicParams params{3, 4};
  QuadScalar s = metallic_number(params);
  EXPECT_TRUE(s.is_rational());
  EXPECT_EQ(s, q(4));
  QuadScalar x(Rational(1), Rational(2), params);
  EXPECT_EQ(x, q(9));
}

TEST(Arith, MixingFieldsIsRejected) {
  QuadScalar a = metallic_number(kGolden);
  QuadScalar b = metallic_number(kSilver);
  EXPECT_THROW(a + b, Error);
  EXPECT_NO_THROW(a + q(3));
}

TEST(Sign, Examples) {
  EXPECT_EQ(sign(QuadScalar{}), 0);
  QuadScalar silver = metallic_number(kSilver);
  EXPECT_EQ(sign(silver - q(2)), 1);
  EXPECT_EQ(sign(q(2) - metallic_number(kGolden)), 1);
  EXPECT_EQ(sign(q(3) - silver), 1);
  EXPECT_EQ(sign(q(2) - silver), -1);
  EXPECT_EQ(sign(q(1) - q(2) * metallic_number(kGolden)), -1);
}

// Field axioms and automorphism properties on random elements.
TEST(ScalarProperties, FieldAxioms) {
  std::mt19937_64 rng(11);
  for (MetallicParams params : {kGolden, kSilver, MetallicParams{0, 2}, MetallicParams{3, 2}}) {
    for (int i = 0; i < 200; ++i) {
      QuadScalar x = random_scalar(rng, params), y = random_scalar(rng, params), z = random_scalar(rng, params);
      EXPECT_EQ((x + y) + z, x + (y + z));
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ(x * y, y * x);
      if (!x.is_zero()) EXPECT_EQ(x * (q(1) / x), q(1));
      EXPECT_EQ((x * y).conjugate(), x.conjugate() * y.conjugate());
      EXPECT_EQ((x + y).conjugate(), x.conjugate() + y.conjugate());
      EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
    }
  }
}

TEST(ScalarProperties, SignAgreesWithEmbedding) {
  std::mt19937_64 rng(13);
  for (MetallicParams params : {kGolden, kSilver, MetallicParams{0, 2}, MetallicParams{0, 3}, MetallicParams{5, 1}}) {
    int checked = 0;
    while (checked < 1000) {
      QuadScalar x = random_nonzero(rng, params);
      std::string txt = embed(x, 30).text;
      int expected = txt[0] == '-' ? -1 : 1;
      EXPECT_EQ(sign(x), expected) << format(x) << " ~ " << txt;
      ++checked;
    }
  }
}

TEST(Embed, Examples) {
  EXPECT_EQ(embed(QuadScalar{}, 1).text, "0.0");
  EXPECT_NEAR(embed(metallic_number(kGolden), 12).value, 1.6180339887, 1e-9);
  EXPECT_EQ(embed(-metallic_number(kSilver), 3).text, "-2.414");
}

TEST(ScalarText, ParseAndFormatRoundTrip) {
  QuadScalar h = parse_scalar("1/2 + 1/2 s", kGolden);
  EXPECT_EQ(h.a(), Rational(1, 2));
  EXPECT_EQ(h.b(), Rational(1, 2));
  EXPECT_EQ(format(h), "1/2 + 1/2 s");
  EXPECT_EQ(parse_scalar("  1/2+1/2s ", kGolden), h);
  EXPECT_EQ(format(parse_scalar("-s", kGolden)), "-s");
  EXPECT_EQ(format(parse_scalar("3 - 2/3 s", kGolden)), "3 - 2/3 s");
  EXPECT_EQ(parse_scalar("s*s", kGolden), parse_scalar("1 + s", kGolden));
  EXPECT_THROW(parse_scalar("sqrt(2)", kGolden), Error);
  EXPECT_THROW(parse_scalar("u1", kGolden), Error);
  EXPECT_THROW(parse_scalar("", kGolden), Error);
  EXPECT_THROW(parse_scalar("1/0", kGolden), Error);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    QuadScalar x = random_scalar(rng, kSilver, 40, 9);
    EXPECT_EQ(parse_scalar(format(x), kSilver), x) << format(x);
  }
}
