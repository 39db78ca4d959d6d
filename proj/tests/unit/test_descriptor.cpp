#include <gtest/gtest.h>

#include "gen.hpp"
#include "silverlab/error.hpp"

using namespace silverlab;
using silverlab::testing::Rng;
using silverlab::testing::random_coalition;

TEST(Coalition, AtomMembership) {
  const auto a = Coalition::arith(2, 3);
  EXPECT_FALSE(a.contains(0));
  EXPECT_TRUE(a.contains(2));
  EXPECT_TRUE(a.contains(11));
  const auto g = Coalition::geom(3, 10);
  EXPECT_TRUE(g.contains(3));
  EXPECT_TRUE(g.contains(3000));
  EXPECT_FALSE(g.contains(300 + 1));
  EXPECT_FALSE(g.contains(1));
  const auto p = Coalition::periodic("1", "01");
  EXPECT_EQ(p.members_below(7), (std::vector<std::uint64_t>{0, 2, 4, 6}));
}

TEST(Coalition, BooleanAlgebraMatchesPointwiseSemantics) {
  Rng rng(7);
  for (int t = 0; t < 60; ++t) {
    const auto a = random_coalition(rng, 3);
    const auto b = random_coalition(rng, 3);
    const auto na = ~a, u = a | b, i = a & b;
    for (std::uint64_t n = 0; n < 10000; ++n) {
      const bool x = a.contains(n), y = b.contains(n);
      ASSERT_EQ(na.contains(n), !x);
      ASSERT_EQ(u.contains(n), x || y);
      ASSERT_EQ(i.contains(n), x && y);
    }
  }
}

TEST(Coalition, CountMatchesMembershipLoop) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_coalition(rng, 3);
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n <= 3000; ++n) {
      count += a.contains(n);
      if (n % 97 == 0 || n == 3000) ASSERT_EQ(a.count_upto(n), count) << a.to_dsl() << " n=" << n;
    }
  }
}

TEST(Coalition, FinitenessOfGeometricCombinations) {
  const auto pow2 = Coalition::geom(1, 2);
  EXPECT_TRUE((pow2 & Coalition::arith(0, 3)).is_finite());
  EXPECT_FALSE((pow2 & Coalition::arith(1, 3)).is_finite());
  EXPECT_FALSE((Coalition::geom(1, 4) & Coalition::geom(1, 8)).is_finite());
  EXPECT_TRUE((Coalition::geom(1, 4) & Coalition::geom(2, 4)).is_finite());
  EXPECT_TRUE((Coalition::geom(1, 6) & pow2).is_finite());
  EXPECT_TRUE((Coalition::geom(3, 2) & ~Coalition::arith(0, 3)).is_finite());
  EXPECT_TRUE((~pow2 | pow2).is_cofinite());
  EXPECT_FALSE(pow2.is_finite());
  EXPECT_FALSE(pow2.is_cofinite());
  EXPECT_TRUE(Coalition::finite({1, 2, 3}).is_finite());
  EXPECT_TRUE((~Coalition::finite({1})).is_cofinite());
  EXPECT_FALSE(Coalition::periodic("", "10").is_cofinite());
}

TEST(Coalition, FinitenessAgreesWithTailScanOnGeomFreeSets) {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_coalition(rng, 3, false);
    // Every atom is periodic from 80 on with period dividing 420.
    bool tail_member = false, tail_missing = false;
    for (std::uint64_t n = 200; n < 200 + 420; ++n) (a.contains(n) ? tail_member : tail_missing) = true;
    EXPECT_EQ(a.is_finite(), !tail_member) << a.to_dsl();
    EXPECT_EQ(a.is_cofinite(), !tail_missing) << a.to_dsl();
  }
}

TEST(Coalition, DensityOfStandardSets) {
  EXPECT_EQ(Coalition::arith(0, 3).density(), Rational(1, 3));
  EXPECT_EQ(Coalition::finite({1, 2, 3}).density(), Rational(0));
  EXPECT_EQ(Coalition::geom(1, 10).density(), Rational(0));
  EXPECT_EQ((~Coalition::geom(1, 10)).density(), Rational(1));
  EXPECT_EQ(Coalition::periodic("", "1101").density(), Rational(3, 4));
}

TEST(Coalition, NormalizeIsIdempotentAndSound) {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_coalition(rng, 4);
    const auto n1 = a.normalize();
    const auto n2 = n1.normalize();
    EXPECT_EQ(n1, n2) << a.to_dsl() << " -> " << n1.to_dsl() << " -> " << n2.to_dsl();
    for (std::uint64_t n = 0; n < 2000; ++n) ASSERT_EQ(a.contains(n), n1.contains(n)) << a.to_dsl();
  }
}

TEST(Coalition, NormalFormsOfSimpleSets) {
  EXPECT_EQ(Coalition::periodic("000", "100").normalize().to_dsl(), "arith(3,3)");
  EXPECT_EQ(Coalition::arith(5, 1).normalize().to_dsl(), "~finite{0..4}");
  EXPECT_EQ((~~Coalition::finite({2})).normalize().to_dsl(), "finite{2}");
  EXPECT_EQ((Coalition::arith(0, 2) | Coalition::arith(1, 2)).normalize().to_dsl(), "~finite{}");
  EXPECT_EQ((~~Coalition::geom(1, 2)).normalize().to_dsl(), "geom(1,2)");
}

TEST(Coalition, DslPrintingRespectsPrecedence) {
  const auto a = Coalition::finite({1});
  const auto b = Coalition::arith(0, 2);
  const auto c = Coalition::geom(1, 3);
  EXPECT_EQ((a | (b & c)).to_dsl(), "finite{1}|arith(0,2)&geom(1,3)");
  EXPECT_EQ(((a | b) & c).to_dsl(), "(finite{1}|arith(0,2))&geom(1,3)");
  EXPECT_EQ((a | (b | c)).to_dsl(), "finite{1}|(arith(0,2)|geom(1,3))");
  EXPECT_EQ((~(a | b)).to_dsl(), "~(finite{1}|arith(0,2))");
  EXPECT_EQ(Coalition::finite({0, 1, 2, 3, 7, 9, 10}).to_dsl(), "finite{0..3,7,9,10}");
  EXPECT_EQ(Coalition::periodic("1", "01").to_dsl(), "periodic(\"1\",\"01\")");
}

TEST(Coalition, RejectsBadParameters) {
  EXPECT_THROW(Coalition::arith(0, 0), InvalidArgument);
  EXPECT_THROW(Coalition::geom(0, 2), InvalidArgument);
  EXPECT_THROW(Coalition::geom(1, 1), InvalidArgument);
  EXPECT_THROW(Coalition::periodic("", ""), InvalidArgument);
  EXPECT_THROW(Coalition::periodic("", "12"), InvalidArgument);
}
