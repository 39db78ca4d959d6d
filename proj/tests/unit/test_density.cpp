#include <gtest/gtest.h>

#include "gen.hpp"
#include "silverlab/density.hpp"
#include "silverlab/error.hpp"

using namespace silverlab;
using silverlab::testing::Rng;
using silverlab::testing::random_coalition;

namespace {

// Membership loop over [0, n].
Rational alpha_by_counting(const Coalition& a, std::uint64_t n) {
  std::int64_t c = 0;
  for (std::uint64_t i = 0; i <= n; ++i) c += a.contains(i);
  return Rational(c, static_cast<std::int64_t>(n));
}

}  // namespace

TEST(Density, AlphaExamples) {
  EXPECT_EQ(alpha(Coalition::all(), 100), Rational(101, 100));
  EXPECT_EQ(alpha(Coalition::geom(1, 10), 1000000), Rational(7, 1000000));
  EXPECT_EQ(alpha(Coalition::arith(0, 2), 100), Rational(51, 100));
  EXPECT_THROW(alpha(Coalition::all(), 0), InvalidArgument);
}

TEST(Density, AlphaMatchesCountingOracle) {
  Rng rng(1);
  for (int t = 0; t < 150; ++t) {
    const auto a = random_coalition(rng, 3);
    const std::uint64_t n = rng.between(1, 5000);
    EXPECT_EQ(alpha(a, n), alpha_by_counting(a, n)) << a.to_dsl() << " n=" << n;
  }
}

TEST(Density, BoundsAndExactValues) {
  const std::vector<std::uint64_t> hs{10, 100, 1000, 10000};
  const auto p = density_bounds(Coalition::arith(0, 3), hs);
  EXPECT_EQ(p.exact, Rational(1, 3));
  EXPECT_GE(p.upper, p.lower);
  EXPECT_EQ(density_bounds(Coalition::finite({1, 2, 3}), hs).exact, Rational(0));
  EXPECT_EQ(density_bounds(Coalition::geom(1, 10), hs).exact, Rational(0));
  EXPECT_EQ(density_bounds(~Coalition::finite({4}), hs).exact, Rational(1));
  EXPECT_EQ(density_bounds(Coalition::periodic("", "110"), hs).exact, Rational(2, 3));
  EXPECT_THROW(density_bounds(Coalition::all(), {5, 5}), InvalidArgument);
  EXPECT_THROW(density_bounds(Coalition::all(), {}), InvalidArgument);
}

TEST(Density, EstimatesAreOrderedAndBounded) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_coalition(rng, 3);
    const auto p = density_bounds(a, {17, 170, 1700, 4000});
    EXPECT_GE(p.upper, p.lower);
    EXPECT_GE(p.lower, Rational(0));
    // alpha may exceed 1 by at most 1/n on the closed interval.
    EXPECT_LE(p.upper, Rational(1) + Rational(1, 1700));
  }
}

TEST(Density, TripleExamples) {
  const auto all = find_triples(Coalition::all(), 10);
  EXPECT_EQ(all, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_TRUE(find_triples(~Coalition::arith(0, 3), 10000).empty());
  EXPECT_TRUE(find_triples(Coalition::periodic("", "110"), 10000).empty());
  const auto sparse = find_triples(~Coalition::geom(1, 10), 1000);
  ASSERT_FALSE(sparse.empty());
  EXPECT_EQ(sparse.front(), 2u);
  EXPECT_THROW(find_triples(Coalition::all(), 2), InvalidArgument);
}

TEST(Density, DenseEnoughPeriodicSetsHaveManyTriples) {
  Rng rng(4);
  int checked = 0;
  while (checked < 200) {
    const std::size_t p = rng.between(1, 12);
    const auto word = rng.bits(p);
    const auto ones = std::count(word.begin(), word.end(), '1');
    if (Rational(ones, p) <= Rational(2, 3) + Rational(1, 12)) continue;
    ++checked;
    const auto a = Coalition::periodic("", word);
    EXPECT_GE(find_triples(a, 10000).size(), 10000 / (3 * p)) << word;
  }
}
