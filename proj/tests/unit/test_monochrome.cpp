#include <gtest/gtest.h>

#include "gen.hpp"
#include "oracles.hpp"
#include "silverlab/error.hpp"
#include "silverlab/monochrome.hpp"

using namespace silverlab;
using silverlab::testing::Rng;

namespace {

Cylinder all_free(std::uint64_t k) { return Cylinder(PartialAssignment::empty(Alphabet::bounded(k))); }

std::size_t ceil_log2(std::uint64_t k) {
  std::size_t n = 0;
  while ((std::uint64_t{1} << n) < k) ++n;
  return n;
}

}  // namespace

TEST(Monochrome, ConstantIsAlreadyMonochromatic) {
  const auto c = all_free(4);
  const auto r = monochromatize(ChoiceFunction::constant(3, 4), c);
  EXPECT_EQ(r.value, 3u);
  EXPECT_EQ(r.sub, c.assignment());
  for (const auto& s : r.stages) EXPECT_TRUE(s.fixed.empty());
}

TEST(Monochrome, DictatorFourValues) {
  const auto r = monochromatize(ChoiceFunction::dictator(0, 4), all_free(4));
  ASSERT_TRUE(r.sub.value(0).has_value());
  EXPECT_EQ(*r.sub.value(0), r.value);
  EXPECT_EQ(r.stages.size(), 2u);
  EXPECT_FALSE(r.sub.value(1).has_value());
}

TEST(Monochrome, ExplicitPartitions) {
  const auto r = monochromatize(ChoiceFunction::dictator(2, 4), all_free(4), {{3}, {1, 2}});
  EXPECT_EQ(r.stages.front().part, (std::set<std::uint64_t>{3}));
  EXPECT_EQ(r.stages[1].block, (std::set<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(*r.sub.value(2), r.value);
  EXPECT_THROW(monochromatize(ChoiceFunction::dictator(2, 4), all_free(4), {{0, 1, 2, 3}}), InvalidArgument);
  EXPECT_THROW(monochromatize(ChoiceFunction::dictator(2, 4), all_free(4), {{5}}), InvalidArgument);
}

TEST(Monochrome, BinaryCaseAgreesWithIrrelevance) {
  Rng rng(41);
  for (int iter = 0; iter < 150; ++iter) {
    const auto F = silverlab::testing::random_choice(rng, 8, 2);
    const auto b = silverlab::testing::random_coalition(rng, 2, false) | Coalition::arith(30, 1);
    const Alphabet a = Alphabet::bounded(2);
    const PartialAssignment f(a, b, {}, EventuallyPeriodicSeq::constant(a, rng.below(2)));
    const auto r = monochromatize(F, Cylinder(f));
    const auto check = is_irrelevant(F, r.sub.free(), r.sub);
    ASSERT_TRUE(check.irrelevant());
    ASSERT_EQ(check.value, r.value);
    ASSERT_LE(r.stages.size(), 1u);
  }
}

TEST(Monochrome, RandomKaryAgainstOracle) {
  Rng rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    const auto F = silverlab::testing::random_choice(rng, 6, 6);
    const Alphabet a = Alphabet::bounded(F.k());
    const auto b = silverlab::testing::random_coalition(rng, 2, false) | Coalition::arith(25, 1);
    const PartialAssignment f(a, b, {}, EventuallyPeriodicSeq::constant(a, rng.below(F.k())));
    const auto r = monochromatize(F, Cylinder(f));
    ASSERT_EQ(silverlab::testing::naive_constant_value(F, r.sub), r.value);
    ASSERT_LE(r.stages.size(), ceil_log2(F.k()));
    ASSERT_TRUE(r.sub.is_silver());
    for (const auto& s : r.stages)
      for (const auto& [n, v] : s.fixed) {
        ASSERT_TRUE(f.is_free(n));
        ASSERT_TRUE(std::binary_search(F.support().begin(), F.support().end(), n));
      }
  }
}

TEST(Monochrome, CapIsEnforced) {
  std::vector<std::uint64_t> support;
  for (std::uint64_t i = 0; i < 14; ++i) support.push_back(i);
  SearchOptions tiny;
  tiny.max_evaluations = 100;
  EXPECT_THROW(monochromatize(ChoiceFunction::parity(support), all_free(2), {}, tiny), CapExceeded);
}
