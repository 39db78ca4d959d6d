#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "silverlab/tree.hpp"

using namespace silverlab;
using silverlab::testing::Rng;

namespace {

const Alphabet kTwo = Alphabet::bounded(2);

PartialAssignment evens_fixed(std::uint64_t value) {
  return PartialAssignment(kTwo, Coalition::arith(1, 2), {}, EventuallyPeriodicSeq::constant(kTwo, value));
}

}  // namespace

TEST(Assignment, ValuesAndSilverness) {
  const auto f = evens_fixed(0);
  EXPECT_TRUE(f.is_silver());
  EXPECT_EQ(f.value(0), 0u);
  EXPECT_FALSE(f.value(1).has_value());
  EXPECT_FALSE(PartialAssignment::only(kTwo, {}).is_free(7) == false);
  const PartialAssignment finite_free(kTwo, Coalition::finite({1, 2}), {{0, 1}},
                                      EventuallyPeriodicSeq::constant(kTwo, 0));
  EXPECT_FALSE(finite_free.is_silver());
  EXPECT_EQ(finite_free.value(0), 1u);
}

TEST(Assignment, RejectsConflictingData) {
  EXPECT_THROW(PartialAssignment(kTwo, Coalition::all(), {{0, 1}}, EventuallyPeriodicSeq::constant(kTwo, 0)),
               InvalidArgument);
  EXPECT_THROW(PartialAssignment::only(kTwo, {{3, 2}}), InvalidArgument);
  EXPECT_THROW(PartialAssignment(kTwo, Coalition::all(), {},
                                 EventuallyPeriodicSeq::constant(Alphabet::bounded(3), 0)),
               InvalidArgument);
}

TEST(Assignment, ExtendAndComplete) {
  const auto f = evens_fixed(1);
  const auto g = f.extend({{1, 0}, {5, 0}});
  EXPECT_EQ(g.value(1), 0u);
  EXPECT_TRUE(g.is_free(3));
  EXPECT_THROW(f.extend({{0, 1}}), InvalidArgument);
  const auto x = f.complete(0);
  EXPECT_EQ(x.take(6), (Word{1, 0, 1, 0, 1, 0}));
  const auto y = f.complete(1, {{3, 0}});
  EXPECT_EQ(y.take(6), (Word{1, 1, 1, 0, 1, 1}));
  EXPECT_EQ(f.stem(), (Word{1}));
}

TEST(Assignment, DslText) {
  EXPECT_EQ(evens_fixed(0).to_dsl(), "assign(K=2, free=arith(1,2), tail=periodic(\"0\"))");
  const PartialAssignment v(Alphabet::naturals(), Coalition::arith(1, 1), {{0, 5}},
                            EventuallyPeriodicSeq(Alphabet::naturals(), {}, {12}));
  EXPECT_EQ(v.to_dsl(), "assign(K=inf, free=arith(1,1), fix{0:5}, tail=values([],[12]))");
}

TEST(Cylinder, MembershipExamples) {
  const auto zero = EventuallyPeriodicSeq::constant(kTwo, 0);
  EXPECT_TRUE(cylinder_member(zero, Cylinder(PartialAssignment::empty(kTwo)), 10).agrees);
  const auto r = cylinder_member(zero, Cylinder(PartialAssignment::only(kTwo, {{0, 1}})), 10);
  EXPECT_FALSE(r.agrees);
  EXPECT_EQ(r.at, 0u);
  EXPECT_TRUE(cylinder_member(EventuallyPeriodicSeq::bits("", "01"), Cylinder(evens_fixed(0)), 50).agrees);
  EXPECT_THROW(cylinder_member(zero, Cylinder(PartialAssignment::empty(Alphabet::bounded(3))), 4),
               InvalidArgument);
  EXPECT_THROW(cylinder_member(zero, Cylinder(evens_fixed(0)), 0), InvalidArgument);
}

TEST(Cylinder, MembershipIsMonotoneInDepth) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    std::map<std::uint64_t, std::uint64_t> fixed;
    for (int i = 0; i < 6; ++i) fixed[rng.below(30)] = rng.below(2);
    const Cylinder c(PartialAssignment::only(kTwo, fixed));
    const auto x = EventuallyPeriodicSeq::bits(rng.bits(rng.below(8)), rng.bits(1 + rng.below(4)));
    bool agreed_deeper = true;
    for (std::uint64_t d = 40; d >= 1; --d) {
      const bool a = cylinder_member(x, c, d).agrees;
      if (agreed_deeper) EXPECT_TRUE(a || !cylinder_member(x, c, d + 1).agrees);
      if (cylinder_member(x, c, d + 1).agrees) EXPECT_TRUE(a);
      agreed_deeper = a;
    }
  }
}

TEST(Tree, TreeOfExamples) {
  const auto full = tree_of(Cylinder(PartialAssignment::empty(kTwo)), 3);
  EXPECT_EQ(full.terminals().size(), 8u);
  const auto one = tree_of(Cylinder(PartialAssignment::only(kTwo, {{0, 1}})), 2);
  EXPECT_EQ(one.terminals(), (std::vector<Word>{{1, 0}, {1, 1}}));
  EXPECT_EQ(one.spl_succ({}), (Word{1}));
  const auto evens = tree_of(Cylinder(evens_fixed(0)), 4);
  EXPECT_EQ(evens.terminals().size(), 4u);
  EXPECT_EQ(evens.levels(), (std::set<std::uint64_t>{2, 4}));
  EXPECT_THROW(tree_of(Cylinder(PartialAssignment::empty(Alphabet::naturals())), 3), InvalidArgument);
}

TEST(Tree, SplittingReportExamples) {
  const auto cube = splitting_report(FiniteTree::cube(kTwo, 3));
  EXPECT_EQ(cube.levels, (std::set<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(cube.ratio, Rational(1));
  const auto branch = splitting_report(FiniteTree::closure(kTwo, {{0, 0, 0}}));
  EXPECT_TRUE(branch.levels.empty());
  EXPECT_EQ(branch.ratio, Rational(0));
  const auto evens = splitting_report(tree_of(Cylinder(evens_fixed(0)), 4));
  EXPECT_EQ(evens.ratio, Rational(2, 4));
  EXPECT_EQ(splitting_report(level_tree_of(Cylinder(evens_fixed(0)), 4)).ratio, Rational(1, 2));
}

TEST(Tree, TerminalCountIsPowerOfFreeCoordinates) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t k = rng.between(2, 4);
    const Alphabet a = Alphabet::bounded(k);
    std::map<std::uint64_t, std::uint64_t> fixed;
    for (int i = 0; i < 8; ++i) fixed[rng.below(9)] = rng.below(k);
    const Cylinder c(PartialAssignment::only(a, fixed));
    const std::uint64_t d = rng.between(1, 8);
    std::uint64_t free_below = 0;
    for (std::uint64_t n = 0; n < d; ++n) free_below += !fixed.count(n);
    const auto tree = tree_of(c, d);
    EXPECT_EQ(tree.terminals().size(), static_cast<std::size_t>(std::pow(k, free_below)));
    for (const auto& w : tree.terminals()) EXPECT_EQ(w.size(), d);
    EXPECT_TRUE(tree.is_uniform());
    EXPECT_EQ(tree, level_tree_of(c, d).materialize());
    EXPECT_EQ(tree.levels(), level_tree_of(c, d).levels());
  }
}

TEST(Tree, SplSuccFollowsTheUniqueChain) {
  const auto t = FiniteTree::closure(kTwo, {{0, 1, 0}, {0, 1, 1}, {1}});
  EXPECT_EQ(t.spl_succ({0}), (Word{0, 1}));
  EXPECT_EQ(t.spl_succ({}), (Word{}));
  EXPECT_FALSE(t.spl_succ({1}).has_value());
  EXPECT_EQ(t.to_text().substr(0, 9), "[]\n  [0]\n");
}
