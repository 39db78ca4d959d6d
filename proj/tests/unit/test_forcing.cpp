#include <gtest/gtest.h>

#include "gen.hpp"
#include "silverlab/error.hpp"
#include "silverlab/forcing.hpp"

using namespace silverlab;
using silverlab::testing::Rng;

namespace {

const Alphabet kTwo = Alphabet::bounded(2);

PartialAssignment evens_fixed_to(std::uint64_t v) {
  return PartialAssignment(kTwo, Coalition::arith(1, 2), {}, EventuallyPeriodicSeq::constant(kTwo, v));
}

}  // namespace

TEST(UniformTree, Basics) {
  const auto c = UniformTree::cube(2);
  EXPECT_EQ(c.height(), 2u);
  EXPECT_EQ(c.terminals().size(), 4u);
  EXPECT_EQ(c.splitting_depths(), (std::vector<std::uint64_t>{0, 1}));
  EXPECT_TRUE(c.contains({1, 0}));
  EXPECT_FALSE(c.contains({1, 0, 0}));
  EXPECT_THROW(UniformTree(FiniteTree::closure(kTwo, {{0}, {1, 1}})), InvalidArgument);
  const UniformTree explicit_cube(FiniteTree::cube(kTwo, 2));
  EXPECT_EQ(explicit_cube, c);
}

TEST(UniformTree, Refines) {
  const auto p = UniformTree::cube(1);
  const auto q = p.extended({std::uint64_t{1}, std::nullopt});
  EXPECT_TRUE(q.refines(p));
  EXPECT_FALSE(p.refines(q));
  const UniformTree narrow(FiniteTree::closure(kTwo, {{0, 1}}));
  EXPECT_FALSE(narrow.refines(p));
  const UniformTree explicit_q(q.materialize());
  EXPECT_TRUE(explicit_q.refines(p));
}

TEST(MeetDense, IdentityLeavesConditionUnchanged) {
  const auto p = UniformTree::cube(3);
  EXPECT_EQ(meet_dense(p, DenseOracle::identity()), p);
}

TEST(MeetDense, AppendOnesExample) {
  const auto q = meet_dense(UniformTree::cube(1), DenseOracle::ones(2));
  const auto terms = q.terminals();
  ASSERT_EQ(terms.size(), 2u);
  for (const auto& t : terms) {
    EXPECT_EQ(t.size(), 3u);
    EXPECT_EQ(t[1], 1u);
    EXPECT_EQ(t[2], 1u);
  }
}

TEST(MeetDense, ComposedFamilyMeetsEveryOracle) {
  Rng rng(31);
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<DenseOracle> ds;
    for (int i = 0; i < 10; ++i) {
      Word w(rng.between(1, 4));
      for (auto& v : w) v = rng.below(2);
      ds.push_back(DenseOracle::contains(w));
    }
    UniformTree p = UniformTree::cube(rng.below(4));
    for (const auto& d : ds) {
      const auto next = meet_dense(p, d);
      ASSERT_TRUE(next.refines(p, 1u << 12));
      p = next;
    }
    for (const auto& t : p.terminals())
      for (const auto& d : ds) ASSERT_TRUE(d.inside(t)) << d.name() << " " << to_string(t);
  }
}

TEST(MeetDense, ExplicitBaseMatchesExplicitSweep) {
  Rng rng(32);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Word> words;
    const std::size_t len = rng.between(1, 4);
    for (int i = 0; i < 4; ++i) {
      Word w(len);
      for (auto& v : w) v = rng.below(2);
      words.push_back(w);
    }
    const UniformTree p(FiniteTree::closure(kTwo, words), LevelPattern(rng.below(3)));
    Word w(rng.between(1, 3));
    for (auto& v : w) v = rng.below(2);
    const auto d = DenseOracle::contains(w);
    DeltaTreeOptions slow;
    slow.explicit_sweep = true;
    ASSERT_EQ(meet_dense(p, d), meet_dense(p, d, slow));
  }
}

TEST(SpineMap, EvensFixed) {
  const SpineMap s(evens_fixed_to(0));
  EXPECT_EQ(s.free_coordinate(0), 1u);
  EXPECT_EQ(s.free_coordinate(3), 7u);
  EXPECT_EQ(s.node_of({1, 0}), (Word{0, 1, 0, 0, 0}));
  EXPECT_EQ(s.phi_bar({0, 1, 0, 0, 0}), (Word{1, 0}));
  EXPECT_EQ(s.phi_bar({0}), Word{});
  EXPECT_EQ(s.phi_bar({0, 1, 0}), Word{1});
  EXPECT_THROW(s.phi_bar({0, 1, 0, 0}), InvalidArgument);
  EXPECT_THROW(s.phi_bar({1}), InvalidArgument);
  EXPECT_EQ(s.phi(EventuallyPeriodicSeq::bits("", "01"), 3), (Word{1, 1, 1}));
}

TEST(SpineMap, SuccessorLawOnRandomConditions) {
  Rng rng(33);
  for (int iter = 0; iter < 40; ++iter) {
    const auto free = Coalition::periodic(rng.bits(rng.below(4)), "1" + rng.bits(rng.below(4)));
    const PartialAssignment f(kTwo, free, {}, EventuallyPeriodicSeq::bits(rng.bits(3), rng.bits(2)));
    const SpineMap s(f);
    const auto t = tree_of(Cylinder(f), 9);
    for (const auto& node : t.splitting_nodes()) {
      const Word u = s.phi_bar(node);
      ASSERT_EQ(s.node_of(u), node);
      for (std::uint64_t j = 0; j < 2; ++j) {
        Word child = node;
        child.push_back(j);
        const auto succ = t.spl_succ(child);
        if (!succ) continue;
        Word uj = u;
        uj.push_back(j);
        ASSERT_EQ(s.phi_bar(*succ), uj);
      }
    }
  }
}

TEST(Densify, HalfDensityExample) {
  const SpineMap s(evens_fixed_to(0));
  const auto r = densify(UniformTree::root(), Rational(1, 2), 2, s);
  EXPECT_EQ(r.bound, Rational(3, 8));
  EXPECT_GE(r.ratio, Rational(3, 8));
  EXPECT_EQ(r.added, 2u);
  EXPECT_EQ(splitting_report(s.preimage(r.tree)).ratio, r.ratio);
  EXPECT_TRUE(r.tree.refines(UniformTree::root()));
}

TEST(Densify, ZeroExponentIsVacuous) {
  const SpineMap s(evens_fixed_to(1));
  const auto p = UniformTree::cube(1);
  const auto r = densify(p, Rational(1, 2), 0, s);
  EXPECT_EQ(r.tree, p);
  EXPECT_EQ(r.added, 0u);
}

TEST(Densify, MonotoneTowardsDelta) {
  Rng rng(34);
  for (int iter = 0; iter < 40; ++iter) {
    const auto free = Coalition::periodic(rng.bits(rng.below(4)), "1" + rng.bits(rng.below(5)));
    const SpineMap s(PartialAssignment(kTwo, free, {}, EventuallyPeriodicSeq::constant(kTwo, 0)));
    const Rational delta = free.density() * Rational(static_cast<std::int64_t>(rng.between(1, 4)), 4);
    UniformTree p = meet_dense(UniformTree::root(), DenseOracle::contains({1, 1, 0}));
    Rational last(0);
    for (std::uint64_t k = 1; k <= 6; ++k) {
      const auto r = densify(p, delta, k, s);
      ASSERT_GE(r.ratio, r.bound);
      ASSERT_GE(r.ratio, last);
      ASSERT_EQ(s.preimage_report(r.tree).ratio, r.ratio);
      ASSERT_TRUE(r.tree.refines(p));
      last = r.ratio;
      p = r.tree;
    }
    if (p.splitting_depths().size() <= 12)
      ASSERT_EQ(splitting_report(s.preimage(p)).ratio, last);
  }
}

TEST(Densify, RejectsThinSpine) {
  const SpineMap s(PartialAssignment(kTwo, Coalition::arith(0, 4), {}, EventuallyPeriodicSeq::constant(kTwo, 0)));
  EXPECT_THROW(densify(UniformTree::root(), Rational(1, 2), 1, s), InvalidArgument);
}
