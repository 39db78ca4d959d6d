#include <gtest/gtest.h>

#include <algorithm>

#include "gen.hpp"
#include "silverlab/delta_tree.hpp"
#include "silverlab/error.hpp"

using namespace silverlab;
using silverlab::testing::Rng;

namespace {

bool has_factor(const Word& s, const Word& w) {
  return std::search(s.begin(), s.end(), w.begin(), w.end()) != s.end();
}

std::vector<Word> all_words(std::uint64_t k, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (std::uint64_t a = 0; a < k; ++a) {
        Word c = w;
        c.push_back(a);
        next.push_back(c);
      }
    out = std::move(next);
  }
  return out;
}

Word random_word(Rng& rng, std::size_t len, std::uint64_t k = 2) {
  Word w(len);
  for (auto& v : w) v = rng.below(k);
  return w;
}

}  // namespace

TEST(DenseOracle, ContainsExamples) {
  const auto d = DenseOracle::ones(2);
  EXPECT_EQ(d.name(), "ones(2)");
  EXPECT_EQ(d.extend({0}), (Word{0, 1, 1}));
  EXPECT_EQ(d.extend({1}), (Word{1, 1}));
  EXPECT_TRUE(d.inside({0, 1, 1, 0}));
  EXPECT_EQ(d.extend({1, 1, 0}), (Word{1, 1, 0}));
  EXPECT_EQ(DenseOracle::identity().extend({1, 0}), (Word{1, 0}));
  EXPECT_EQ(DenseOracle::contains({1, 0, 1}).name(), "contains(\"101\")");
}

TEST(DenseOracle, RejectsNonDenseAutomaton) {
  EXPECT_THROW(DenseOracle(2, {{0, 0}}, {false}, "never"), InvalidArgument);
  EXPECT_THROW(DenseOracle::contains({2}), InvalidArgument);
}

TEST(DenseOracle, InsideMatchesHorizonOracle) {
  Rng rng(11);
  for (int iter = 0; iter < 60; ++iter) {
    const std::uint64_t k = rng.between(2, 3);
    const Word w = random_word(rng, rng.between(1, 4), k);
    const auto d = DenseOracle::contains(w, k);
    const std::size_t horizon = d.state_count() + 1;
    const auto tails = all_words(k, horizon);
    for (int j = 0; j < 20; ++j) {
      const Word s = random_word(rng, rng.below(7), k);
      bool forced = true;
      for (const auto& u : tails) {
        Word su = s;
        su.insert(su.end(), u.begin(), u.end());
        forced = forced && has_factor(su, w);
      }
      ASSERT_EQ(d.inside(s), forced) << to_string(w) << " " << to_string(s);
      ASSERT_EQ(d.inside(s), has_factor(s, w));
    }
  }
}

TEST(DenseOracle, ExtendIsLexLeastShortest) {
  Rng rng(12);
  for (int iter = 0; iter < 200; ++iter) {
    const auto d = DenseOracle::all_of({DenseOracle::contains(random_word(rng, rng.between(1, 3))),
                                        DenseOracle::contains(random_word(rng, rng.between(1, 3)))});
    const Word s = random_word(rng, rng.below(6));
    const Word e = d.extend(s);
    ASSERT_TRUE(is_prefix(s, e));
    ASSERT_TRUE(d.inside(e));
    std::optional<Word> best;
    for (std::size_t len = 0; !best; ++len)
      for (const auto& u : all_words(2, len)) {
        Word su = s;
        su.insert(su.end(), u.begin(), u.end());
        if (d.inside(su)) {
          best = su;
          break;
        }
      }
    ASSERT_EQ(e, *best) << d.name();
  }
}

TEST(DenseOracle, AllOfIsIntersection) {
  Rng rng(13);
  for (int iter = 0; iter < 100; ++iter) {
    const auto a = DenseOracle::contains(random_word(rng, rng.between(1, 3)));
    const auto b = DenseOracle::contains(random_word(rng, rng.between(1, 3)));
    const auto both = DenseOracle::all_of({a, b});
    for (int j = 0; j < 20; ++j) {
      const Word s = random_word(rng, rng.below(9));
      ASSERT_EQ(both.inside(s), a.inside(s) && b.inside(s));
    }
  }
}

TEST(DeltaTree, IdentityOracleGivesFullCube) {
  const auto t = build_delta_tree({DenseOracle::identity()}, Rational(1, 2), 1);
  EXPECT_EQ(t.tree.height(), 0u);
  ASSERT_EQ(t.rounds.size(), 2u);
  EXPECT_EQ(t.rounds[1].ratio, Rational(1));
  EXPECT_TRUE(t.ok());
}

TEST(DeltaTree, AppendOnesExample) {
  std::vector<DenseOracle> ds;
  for (std::uint64_t i = 0; i < 4; ++i) ds.push_back(DenseOracle::ones(i + 1));
  const auto t = build_delta_tree(ds, Rational(3, 4), 3);
  ASSERT_TRUE(t.ok()) << t.audit_csv();
  EXPECT_EQ(t.rounds[0].thread, (Word{1}));
  EXPECT_EQ(t.rounds[1].thread, (Word{1, 1}));
  EXPECT_EQ(t.rounds[1].cube, 0u);
  EXPECT_EQ(t.rounds[2].thread, (Word{1}));
  EXPECT_EQ(t.rounds[2].cube, 5u);
  EXPECT_EQ(t.rounds[2].ratio, Rational(6, 10));
  EXPECT_EQ(t.audit_csv().substr(0, 25), "round,lev,ht,ratio,bound\n");
  EXPECT_TRUE(terminals_inside(t.tree, ds[3]));
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Word digits(t.tree.split_count());
    for (auto& d : digits) d = rng.below(2);
    ASSERT_TRUE(ds[3].inside(t.tree.terminal(digits)));
  }
}

TEST(DeltaTree, ZeroDeltaHasVacuousBounds) {
  Rng rng(21);
  const auto t = build_delta_tree(silverlab::testing::random_dense_family(rng, 3), Rational(0), 3);
  for (const auto& a : t.rounds)
    if (a.bound) EXPECT_EQ(*a.bound, Rational(0));
  EXPECT_TRUE(t.ok());
}

TEST(DeltaTree, StateSweepMatchesExplicitSweep) {
  Rng rng(22);
  int compared = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const auto family = silverlab::testing::random_dense_family(rng, 3, 2);
    const auto fast = build_delta_tree(family, Rational(1, 2), 2);
    if (fast.tree.split_count() > 14) continue;
    DeltaTreeOptions slow_opts;
    slow_opts.explicit_sweep = true;
    const auto slow = build_delta_tree(family, Rational(1, 2), 2, slow_opts);
    ASSERT_EQ(fast.tree.pattern(), slow.tree.pattern());
    for (std::size_t r = 0; r < fast.rounds.size(); ++r) ASSERT_EQ(fast.rounds[r].thread, slow.rounds[r].thread);
    const auto ft = fast.tree.materialize(1u << 16);
    const auto rep = splitting_report(ft);
    EXPECT_EQ(rep.ratio, fast.rounds.back().ratio);
    for (const auto& term : ft.terminals()) ASSERT_TRUE(family[2].inside(term));
    ++compared;
  }
  EXPECT_GT(compared, 20);
}

TEST(DeltaTree, RoundInvariantsOnRandomFamilies) {
  Rng rng(23);
  for (int iter = 0; iter < 30; ++iter) {
    const auto family = silverlab::testing::random_dense_family(rng, 5);
    for (auto delta : {Rational(1, 2), Rational(3, 4), Rational(1)}) {
      const auto t = build_delta_tree(family, delta, 5);
      ASSERT_TRUE(t.ok()) << t.audit_csv();
      for (std::size_t n = 1; n < t.rounds.size(); ++n)
        ASSERT_GE(t.rounds[n].ratio, Rational(static_cast<std::int64_t>(n) - 1, static_cast<std::int64_t>(n)));
    }
  }
}

TEST(DeltaTree, MisbehavingOracleIsReported) {
  auto bad = DenseOracle::ones(2);
  bad.set_rule([](const Word& s) { return s.empty() ? Word{1, 1} : Word{0}; });
  try {
    build_delta_tree({DenseOracle::ones(1), bad}, Rational(1, 2), 1);
    FAIL() << "expected OracleViolation";
  } catch (const OracleViolation& e) {
    EXPECT_NE(std::string(e.what()).find("does not extend [1,0]"), std::string::npos) << e.what();
  }
  auto lazy = DenseOracle::ones(2);
  lazy.set_rule([](const Word& s) { return s; });
  EXPECT_THROW(build_delta_tree({lazy}, Rational(1, 2), 1), OracleViolation);
}

TEST(DeltaTree, RoundsPastLastOracleReuseIt) {
  const auto t = build_delta_tree({DenseOracle::ones(2)}, Rational(1, 2), 3);
  EXPECT_EQ(t.rounds.size(), 4u);
  EXPECT_EQ(t.rounds[3].oracle, "ones(2)");
  EXPECT_TRUE(t.ok());
}

TEST(DeltaTree, RejectsBadArguments) {
  EXPECT_THROW(build_delta_tree({}, Rational(1, 2), 1), InvalidArgument);
  EXPECT_THROW(build_delta_tree({DenseOracle::identity()}, Rational(3, 2), 1), InvalidArgument);
  EXPECT_THROW(build_delta_tree({DenseOracle::identity()}, Rational(1, 2), 0), InvalidArgument);
}
