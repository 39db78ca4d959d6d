#include <gtest/gtest.h>

#include "silverlab/error.hpp"
#include "silverlab/sequence.hpp"

using namespace silverlab;

TEST(Sequence, EvaluatesPrefixThenPeriod) {
  const auto x = EventuallyPeriodicSeq::bits("110", "01");
  EXPECT_EQ(x.take(8), (Word{1, 1, 0, 0, 1, 0, 1, 0}));
}

TEST(Sequence, RejectsEmptyPeriodAndBadValues) {
  EXPECT_THROW(EventuallyPeriodicSeq(Alphabet::bounded(2), {}, {}), InvalidArgument);
  EXPECT_THROW(EventuallyPeriodicSeq(Alphabet::bounded(2), {2}, {0}), InvalidArgument);
  EXPECT_NO_THROW(EventuallyPeriodicSeq(Alphabet::naturals(), {7}, {9}));
}

TEST(Sequence, CanonicalShrinksPeriodAndPrefix) {
  const auto x = EventuallyPeriodicSeq::bits("0101", "0101");
  const auto c = x.canonical();
  EXPECT_TRUE(c.prefix().empty());
  EXPECT_EQ(c.period(), (Word{0, 1}));
  EXPECT_EQ(x, EventuallyPeriodicSeq::bits("", "01"));
  EXPECT_FALSE(x == EventuallyPeriodicSeq::bits("", "10"));
}

TEST(Sequence, CanonicalPreservesValues) {
  std::uint64_t state = 12345;
  auto next = [&] { return (state = state * 6364136223846793005ULL + 1442695040888963407ULL) >> 33; };
  for (int trial = 0; trial < 300; ++trial) {
    Word pre(next() % 6), per(1 + next() % 6);
    for (auto& v : pre) v = next() % 3;
    for (auto& v : per) v = next() % 3;
    const EventuallyPeriodicSeq x(Alphabet::bounded(3), pre, per);
    const auto c = x.canonical();
    EXPECT_EQ(x.take(60), c.take(60));
    EXPECT_LE(c.prefix().size(), pre.size());
    EXPECT_EQ(c.canonical().prefix(), c.prefix());
  }
}

TEST(Sequence, WithValueOverridesOneCoordinate) {
  const auto x = EventuallyPeriodicSeq::bits("1", "011");
  for (std::uint64_t n = 0; n < 12; ++n) {
    const auto y = x.with_value(n, 1 - x.at(n));
    for (std::uint64_t i = 0; i < 30; ++i) EXPECT_EQ(y.at(i), i == n ? 1 - x.at(i) : x.at(i));
  }
}

TEST(Sequence, ZipAndJointWindow) {
  const auto a = EventuallyPeriodicSeq::bits("", "01");
  const auto b = EventuallyPeriodicSeq::bits("1", "001");
  const auto c = EventuallyPeriodicSeq::zip(a, b, Alphabet::bounded(2),
                                            [](std::uint64_t u, std::uint64_t v) { return u | v; });
  for (std::uint64_t i = 0; i < 40; ++i) EXPECT_EQ(c.at(i), a.at(i) | b.at(i));
  EXPECT_EQ(a.joint_window(b), 1u + 6u);
  EXPECT_THROW(a.joint_window(b, 4), InvalidArgument);
}

TEST(Alphabet, Bounds) {
  EXPECT_THROW(Alphabet::bounded(1), InvalidArgument);
  EXPECT_EQ(Alphabet::bounded(4).to_string(), "4");
  EXPECT_EQ(Alphabet::naturals().to_string(), "inf");
  EXPECT_THROW((void)Alphabet::naturals().size(), InvalidArgument);
  EXPECT_TRUE(Alphabet::naturals().admits(1u << 30));
}
