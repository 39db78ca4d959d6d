#include <gtest/gtest.h>

#include "gen.hpp"
#include "silverlab/error.hpp"
#include "silverlab/swr.hpp"

using namespace silverlab;
using silverlab::testing::Rng;

namespace {

UtilityStream abcd(const std::string& pre, const std::string& per) { return UtilityStream::parse("abcd", pre, per); }

/// E1-E4 read coordinate by coordinate: find the block holding t, then apply
/// the case table.
std::uint64_t brute_oe(const EventuallyPeriodicSeq& x, bool want_o, Variant v, std::uint64_t t) {
  const std::uint64_t w = v == Variant::SeFa ? 2 : 1;
  std::vector<std::uint64_t> n;
  for (std::uint64_t m = 0; n.empty() || w * n.back() <= t; ++m)
    if (x.at(m) == 1) n.push_back(m);
  int region = -1;  // -1 initial, 0 E, 1 O
  for (std::size_t k = 0; k + 1 < n.size(); ++k)
    if (w * n[k] <= t && t < w * n[k + 1]) region = static_cast<int>(k % 2);
  if (v == Variant::PFa) {
    if (region == -1) return 0;
    return want_o ? (region == 0 ? 1 : 0) : (region == 1 ? 1 : 0);
  }
  const bool even = t % 2 == 0;
  const bool middle = region != -1 && (want_o ? region == 0 : region == 1);
  if (middle) return even ? 1 : 2;
  return even ? 0 : 3;
}

EventuallyPeriodicSeq random_binary_with_ones(Rng& rng) {
  std::string per = rng.bits(rng.between(1, 6));
  per[rng.below(per.size())] = '1';
  return EventuallyPeriodicSeq::bits(rng.bits(rng.below(8)), per);
}

}  // namespace

TEST(Swr, PermutationParseAndPrint) {
  const auto pi = FinitePermutation::parse("(0 4)(1 5 7)");
  EXPECT_EQ(pi(0), 4u);
  EXPECT_EQ(pi(7), 1u);
  EXPECT_EQ(pi(9), 9u);
  EXPECT_EQ(pi.to_string(), "(0 4)(1 5 7)");
  EXPECT_EQ(FinitePermutation::parse("()").to_string(), "()");
  EXPECT_EQ(FinitePermutation::swaps({{3, 1}}).to_string(), "(1 3)");
  EXPECT_THROW(FinitePermutation::parse("(0 1)(1 2)"), InvalidArgument);
  EXPECT_THROW(FinitePermutation::parse("(0 1"), InvalidArgument);
  EXPECT_THROW(FinitePermutation(std::map<std::uint64_t, std::uint64_t>{{0, 1}, {1, 2}}), InvalidArgument);
}

TEST(Swr, CheckStepExamples) {
  const auto x = UtilityStream::parse("01", "", "01");
  const auto fa = DerivationStep::fa(FinitePermutation::swaps({{0, 1}}), x);
  EXPECT_EQ(fa.target, UtilityStream::parse("01", "10", "01"));
  EXPECT_TRUE(check_step(fa).valid);

  const auto se = DerivationStep::se(0, 1, abcd("ad", "b"), abcd("bc", "b"));
  EXPECT_TRUE(check_step(se).valid);

  const auto p = DerivationStep::p(UtilityStream::parse("01", "", "0"), UtilityStream::parse("01", "1", "0"));
  EXPECT_TRUE(check_step(p).valid);
}

TEST(Swr, CheckStepRejections) {
  auto reason = [](const DerivationStep& s) { return check_step(s).reason; };
  // a < c but c > b: wrong pattern.
  EXPECT_NE(reason(DerivationStep::se(0, 1, abcd("ad", "b"), abcd("cb", "b"))).find("pattern"), std::string::npos);
  // a third coordinate moves.
  const auto extra = check_step(DerivationStep::se(0, 1, abcd("ada", "b"), abcd("bcb", "b")));
  EXPECT_FALSE(extra.valid);
  EXPECT_EQ(extra.coordinate, 2u);
  EXPECT_FALSE(check_step(DerivationStep::se(0, 1, abcd("", "ad"), abcd("", "bc"))).valid);
  auto fa = DerivationStep::fa(FinitePermutation::swaps({{0, 1}}), abcd("ab", "c"));
  fa.target = abcd("ab", "c");
  EXPECT_EQ(check_step(fa).coordinate, 0u);
  fa = DerivationStep::fa(FinitePermutation::swaps({{0, 1}}), abcd("ab", "c"));
  fa.relation = Relation::Strict;
  EXPECT_FALSE(check_step(fa).valid);
  const auto down = check_step(DerivationStep::p(UtilityStream::parse("01", "01", "0"), UtilityStream::parse("01", "10", "0")));
  EXPECT_FALSE(down.valid);
  EXPECT_EQ(down.coordinate, 1u);
  EXPECT_NE(reason(DerivationStep::p(abcd("", "a"), abcd("", "a"))).find("no strict"), std::string::npos);
  // Coprime periods 4093 and 4091 have a joint period past the scan cap.
  const auto long_a = EventuallyPeriodicSeq(Alphabet::bounded(2), {}, Word(4093, 0));
  auto per_b = Word(4091, 0);
  per_b[0] = 1;
  const auto long_b = EventuallyPeriodicSeq(Alphabet::bounded(2), {}, per_b);
  EXPECT_NE(reason(DerivationStep::p(UtilityStream("01", long_a), UtilityStream("01", long_b))).find("alignment failure"),
            std::string::npos);
}

// SE only sees the order pattern of the four values.
TEST(Swr, SeValidityIsInvariantUnderOrderEmbeddings) {
  Rng rng(61);
  for (int iter = 0; iter < 300; ++iter) {
    Word pre(6), per(2);
    for (auto& v : pre) v = rng.below(4);
    for (auto& v : per) v = rng.below(4);
    Word pre2 = pre;
    const std::uint64_t i = rng.below(6), j = rng.below(6);
    pre2[i] = rng.below(4);
    pre2[j] = rng.below(4);
    std::set<std::uint64_t> image;
    while (image.size() < 4) image.insert(rng.below(10));
    const std::vector<std::uint64_t> emb(image.begin(), image.end());
    auto lift = [&](Word w) {
      for (auto& v : w) v = emb[v];
      return w;
    };
    const Alphabet four = Alphabet::bounded(4), ten = Alphabet::bounded(10);
    const auto a = DerivationStep::se(i, j, UtilityStream("abcd", EventuallyPeriodicSeq(four, pre, per)),
                                      UtilityStream("abcd", EventuallyPeriodicSeq(four, pre2, per)));
    const auto b = DerivationStep::se(i, j, UtilityStream("0123456789", EventuallyPeriodicSeq(ten, lift(pre), lift(per))),
                                      UtilityStream("0123456789", EventuallyPeriodicSeq(ten, lift(pre2), lift(per))));
    ASSERT_EQ(check_step(a).valid, check_step(b).valid);
  }
}

TEST(Swr, CheckDerivationExamples) {
  const auto x = abcd("ad", "b");
  Derivation one{{DerivationStep::fa(FinitePermutation::swaps({{0, 2}}), x)}};
  auto r = check_derivation(one);
  ASSERT_TRUE(r.valid);
  EXPECT_EQ(r.conclusion, Relation::Equiv);

  // b d a b.. -> (swap 1,2) b a d b.. -> SE at (1,2) -> b b c b..
  const auto s0 = abcd("bda", "b");
  const auto fa = DerivationStep::fa(FinitePermutation::swaps({{1, 2}}), s0);
  Derivation two{{fa, DerivationStep::se(1, 2, fa.target, abcd("bbc", "b"))}};
  r = check_derivation(two);
  ASSERT_TRUE(r.valid) << r.reason;
  EXPECT_EQ(r.conclusion, Relation::Strict);

  Derivation broken{{fa, DerivationStep::se(1, 2, abcd("bad", "a"), abcd("bbc", "a"))}};
  r = check_derivation(broken);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.step, 1u);
  EXPECT_NE(r.reason.find("mismatch"), std::string::npos);
  EXPECT_FALSE(check_derivation(Derivation{}).valid);
}

TEST(Swr, DecomposeExamples) {
  const auto ones = EventuallyPeriodicSeq::bits("", "1");
  auto d = decompose(ones, true, 8);
  EXPECT_EQ(d.n[3], 3u);
  EXPECT_EQ(d.block(2), (std::pair<std::uint64_t, std::uint64_t>{4, 6}));
  EXPECT_EQ(d.even_blocks.members_below(12), (std::vector<std::uint64_t>{0, 1, 4, 5, 8, 9}));
  EXPECT_TRUE(d.initial.members_below(100).empty());

  d = decompose(EventuallyPeriodicSeq::bits("", "01"), true, 8);
  EXPECT_EQ(d.n[2], 5u);
  EXPECT_EQ(d.block(1), (std::pair<std::uint64_t, std::uint64_t>{6, 10}));
  EXPECT_EQ(d.initial.members_below(100), (std::vector<std::uint64_t>{0, 1}));

  d = decompose(ones, false, 8);
  EXPECT_EQ(d.even_blocks.members_below(8), (std::vector<std::uint64_t>{0, 2, 4, 6}));
  EXPECT_EQ(d.odd_blocks.members_below(8), (std::vector<std::uint64_t>{1, 3, 5, 7}));
  EXPECT_THROW(decompose(EventuallyPeriodicSeq::bits("111", "0"), true), InvalidArgument);
}

TEST(Swr, BlocksPartitionTheNaturals) {
  Rng rng(62);
  for (int iter = 0; iter < 100; ++iter) {
    const auto x = random_binary_with_ones(rng);
    for (bool paired : {false, true}) {
      const auto d = decompose(x, paired, 4);
      for (std::uint64_t n = 0; n < 1000; ++n)
        ASSERT_EQ(int(d.initial.contains(n)) + int(d.even_blocks.contains(n)) + int(d.odd_blocks.contains(n)), 1)
            << n;
    }
  }
}

TEST(Swr, OeMapExamples) {
  const auto ones = EventuallyPeriodicSeq::bits("", "1");
  const auto se = oe_maps(ones, Variant::SeFa);
  EXPECT_EQ(se.o, abcd("", "bcad"));
  EXPECT_EQ(se.e, abcd("", "adbc"));
  const auto p = oe_maps(ones, Variant::PFa);
  EXPECT_EQ(p.o, UtilityStream::parse("01", "", "10"));
  EXPECT_EQ(p.e, UtilityStream::parse("01", "", "01"));
}

TEST(Swr, OeMapsMatchCaseTables) {
  Rng rng(63);
  for (int iter = 0; iter < 150; ++iter) {
    const auto x = random_binary_with_ones(rng);
    for (auto v : {Variant::SeFa, Variant::PFa}) {
      const auto m = oe_maps(x, v);
      for (std::uint64_t t = 0; t < 200; ++t) {
        ASSERT_EQ(m.o.at(t), brute_oe(x, true, v, t)) << to_string(v) << " t=" << t;
        ASSERT_EQ(m.e.at(t), brute_oe(x, false, v, t)) << to_string(v) << " t=" << t;
      }
    }
  }
}

TEST(Swr, CaseWitnessesCheckOnRandomConditions) {
  Rng rng(64);
  for (int iter = 0; iter < 30; ++iter) {
    const auto f = silverlab::testing::random_dense_binary(rng, 3, 4);
    for (auto v : {Variant::SeFa, Variant::PFa})
      for (auto c : {Case::EPrecO, Case::OPrecE, Case::Equiv}) {
        const auto b = case_witness(f, Rational(3, 4), c, v);
        const auto r = check_bundle(b);
        ASSERT_TRUE(r.valid) << to_string(c) << "/" << to_string(v) << ": " << r.failure << "\n" << f.to_dsl();
        ASSERT_EQ(b.derivations.size(), 2u);
        for (const auto& cd : b.derivations) {
          const auto& steps = cd.d.steps;
          if (c == Case::Equiv) {
            ASSERT_EQ(steps.size(), 1u);
            ASSERT_EQ(steps[0].kind, v == Variant::SeFa ? StepKind::SE : StepKind::P);
          } else {
            ASSERT_GE(steps.size(), 2u);
            ASSERT_EQ(steps[0].kind, StepKind::FA);
            for (std::size_t i = 1; i < steps.size(); ++i)
              ASSERT_EQ(steps[i].kind, v == Variant::SeFa ? StepKind::SE : StepKind::P);
            if (v == Variant::PFa) ASSERT_EQ(steps.size(), 2u);
          }
        }
      }
  }
}

TEST(Swr, EquivCaseMovesOnePair) {
  const Alphabet two = Alphabet::bounded(2);
  const PartialAssignment f(two, Coalition::periodic("", "1110"), {}, EventuallyPeriodicSeq::bits("", "0"));
  const auto b = case_witness(f, Rational(3, 4), Case::Equiv, Variant::SeFa);
  ASSERT_EQ(b.dropped.size(), 2u);
  EXPECT_EQ(b.dropped[1], b.dropped[0] + 1);
  EXPECT_EQ(b.pair_indices[0] % 2, 1u);
  const auto step = b.derivations[0].d.steps.at(0);
  EXPECT_EQ(step.i, 2 * b.dropped[0]);
  EXPECT_EQ(step.j, 2 * b.dropped[0] + 1);
  EXPECT_TRUE(check_bundle(b).valid);
  EXPECT_TRUE(cylinder_member(b.moved, Cylinder(f), 100).agrees);
}

// With the first triple at index 0, dropping n_0 turns [2 n_0, 2 n_1) into
// part of the initial block and o(x) -> e(z) no longer holds.
TEST(Swr, DroppingTheFirstOneBreaksTheSecondChain) {
  const Alphabet two = Alphabet::bounded(2);
  const PartialAssignment f(two, Coalition::periodic("", "1110"), {}, EventuallyPeriodicSeq::bits("", "0"));
  const auto good = case_witness(f, Rational(3, 4), Case::EPrecO, Variant::SeFa);
  EXPECT_EQ(good.l, 2u);
  EXPECT_TRUE(check_bundle(good).valid);
  for (auto v : {Variant::SeFa, Variant::PFa}) {
    CaseOptions opts;
    opts.l = 0;
    const auto r = check_bundle(case_witness(f, Rational(3, 4), Case::EPrecO, v, opts));
    EXPECT_FALSE(r.valid);
    EXPECT_NE(r.failure.find("o(x) -> e(z)"), std::string::npos) << r.failure;
  }
  CaseOptions odd;
  odd.l = 1;
  EXPECT_THROW(case_witness(f, Rational(3, 4), Case::EPrecO, Variant::SeFa, odd), InvalidArgument);
}

TEST(Swr, CaseWitnessPreconditions) {
  const Alphabet two = Alphabet::bounded(2);
  const PartialAssignment f(two, Coalition::periodic("", "1110"), {}, EventuallyPeriodicSeq::bits("", "0"));
  EXPECT_THROW(case_witness(f, Rational(2, 3), Case::Equiv, Variant::SeFa), InvalidArgument);
  EXPECT_THROW(case_witness(f, Rational(4, 5), Case::Equiv, Variant::SeFa), InvalidArgument);
  CaseOptions tiny;
  tiny.horizon = 6;
  EXPECT_THROW(case_witness(f, Rational(3, 4), Case::EPrecO, Variant::SeFa, tiny), CapExceeded);
}

TEST(Swr, CertificatesRoundTrip) {
  Rng rng(65);
  for (int iter = 0; iter < 10; ++iter) {
    const auto f = silverlab::testing::random_dense_binary(rng, 3, 4);
    const auto v = iter % 2 ? Variant::SeFa : Variant::PFa;
    const auto c = static_cast<Case>(iter % 3);
    const auto text = write_certificate(certificate_of(case_witness(f, Rational(3, 4), c, v)));
    const auto back = read_certificate(text);
    ASSERT_EQ(write_certificate(back), text);
    for (const auto& e : back.entries) {
      const auto r = check_derivation(e.d);
      ASSERT_TRUE(r.valid) << e.name << ": " << r.reason;
      ASSERT_EQ(r.conclusion, e.claim);
    }
  }
}

TEST(Swr, CertificateErrorsNameTheLine) {
  const std::string good =
      "cert v1\nlevels abcd\nderivation t claim=<\nstream s0 prefix=\"ad\" period=\"b\"\n"
      "stream s1 prefix=\"bc\" period=\"b\"\nSE i=0 j=1 s0 s1 <\nend\n";
  EXPECT_EQ(write_certificate(read_certificate(good)), good);
  auto message = [](const std::string& text) {
    try {
      read_certificate(text);
    } catch (const InvalidArgument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("cert v2\n").find("line 1"), std::string::npos);
  std::string bad = good;
  bad.replace(bad.find("s0 s1"), 5, "s0 s9");
  EXPECT_NE(message(bad).find("line 6"), std::string::npos);
  EXPECT_NE(message(good.substr(0, good.size() - 4)).find("missing \"end\""), std::string::npos);
  bad = good;
  bad.replace(bad.find("\"ad\""), 4, "\"ax\"");
  EXPECT_NE(message(bad).find("line 4"), std::string::npos);
}
